//! The inequality catalog: one checker per numbered bound, each reporting
//! left side, right side, margin and hypothesis status.
//!
//! Every catalog entry falls into one of three shapes:
//!
//! * a bound `|A(z)| (+ |B(z)|) ≤ ρ(|z|)·M`, where `M` is the maximum of
//!   `|P|` on the unit circle and `ρ` a closed-form radial profile;
//! * a domination `factor·|small(z)| ≤ |big(z)|` between two polynomials;
//! * the zero-preservation statement, checked through the root radius of
//!   `S̃ₐ[P]`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle_max::{
    initial_samples, max_modulus_on_circle, minimize_margin_on_circle, CertifiedBracket, MarginForm, RadialProfile,
    DEFAULT_TOL,
};
use crate::error::{Error, Result};
use crate::operators::{
    composite_t, is_exceptional_value, limit_expression, omega_membership, power, smirnov, smirnov_modified,
    OperatorDegree, ParameterSet, PARAM_TOL,
};
use crate::poly::{linear_combine, ComplexPolynomial, ONE};
use crate::roots::{classify_zero_location, find_roots};

/// Tolerance on the root radius in the zero-preservation check.
pub const ROOT_RADIUS_TOL: f64 = 1e-7;
/// Relative part of the violation threshold.
pub const REL_VIOLATION_TOL: f64 = 1e-9;
/// Absolute part of the violation threshold, per unit of `Σ|c_j|`.
pub const ABS_VIOLATION_TOL: f64 = 1e-10;
/// Rounding floor of the violation threshold, relative to the gross scale.
pub const ROUNDING_TOL: f64 = 1e-12;
/// Samples used to verify `|P| ≤ |F|` on the unit circle.
pub const DOMINATION_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InequalityId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    S8,
    S9,
    S10,
    S11,
    S12,
    S13,
    C14,
    C15,
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    #[serde(rename = "DOM-A")]
    DomA,
    #[serde(rename = "DOM-B")]
    DomB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisClass {
    AnyPolynomial,
    NoZerosInOpenDisk,
    AllZerosInClosedDisk,
    ZerosInRadiusK,
    DominatedPair,
}

impl InequalityId {
    pub const ALL: [InequalityId; 28] = [
        Self::C1,
        Self::C2,
        Self::C3,
        Self::C4,
        Self::C5,
        Self::C6,
        Self::S8,
        Self::S9,
        Self::S10,
        Self::S11,
        Self::S12,
        Self::S13,
        Self::C14,
        Self::C15,
        Self::M1,
        Self::M2,
        Self::M3,
        Self::M4,
        Self::M5,
        Self::M6,
        Self::L1,
        Self::L2,
        Self::L3,
        Self::L4,
        Self::L5,
        Self::L6,
        Self::DomA,
        Self::DomB,
    ];

    pub fn as_str(self) -> &'static str {
        use InequalityId::*;
        match self {
            C1 => "C1",
            C2 => "C2",
            C3 => "C3",
            C4 => "C4",
            C5 => "C5",
            C6 => "C6",
            S8 => "S8",
            S9 => "S9",
            S10 => "S10",
            S11 => "S11",
            S12 => "S12",
            S13 => "S13",
            C14 => "C14",
            C15 => "C15",
            M1 => "M1",
            M2 => "M2",
            M3 => "M3",
            M4 => "M4",
            M5 => "M5",
            M6 => "M6",
            L1 => "L1",
            L2 => "L2",
            L3 => "L3",
            L4 => "L4",
            L5 => "L5",
            L6 => "L6",
            DomA => "DOM-A",
            DomB => "DOM-B",
        }
    }

    pub fn hypothesis(self) -> HypothesisClass {
        use InequalityId::*;
        match self {
            C1 | C2 | C5 | C14 | S8 | S9 | S12 | M1 | M2 | M3 | M4 | L4 => HypothesisClass::AnyPolynomial,
            C3 | C4 | C6 | C15 | S10 | S11 | S13 | M5 | M6 | L3 | L6 => HypothesisClass::NoZerosInOpenDisk,
            L2 => HypothesisClass::AllZerosInClosedDisk,
            L1 => HypothesisClass::ZerosInRadiusK,
            L5 | DomA | DomB => HypothesisClass::DominatedPair,
        }
    }

    /// Whether the checker compares `P` against a dominating polynomial `F`.
    pub fn needs_dominant(self) -> bool {
        self.hypothesis() == HypothesisClass::DominatedPair
    }

    /// Whether the left side uses the limit expression (non-constant `P` only).
    pub fn needs_nonconstant(self) -> bool {
        matches!(self, Self::M2 | Self::M4 | Self::M6)
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::usage(format!("unknown inequality id '{s}'")))
    }
}

/// How the maximum modulus bracket enters a right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaxMode {
    /// Upper end: a reported violation is then sound against sampling error.
    #[default]
    Upper,
    /// Midpoint, for sharpness ratios.
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    /// Bracket tolerance, relative to `max(1, Σ|c_j|)` of the bracketed
    /// polynomial.
    pub tol: f64,
    /// Samples per circle for non-bracket margins; `None` picks
    /// `max(4096, 64·deg)`.
    pub samples: Option<usize>,
    pub max_mode: MaxMode,
    /// Multiplies every right-hand side; 1 except in harness sensitivity
    /// tests.
    pub rhs_factor: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            samples: None,
            max_mode: MaxMode::Upper,
            rhs_factor: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub ineq: InequalityId,
    pub params: ParameterSet,
    pub radius: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub relative_margin: f64,
    pub witness_z: Complex64,
    pub hypothesis_ok: bool,
    pub notes: String,
    /// Magnitude of the quantities compared, including cancelled parts.
    #[serde(skip)]
    pub scale: f64,
    /// A margin below `-threshold` is a violation.
    #[serde(skip)]
    pub threshold: f64,
}

impl CheckReport {
    pub fn is_violation(&self) -> bool {
        self.margin < -self.threshold
    }

    /// Margin divided by the instance scale.
    pub fn normalized_margin(&self) -> f64 {
        if self.scale > 0.0 {
            self.margin / self.scale
        } else {
            self.margin
        }
    }

    pub fn ratio(&self) -> f64 {
        if self.rhs > 0.0 {
            self.lhs / self.rhs
        } else if self.lhs > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }
}

/// The polynomial(s) an inequality is evaluated on.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Single(&'a ComplexPolynomial),
    /// `p` dominated by `dominant` on the unit circle.
    Pair {
        p: &'a ComplexPolynomial,
        dominant: &'a ComplexPolynomial,
    },
}

impl<'a> From<&'a ComplexPolynomial> for Subject<'a> {
    fn from(p: &'a ComplexPolynomial) -> Self {
        Subject::Single(p)
    }
}

impl<'a> Subject<'a> {
    pub fn p(&self) -> &'a ComplexPolynomial {
        match self {
            Subject::Single(p) | Subject::Pair { p, .. } => p,
        }
    }

    pub fn dominant(&self) -> Option<&'a ComplexPolynomial> {
        match self {
            Subject::Single(_) => None,
            Subject::Pair { dominant, .. } => Some(dominant),
        }
    }
}

/// A polynomial with a coefficient-wise bound on the moduli that produced
/// it, used to size rounding errors of cancelling combinations.
#[derive(Debug, Clone)]
struct Tracked {
    poly: ComplexPolynomial,
    envelope: Vec<f64>,
}

impl Tracked {
    fn new(poly: ComplexPolynomial) -> Self {
        let envelope = poly.coeffs().iter().map(|c| c.norm()).collect();
        Self { poly, envelope }
    }

    fn env(&self, j: usize) -> f64 {
        self.envelope.get(j).copied().unwrap_or(0.0)
    }

    fn gross_at(&self, r: f64) -> f64 {
        self.envelope.iter().rev().fold(0.0, |acc, e| acc * r + e)
    }

    fn dilate(&self, radius: f64) -> Self {
        let mut scale = 1.0;
        let envelope = self
            .envelope
            .iter()
            .map(|e| {
                let out = e * scale;
                scale *= radius;
                out
            })
            .collect();
        Self { poly: self.poly.dilate(radius), envelope }
    }

    fn derivative(&self) -> Self {
        let envelope = (1..self.envelope.len()).map(|j| j as f64 * self.envelope[j]).collect::<Vec<_>>();
        Self {
            poly: self.poly.derivative(),
            envelope: if envelope.is_empty() { vec![0.0] } else { envelope },
        }
    }

    fn shift_up(&self) -> Self {
        let mut envelope = vec![0.0];
        envelope.extend_from_slice(&self.envelope);
        Self { poly: self.poly.shift_up(), envelope }
    }

    fn reciprocal(&self, n: usize) -> Result<Self> {
        Ok(Self {
            poly: self.poly.conjugate_reciprocal(n)?,
            envelope: (0..=n).rev().map(|j| self.env(j)).collect(),
        })
    }

    fn modified(&self, a: Complex64, n: usize) -> Result<Self> {
        let poly = smirnov_modified(&self.poly, a, OperatorDegree(n))?;
        let am = a.norm();
        let envelope = (0..n.max(1))
            .map(|j| (j + 1) as f64 * self.env(j + 1) + am * (n as f64 - j as f64) * self.env(j))
            .collect();
        Ok(Self { poly, envelope })
    }

    fn smirnov(&self, alpha: Complex64, n: usize) -> Result<Self> {
        let poly = smirnov(&self.poly, alpha, OperatorDegree(n))?;
        let envelope = self
            .envelope
            .iter()
            .enumerate()
            .map(|(j, e)| (j as f64 + n as f64 * alpha.norm()) * e)
            .collect();
        Ok(Self { poly, envelope })
    }

    fn combine(terms: &[(Complex64, &Tracked)]) -> Self {
        let polys: Vec<(Complex64, &ComplexPolynomial)> = terms.iter().map(|(c, t)| (*c, &t.poly)).collect();
        let len = terms.iter().map(|(_, t)| t.envelope.len()).max().unwrap_or(1);
        let mut envelope = vec![0.0; len];
        for (c, t) in terms {
            for (acc, e) in envelope.iter_mut().zip(&t.envelope) {
                *acc += c.norm() * e;
            }
        }
        Self { poly: linear_combine(&polys), envelope }
    }

    /// The composite transform `S̃ₐ[P(R·)] − αS̃ₐ[P] + β{…}S̃ₐ[P]`.
    fn composite(&self, params: &ParameterSet, n: usize) -> Result<Self> {
        let poly = composite_t(&self.poly, params, OperatorDegree(n))?;
        let dilated = self.dilate(params.dilation).modified(params.a, n)?;
        let plain = self.modified(params.a, n)?;
        let weight = params.beta * params.growth_term(n) - params.alpha;
        let envelope = Self::combine(&[(ONE, &dilated), (weight, &plain)]).envelope;
        Ok(Self { poly, envelope })
    }

    /// `z S̃_{a,n−1}[P'] + (n/2)β S̃ₐ[P] + P'`.
    fn limit(&self, beta: Complex64, a: Complex64, n: usize) -> Result<Self> {
        let poly = limit_expression(&self.poly, beta, a, OperatorDegree(n))?;
        let dp = self.derivative();
        let inner = dp.modified(a, n - 1)?.shift_up();
        let outer = self.modified(a, n)?;
        let envelope = Self::combine(&[(ONE, &inner), (beta * (n as f64 / 2.0), &outer), (ONE, &dp)]).envelope;
        Ok(Self { poly, envelope })
    }
}

/// `coef·r^power + constant`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerProfile {
    pub coef: f64,
    pub power: i32,
    pub constant: f64,
}

impl RadialProfile for PowerProfile {
    fn at(&self, r: f64) -> f64 {
        let radial = if self.coef == 0.0 { 0.0 } else { self.coef * r.powi(self.power) };
        radial + self.constant
    }
}

enum Shape {
    Bound { lhs: Vec<Tracked>, profile: PowerProfile },
    Dominance { small: Tracked, big: Tracked, factor: f64 },
    RootRadius { image: ComplexPolynomial },
}

struct Hypothesis {
    ok: bool,
    note: String,
}

/// Everything about one instance that does not depend on the radius.
struct Prepared {
    ineq: InequalityId,
    params: ParameterSet,
    shape: Shape,
    hypothesis: Hypothesis,
    max_note: String,
    tol_abs: f64,
    cfg: CheckConfig,
}

fn pick_max(bracket: &CertifiedBracket, mode: MaxMode) -> f64 {
    match mode {
        MaxMode::Upper => bracket.hi,
        MaxMode::Midpoint => bracket.midpoint(),
    }
}

/// Bracket at `tol·max(1, Σ|c_j| r^j)`; an unreachable tolerance degrades to
/// the best bracket found.
fn bracket(p: &ComplexPolynomial, r: f64, tol: f64) -> Result<(CertifiedBracket, bool)> {
    let scaled = tol * p.abs_sum_at(r).max(1.0);
    match max_modulus_on_circle(p, r, scaled) {
        Ok(b) => Ok((b, true)),
        Err(Error::ToleranceUnreachable { best, .. }) => Ok((best, false)),
        Err(e) => Err(e),
    }
}

fn certify_hypothesis(
    ineq: InequalityId,
    p: &ComplexPolynomial,
    dominant: Option<&ComplexPolynomial>,
    params: &ParameterSet,
) -> Hypothesis {
    let located = |poly: &ComplexPolynomial, k: f64| {
        if poly.degree() == 0 {
            return Ok(None);
        }
        classify_zero_location(poly, k).map(Some)
    };
    let counts = |rep: &crate::roots::ZeroLocationReport| {
        format!("inside={} on={} outside={}", rep.count_inside, rep.count_on, rep.count_outside)
    };
    match ineq.hypothesis() {
        HypothesisClass::AnyPolynomial => Hypothesis { ok: true, note: "hypothesis: any polynomial".into() },
        HypothesisClass::NoZerosInOpenDisk => match located(p, 1.0) {
            Ok(None) => Hypothesis { ok: !p.is_zero(), note: "hypothesis: constant polynomial".into() },
            Ok(Some(rep)) => Hypothesis {
                ok: rep.none_inside(),
                note: format!("hypothesis: no zeros in open disk ({})", counts(&rep)),
            },
            Err(e) => Hypothesis { ok: false, note: format!("hypothesis uncertified: {e}") },
        },
        HypothesisClass::ZerosInRadiusK => match located(p, params.k) {
            Ok(None) => Hypothesis { ok: true, note: "hypothesis: constant polynomial".into() },
            Ok(Some(rep)) => Hypothesis {
                ok: rep.none_outside(),
                note: format!("hypothesis: zeros in |z| <= {} ({})", params.k, counts(&rep)),
            },
            Err(e) => Hypothesis { ok: false, note: format!("hypothesis uncertified: {e}") },
        },
        HypothesisClass::AllZerosInClosedDisk => {
            let mut notes = Vec::new();
            let mut ok = true;
            match located(p, 1.0) {
                Ok(None) => notes.push("constant polynomial".to_string()),
                Ok(Some(rep)) => {
                    ok &= rep.none_outside();
                    notes.push(format!("zeros in closed disk ({})", counts(&rep)));
                }
                Err(e) => {
                    ok = false;
                    notes.push(format!("uncertified: {e}"));
                }
            }
            if (params.a.norm() - 1.0).abs() > PARAM_TOL {
                ok = false;
                notes.push(format!("|a| = {} is not on the unit circle", params.a.norm()));
            }
            if is_exceptional_value(p, params.a) {
                ok = false;
                notes.push("a is exceptional (degree collapse of the operator image)".into());
            }
            Hypothesis { ok, note: format!("hypothesis: {}", notes.join("; ")) }
        }
        HypothesisClass::DominatedPair => {
            let Some(f) = dominant else {
                return Hypothesis { ok: false, note: "hypothesis: no dominating polynomial".into() };
            };
            let mut notes = Vec::new();
            let mut ok = true;
            if p.degree() > f.degree() {
                ok = false;
                notes.push(format!("deg P = {} exceeds deg F = {}", p.degree(), f.degree()));
            }
            match located(f, 1.0) {
                Ok(None) => notes.push("F constant".into()),
                Ok(Some(rep)) => {
                    ok &= rep.none_outside();
                    notes.push(format!("F zeros in closed disk ({})", counts(&rep)));
                }
                Err(e) => {
                    ok = false;
                    notes.push(format!("F uncertified: {e}"));
                }
            }
            let dom = domination_gap(p, f);
            ok &= dom.sampled >= -REL_VIOLATION_TOL * dom.peak.max(f64::MIN_POSITIVE);
            notes.push(format!(
                "min(|F|-|P|) sampled {:.3e}, certified >= {:.3e}",
                dom.sampled, dom.certified
            ));
            Hypothesis { ok, note: format!("hypothesis: {}", notes.join("; ")) }
        }
    }
}

struct DominationGap {
    sampled: f64,
    certified: f64,
    peak: f64,
}

fn domination_gap(p: &ComplexPolynomial, f: &ComplexPolynomial) -> DominationGap {
    let form = MarginForm { constant: 0.0, terms: vec![(1.0, f.clone()), (-1.0, p.clone())] };
    let m = minimize_margin_on_circle(&form, 1.0, DOMINATION_SAMPLES);
    DominationGap { sampled: m.value, certified: m.certified_lower, peak: m.positive_peak }
}

fn prepare(ineq: InequalityId, subject: Subject<'_>, params: &ParameterSet, cfg: &CheckConfig) -> Result<Prepared> {
    use InequalityId::*;
    let p = subject.p();
    let dominant = subject.dominant();
    if ineq.needs_dominant() && dominant.is_none() {
        return Err(Error::usage(format!("{ineq} compares P against a dominating polynomial F")));
    }
    if ineq.needs_nonconstant() && p.degree() == 0 {
        return Err(Error::domain(format!("{ineq} needs a non-constant polynomial")));
    }
    let n = match dominant {
        Some(f) if ineq.needs_dominant() => f.degree(),
        _ => p.degree(),
    };
    let nf = n as f64;
    let pw = n as i32 - 1;
    let hypothesis = certify_hypothesis(ineq, p, dominant, params);
    let tp = Tracked::new(p.clone());
    let (b_p, _) = p.coeff_norm_bounds();
    let tol_abs = ABS_VIOLATION_TOL * b_p;

    let (bracket_m, certified) = bracket(p, 1.0, cfg.tol)?;
    let m = pick_max(&bracket_m, cfg.max_mode) * cfg.rhs_factor;
    let max_note = format!(
        "M in [{:.15e}, {:.15e}]{}",
        bracket_m.lo,
        bracket_m.hi,
        if certified { "" } else { " (tolerance not reached)" }
    );

    let (r_big, alpha, beta, a) = (params.dilation, params.alpha, params.beta, params.a);
    let rn = power(r_big, n);
    let x = params.extremal_factor(n).norm();
    let y = params.constant_factor(n).norm();
    let half_beta = (ONE + beta / 2.0).norm();
    let profile = |coef: f64, power: i32, constant: f64| PowerProfile { coef, power, constant };
    let reciprocal = || tp.reciprocal(n);
    let bound = |lhs: Vec<Tracked>, profile: PowerProfile| Shape::Bound { lhs, profile };

    let shape = match ineq {
        C1 => bound(vec![tp.derivative()], profile(nf * m, pw, 0.0)),
        C2 => bound(vec![tp.dilate(r_big)], profile(rn * m, n as i32, 0.0)),
        C3 => bound(vec![tp.derivative()], profile(nf * m / 2.0, pw, 0.0)),
        C4 => bound(vec![tp.dilate(r_big)], profile(rn * m / 2.0, n as i32, m / 2.0)),
        C5 | C6 => {
            let lhs = Tracked::combine(&[(ONE, &tp.dilate(r_big)), (-alpha, &tp)]);
            let f = (Complex64::new(rn, 0.0) - alpha).norm();
            if ineq == C5 {
                bound(vec![lhs], profile(f * m, n as i32, 0.0))
            } else {
                bound(vec![lhs], profile(f * m / 2.0, n as i32, (ONE - alpha).norm() * m / 2.0))
            }
        }
        S8 | S10 => {
            let lhs = tp.modified(a, n)?;
            if ineq == S8 {
                bound(vec![lhs], profile(nf * m, pw, 0.0))
            } else {
                bound(vec![lhs], profile(nf * m / 2.0, pw, nf * a.norm() * m / 2.0))
            }
        }
        S9 | S11 => {
            // (1 + az)P' − naP assembled term by term
            let dp = tp.derivative();
            let lhs = Tracked::combine(&[(ONE, &dp), (a, &dp.shift_up()), (-a * nf, &tp)]);
            if ineq == S9 {
                bound(vec![lhs], profile(nf * m, pw, 0.0))
            } else {
                bound(vec![lhs], profile(nf * m / 2.0, pw, nf * a.norm() * m / 2.0))
            }
        }
        S12 | S13 => {
            let dilated = tp.dilate(r_big).modified(a, n)?;
            let lhs = Tracked::combine(&[(ONE, &dilated), (-alpha, &tp.modified(a, n)?)]);
            let f = (Complex64::new(rn, 0.0) - alpha).norm();
            if ineq == S12 {
                bound(vec![lhs], profile(f * nf * m, pw, 0.0))
            } else {
                let c = nf * (ONE - alpha).norm() * a.norm() * m / 2.0;
                bound(vec![lhs], profile(f * nf * m / 2.0, pw, c))
            }
        }
        C14 | C15 => {
            let weight = beta * params.growth_term(n) - alpha;
            let lhs = Tracked::combine(&[(ONE, &tp.dilate(r_big)), (weight, &tp)]);
            if ineq == C14 {
                bound(vec![lhs], profile(x * m, n as i32, 0.0))
            } else {
                bound(vec![lhs], profile(x * m / 2.0, n as i32, y * m / 2.0))
            }
        }
        M1 => bound(vec![tp.composite(params, n)?], profile(x * nf * m, pw, 0.0)),
        M2 => bound(vec![tp.limit(beta, a, n)?], profile(nf * half_beta * nf * m, pw, 0.0)),
        M3 => {
            let q = reciprocal()?;
            bound(
                vec![tp.composite(params, n)?, q.composite(params, n)?],
                profile(x * nf * m, pw, y * nf * a.norm() * m),
            )
        }
        M4 => {
            let q = reciprocal()?;
            bound(
                vec![tp.limit(beta, a, n)?, q.limit(beta, a, n)?],
                profile(nf * half_beta * nf * m, pw, nf * (nf / 2.0) * beta.norm() * a.norm() * m),
            )
        }
        M5 => bound(
            vec![tp.composite(params, n)?],
            profile(x * nf * m / 2.0, pw, y * nf * a.norm() * m / 2.0),
        ),
        M6 => bound(
            vec![tp.limit(beta, a, n)?],
            profile(
                (nf / 2.0) * half_beta * nf * m,
                pw,
                (nf / 2.0) * (nf / 2.0) * beta.norm() * a.norm() * m,
            ),
        ),
        L4 => {
            let q = reciprocal()?;
            bound(
                vec![tp.modified(a, n)?, q.modified(a, n)?],
                profile(nf * m, pw, nf * a.norm() * m),
            )
        }
        L1 => Shape::Dominance {
            small: tp.clone(),
            big: tp.dilate(r_big),
            factor: power((r_big + params.k) / (1.0 + params.k), n),
        },
        L3 => Shape::Dominance {
            small: tp.modified(a, n)?,
            big: reciprocal()?.modified(a, n)?,
            factor: 1.0,
        },
        L6 => Shape::Dominance {
            small: tp.composite(params, n)?,
            big: reciprocal()?.composite(params, n)?,
            factor: 1.0,
        },
        L5 | DomA | DomB => {
            let tf = Tracked::new(dominant.expect("checked above").clone());
            let (small, big) = match ineq {
                L5 => (tp.composite(params, n)?, tf.composite(params, n)?),
                DomA => (tp.derivative(), tf.derivative()),
                _ => (tp.smirnov(alpha, n)?, tf.smirnov(alpha, n)?),
            };
            Shape::Dominance { small, big, factor: 1.0 }
        }
        L2 => Shape::RootRadius { image: smirnov_modified(p, a, OperatorDegree(n))? },
    };

    Ok(Prepared {
        ineq,
        params: params.clone(),
        shape,
        hypothesis,
        max_note,
        tol_abs,
        cfg: *cfg,
    })
}

impl Prepared {
    fn hypothesis_at(&self, radius: f64) -> (bool, String) {
        let mut ok = self.hypothesis.ok;
        let mut note = self.hypothesis.note.clone();
        if self.ineq == InequalityId::DomB && !omega_membership(self.params.alpha, radius) {
            ok = false;
            note.push_str(&format!("; alpha outside the closed Omega region for |z| = {radius}"));
        }
        (ok, note)
    }

    fn threshold(&self, rhs: f64, scale: f64) -> f64 {
        if matches!(self.shape, Shape::RootRadius { .. }) {
            return ROOT_RADIUS_TOL;
        }
        self.tol_abs.max(REL_VIOLATION_TOL * rhs).max(ROUNDING_TOL * scale)
    }

    #[allow(clippy::too_many_arguments)]
    fn report(&self, radius: f64, lhs: f64, rhs: f64, witness: Complex64, scale: f64, extra: String) -> CheckReport {
        let (hypothesis_ok, hyp_note) = self.hypothesis_at(radius);
        let margin = rhs - lhs;
        let mut notes = hyp_note;
        if !matches!(self.shape, Shape::Dominance { .. } | Shape::RootRadius { .. }) {
            notes.push_str("; ");
            notes.push_str(&self.max_note);
        }
        if !extra.is_empty() {
            notes.push_str("; ");
            notes.push_str(&extra);
        }
        CheckReport {
            ineq: self.ineq,
            params: self.params.clone(),
            radius,
            lhs,
            rhs,
            margin,
            relative_margin: margin / rhs.max(1e-300),
            witness_z: witness,
            hypothesis_ok,
            notes,
            scale,
            threshold: self.threshold(rhs, scale),
        }
    }

    fn root_radius(&self, image: &ComplexPolynomial) -> Result<(f64, Complex64, String)> {
        if image.degree() == 0 {
            return Ok((0.0, ONE, "operator image is constant".into()));
        }
        let roots = find_roots(image)?;
        let top = roots
            .iter()
            .copied()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .expect("non-constant image has roots");
        Ok((top.norm(), top, format!("root radius of the operator image {:.15e}", top.norm())))
    }

    fn at_point(&self, z: Complex64) -> Result<CheckReport> {
        let radius = z.norm();
        match &self.shape {
            Shape::Bound { lhs, profile } => {
                let value: f64 = lhs.iter().map(|t| t.poly.value_at(z).norm()).sum();
                let gross: f64 = lhs.iter().map(|t| t.gross_at(radius)).sum();
                let rhs = profile.at(radius);
                Ok(self.report(radius, value, rhs, z, rhs.max(gross), String::new()))
            }
            Shape::Dominance { small, big, factor } => {
                let lhs = factor * small.poly.value_at(z).norm();
                let rhs = self.cfg.rhs_factor * big.poly.value_at(z).norm();
                let gross = big.gross_at(radius) + factor * small.gross_at(radius);
                Ok(self.report(radius, lhs, rhs, z, gross.max(rhs), String::new()))
            }
            Shape::RootRadius { image } => {
                let (top, _, note) = self.root_radius(image)?;
                Ok(self.report(radius, top, self.cfg.rhs_factor, z, 1.0, note))
            }
        }
    }

    fn on_circle(&self, radius: f64) -> Result<CheckReport> {
        match &self.shape {
            Shape::Bound { lhs, profile } => {
                let rhs = profile.at(radius);
                let gross: f64 = lhs.iter().map(|t| t.gross_at(radius)).sum();
                if let [single] = lhs.as_slice() {
                    let (b, certified) = bracket(&single.poly, radius, self.cfg.tol)?;
                    let witness = Complex64::from_polar(radius, b.argmax_theta);
                    let note = format!(
                        "lhs bracket [{:.15e}, {:.15e}]{}",
                        b.lo,
                        b.hi,
                        if certified { "" } else { " (tolerance not reached)" }
                    );
                    return Ok(self.report(radius, b.lo, rhs, witness, rhs.max(gross), note));
                }
                let form = MarginForm {
                    constant: rhs,
                    terms: lhs.iter().map(|t| (-1.0, t.poly.clone())).collect(),
                };
                let samples = self.cfg.samples.unwrap_or_else(|| initial_samples(form.max_degree()));
                let m = minimize_margin_on_circle(&form, radius, samples);
                let unit = Complex64::from_polar(1.0, m.theta);
                let value: f64 = lhs.iter().map(|t| t.poly.dilate(radius).value_at(unit).norm()).sum();
                let note = format!("certified margin >= {:.6e}", m.certified_lower);
                let witness = Complex64::from_polar(radius, m.theta);
                Ok(self.report(radius, value, rhs, witness, rhs.max(gross), note))
            }
            Shape::Dominance { small, big, factor } => {
                let form = MarginForm {
                    constant: 0.0,
                    terms: vec![(self.cfg.rhs_factor, big.poly.clone()), (-factor, small.poly.clone())],
                };
                let samples = self.cfg.samples.unwrap_or_else(|| initial_samples(form.max_degree()));
                let m = minimize_margin_on_circle(&form, radius, samples);
                let unit = Complex64::from_polar(1.0, m.theta);
                let rhs = self.cfg.rhs_factor * big.poly.dilate(radius).value_at(unit).norm();
                let lhs = factor * small.poly.dilate(radius).value_at(unit).norm();
                let gross = big.gross_at(radius) + factor * small.gross_at(radius);
                let note = format!("certified margin >= {:.6e}", m.certified_lower);
                let witness = Complex64::from_polar(radius, m.theta);
                Ok(self.report(radius, lhs, rhs, witness, gross.max(m.positive_peak), note))
            }
            Shape::RootRadius { image } => {
                let (top, root, note) = self.root_radius(image)?;
                let witness = if root.norm() > 0.0 {
                    Complex64::from_polar(radius, root.arg())
                } else {
                    Complex64::new(radius, 0.0)
                };
                Ok(self.report(radius, top, self.cfg.rhs_factor, witness, 1.0, note))
            }
        }
    }
}

/// Evaluates one inequality at a single point `z` with `|z| ≥ 1`.
pub fn check_pointwise<'a>(
    ineq: InequalityId,
    subject: impl Into<Subject<'a>>,
    params: &ParameterSet,
    z: Complex64,
    cfg: &CheckConfig,
) -> Result<CheckReport> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() < 1.0 - PARAM_TOL {
        return Err(Error::domain(format!("check point must satisfy |z| >= 1, got {z}")));
    }
    prepare(ineq, subject.into(), params, cfg)?.at_point(z)
}

/// Worst case of one inequality over the circle `|z| = r`.
pub fn certify_on_circle<'a>(
    ineq: InequalityId,
    subject: impl Into<Subject<'a>>,
    params: &ParameterSet,
    r: f64,
    cfg: &CheckConfig,
) -> Result<CheckReport> {
    check_radius(r)?;
    prepare(ineq, subject.into(), params, cfg)?.on_circle(r)
}

fn check_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r >= 1.0 - PARAM_TOL) {
        return Err(Error::domain(format!("certification radius must be at least 1, got {r}")));
    }
    Ok(())
}

/// One certified report per radius of `params.radius_grid`, in grid order.
pub fn certify_on_grid<'a>(
    ineq: InequalityId,
    subject: impl Into<Subject<'a>>,
    params: &ParameterSet,
    cfg: &CheckConfig,
) -> Result<Vec<CheckReport>> {
    if params.radius_grid.is_empty() {
        return Err(Error::usage("radius grid is empty"));
    }
    let prepared = prepare(ineq, subject.into(), params, cfg)?;
    params
        .radius_grid
        .iter()
        .map(|&r| {
            check_radius(r)?;
            prepared.on_circle(r)
        })
        .collect()
}

/// Whether every report of a grid certification passes.
pub fn grid_passes(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| !r.is_violation())
}

/// `|T[P]| ≤ |T[F]|` over `|z| = r` for the composite transform `T` at
/// degree `deg F`.
pub fn check_domination_pair(
    p: &ComplexPolynomial,
    f: &ComplexPolynomial,
    params: &ParameterSet,
    r: f64,
    cfg: &CheckConfig,
) -> Result<CheckReport> {
    certify_on_circle(InequalityId::L5, Subject::Pair { p, dominant: f }, params, r, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ZERO;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zn_plus_one(n: usize) -> ComplexPolynomial {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[0] = ONE;
        coeffs[n] = ONE;
        ComplexPolynomial::new(coeffs).unwrap()
    }

    fn worked_params() -> ParameterSet {
        ParameterSet::new(2.0, c(0.3, 0.0), c(0.7, 0.0), c(0.4, 0.0), 1.0, vec![1.0]).unwrap()
    }

    #[test]
    fn ids_round_trip_through_text() {
        for id in InequalityId::ALL {
            assert_eq!(id.as_str().parse::<InequalityId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert!(matches!("M9".parse::<InequalityId>(), Err(Error::Usage(_))));
    }

    #[test]
    fn worked_equality_instance() {
        let z2 = ComplexPolynomial::monomial(ONE, 2);
        let rep = check_pointwise(InequalityId::M1, &z2, &worked_params(), ONE, &CheckConfig::default()).unwrap();
        assert!((rep.lhs - 10.13).abs() < 1e-12, "{rep:?}");
        assert!((rep.rhs - 10.13).abs() < 1e-12, "{rep:?}");
        assert!(rep.margin.abs() < 1e-12);
        assert!(rep.hypothesis_ok);
        assert!(!rep.is_violation());
    }

    #[test]
    fn bernstein_at_argmax() {
        let n = 5;
        let p = zn_plus_one(n);
        // |p'| = n everywhere on the unit circle
        let z = Complex64::from_polar(1.0, 0.3);
        let rep = check_pointwise(InequalityId::C1, &p, &ParameterSet::default(), z, &CheckConfig::default()).unwrap();
        assert!((rep.lhs - n as f64).abs() < 1e-12);
        assert!((rep.rhs - 2.0 * n as f64).abs() < 1e-9);
        assert!((rep.margin - n as f64).abs() < 1e-9);
    }

    #[test]
    fn erdos_lax_corner_is_equality() {
        for n in 2..=8 {
            let p = zn_plus_one(n);
            let rep = check_pointwise(InequalityId::M5, &p, &ParameterSet::default(), ONE, &CheckConfig::default())
                .unwrap();
            assert!((rep.lhs - n as f64).abs() < 1e-12);
            assert!(rep.relative_margin.abs() < 1e-9, "{rep:?}");
            assert!(rep.hypothesis_ok);
        }
    }

    #[test]
    fn smirnov_pair_with_itself() {
        let f = ComplexPolynomial::from_roots(c(1.5, 0.2), &[c(0.3, 0.1), c(-0.5, 0.5), c(0.0, -0.9)]);
        for alpha in [ZERO, c(0.4, 0.0), c(-0.3, 0.6)] {
            let params = ParameterSet { alpha, ..ParameterSet::default() };
            let subject = Subject::Pair { p: &f, dominant: &f };
            let rep = check_pointwise(InequalityId::DomB, subject, &params, c(1.2, 0.5), &CheckConfig::default())
                .unwrap();
            assert_eq!(rep.margin, 0.0);
            assert!(rep.hypothesis_ok, "{}", rep.notes);
        }
    }

    #[test]
    fn pair_ids_need_a_dominant() {
        let p = zn_plus_one(3);
        let err = check_pointwise(InequalityId::L5, &p, &ParameterSet::default(), ONE, &CheckConfig::default());
        assert!(matches!(err, Err(Error::Usage(_))));
    }

    #[test]
    fn inside_unit_disk_is_rejected() {
        let p = zn_plus_one(3);
        let cfg = CheckConfig::default();
        assert!(check_pointwise(InequalityId::C1, &p, &ParameterSet::default(), c(0.5, 0.0), &cfg).is_err());
        assert!(certify_on_circle(InequalityId::C1, &p, &ParameterSet::default(), 0.9, &cfg).is_err());
    }

    #[test]
    fn empty_grid_is_usage_error() {
        let p = zn_plus_one(3);
        let params = ParameterSet::default().with_grid(vec![]).unwrap();
        let out = certify_on_grid(InequalityId::M1, &p, &params, &CheckConfig::default());
        assert!(matches!(out, Err(Error::Usage(_))));
    }

    #[test]
    fn hypothesis_failure_is_reported_not_thrown() {
        // zeros at 0.5 violate "no zeros in the open disk"
        let p = ComplexPolynomial::from_roots(ONE, &[c(0.5, 0.0), c(2.0, 0.0)]);
        let rep = certify_on_circle(InequalityId::M5, &p, &ParameterSet::default(), 1.0, &CheckConfig::default())
            .unwrap();
        assert!(!rep.hypothesis_ok);
        assert!(rep.notes.contains("inside=1"), "{}", rep.notes);
    }

    #[test]
    fn zero_preservation_needs_unit_a() {
        let p = ComplexPolynomial::from_roots(ONE, &[c(0.5, 0.1), c(-0.2, 0.7)]);
        let on = ParameterSet { a: c(0.6, 0.8), ..ParameterSet::default() };
        let rep = certify_on_circle(InequalityId::L2, &p, &on, 1.0, &CheckConfig::default()).unwrap();
        assert!(rep.hypothesis_ok, "{}", rep.notes);
        assert!(rep.margin >= -ROOT_RADIUS_TOL);
        let interior = ParameterSet { a: c(0.3, 0.0), ..ParameterSet::default() };
        let rep = certify_on_circle(InequalityId::L2, &p, &interior, 1.0, &CheckConfig::default()).unwrap();
        assert!(!rep.hypothesis_ok);
    }

    #[test]
    fn witness_lies_on_requested_circle() {
        let p = ComplexPolynomial::from_roots(c(0.7, -0.2), &[c(1.5, 0.3), c(-2.0, 1.0), c(0.1, -1.2)]);
        let params = worked_params();
        for id in InequalityId::ALL.iter().filter(|id| !id.needs_dominant()) {
            for r in [1.0, 2.0, 4.0] {
                let rep = certify_on_circle(*id, &p, &params, r, &CheckConfig::default()).unwrap();
                assert!((rep.witness_z.norm() - r).abs() < 1e-12 * r, "{id} r={r}");
                assert_eq!(rep.margin, rep.rhs - rep.lhs);
            }
        }
    }
}
