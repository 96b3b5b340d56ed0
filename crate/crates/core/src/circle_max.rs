//! Maximum modulus on a circle with a certified bracket, and worst-case
//! margins of modulus expressions sampled around a circle.
//!
//! The bracket is certified by branch and bound over arcs of the circle. On
//! an arc of width `h` with endpoint values `f_a, f_b` of `f(θ) = |q(e^{iθ})|²`
//! (where `q = P(r·)`), two upper bounds hold:
//!
//! * `max(|q_a|, |q_b|) + B1·h/2`, since `θ ↦ |q(e^{iθ})|` is Lipschitz with
//!   constant `B1 = Σ j|c_j|`;
//! * `sqrt(max(f_a, f_b) + K·h²/8)`, since `|f''| ≤ K = 2(B·B2 − B1²)` with
//!   `B = Σ|c_j|` and `B2 = Σ j²|c_j|`.
//!
//! Arcs whose bound cannot exceed the best attained value by more than the
//! tolerance are discarded; the others are bisected.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ComplexPolynomial;

/// Hard cap on the number of polynomial evaluations spent on one bracket.
pub const MAX_SAMPLES: usize = 1 << 24;

/// Default absolute bracket tolerance, scaled by `Σ|c_j|` when larger than 1.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Arcs narrower than this cannot be bisected meaningfully in f64.
const MIN_ARC: f64 = 1e-13;
const REFINE_CANDIDATES: usize = 3;
const GOLDEN_ITERS: usize = 64;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedBracket {
    pub lo: f64,
    pub hi: f64,
    pub argmax_theta: f64,
}

impl CertifiedBracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lo <= value && value <= self.hi
    }
}

/// Initial number of equispaced samples for a polynomial of degree `degree`.
pub fn initial_samples(degree: usize) -> usize {
    4096.max(64 * degree)
}

/// Tolerance `DEFAULT_TOL · max(1, Σ|c_j|)`.
pub fn default_tol(p: &ComplexPolynomial) -> f64 {
    DEFAULT_TOL * p.coeff_norm_bounds().0.max(1.0)
}

fn angle(i: usize, n: usize) -> f64 {
    TAU * i as f64 / n as f64
}

fn wrap(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Golden-section search maximizing `f` on `[a, b]`.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..GOLDEN_ITERS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Indices of the best discrete local maxima of a cyclic sample sequence.
fn best_local_maxima(values: &[f64], count: usize) -> Vec<usize> {
    let n = values.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = values[(i + n - 1) % n];
            let next = values[(i + 1) % n];
            values[i] >= prev && values[i] >= next
        })
        .collect();
    peaks.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    peaks.truncate(count);
    if peaks.is_empty() {
        peaks.push(0);
    }
    peaks
}

struct Arc {
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
}

pub fn max_modulus_on_circle(p: &ComplexPolynomial, r: f64, tol: f64) -> Result<CertifiedBracket> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("circle radius must be positive, got {r}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("bracket tolerance must be positive, got {tol}")));
    }
    let q = p.dilate(r);
    if q.degree() == 0 {
        let m = q.coeff(0).norm();
        return Ok(CertifiedBracket { lo: m, hi: m, argmax_theta: 0.0 });
    }

    let (b, b1) = q.coeff_norm_bounds();
    let b2 = q.second_moment();
    let curvature = (2.0 * (b * b2 - b1 * b1)).max(0.0);
    let rounding = 4.0 * (q.degree() + 2) as f64 * f64::EPSILON * b;
    let sq = |theta: f64| q.value_at(Complex64::from_polar(1.0, theta)).norm_sqr();
    let bound = |arc: &Arc| {
        let h = arc.b - arc.a;
        let top = arc.fa.max(arc.fb);
        let quad = (top + curvature * h * h / 8.0).sqrt();
        let lip = top.sqrt() + b1 * h / 2.0;
        quad.min(lip) + rounding
    };

    let n0 = initial_samples(q.degree());
    let values: Vec<f64> = (0..n0).map(|i| sq(angle(i, n0))).collect();
    let mut evaluations = n0;

    let mut best_sq = f64::NEG_INFINITY;
    let mut argmax = 0.0;
    for (i, &v) in values.iter().enumerate() {
        if v > best_sq {
            best_sq = v;
            argmax = angle(i, n0);
        }
    }
    let h0 = TAU / n0 as f64;
    for i in best_local_maxima(&values, REFINE_CANDIDATES) {
        let centre = angle(i, n0);
        let (theta, v) = golden_max(sq, centre - h0, centre + h0);
        evaluations += GOLDEN_ITERS + 2;
        if v > best_sq {
            best_sq = v;
            argmax = wrap(theta);
        }
    }

    let mut active: Vec<Arc> = (0..n0)
        .map(|i| Arc {
            a: angle(i, n0),
            b: angle(i + 1, n0),
            fa: values[i],
            fb: values[(i + 1) % n0],
        })
        .collect();
    let mut discarded_hi = 0.0f64;

    loop {
        let lo = (best_sq.sqrt() - rounding).max(0.0);
        let mut keep = Vec::new();
        for arc in active {
            let u = bound(&arc);
            if u <= lo + tol {
                discarded_hi = discarded_hi.max(u);
            } else {
                keep.push(arc);
            }
        }
        active = keep;
        if active.is_empty() {
            return Ok(CertifiedBracket {
                lo,
                hi: discarded_hi.max(lo),
                argmax_theta: argmax,
            });
        }
        let exhausted = active.iter().any(|a| a.b - a.a < MIN_ARC);
        if exhausted || evaluations + active.len() > MAX_SAMPLES {
            let open = active.iter().map(&bound).fold(0.0, f64::max);
            return Err(Error::ToleranceUnreachable {
                tol,
                samples: evaluations,
                best: CertifiedBracket {
                    lo,
                    hi: open.max(discarded_hi).max(lo),
                    argmax_theta: argmax,
                },
            });
        }
        let mut next = Vec::with_capacity(2 * active.len());
        for arc in active {
            let mid = 0.5 * (arc.a + arc.b);
            let fm = sq(mid);
            evaluations += 1;
            if fm > best_sq {
                best_sq = fm;
                argmax = wrap(mid);
            }
            next.push(Arc { a: arc.a, b: mid, fa: arc.fa, fb: fm });
            next.push(Arc { a: mid, b: arc.b, fa: fm, fb: arc.fb });
        }
        active = next;
    }
}

/// A closed-form right-hand side depending on the point only through `|z|`.
pub trait RadialProfile {
    fn at(&self, r: f64) -> f64;
}

impl<F: Fn(f64) -> f64> RadialProfile for F {
    fn at(&self, r: f64) -> f64 {
        self(r)
    }
}

/// Worst value of `profile(r) − |numerator(z)|` over `|z| = r` and the point
/// attaining it.
pub fn sup_ratio_on_circle(
    numerator: &ComplexPolynomial,
    profile: &dyn RadialProfile,
    r: f64,
    tol: f64,
) -> Result<(f64, Complex64)> {
    let rhs = profile.at(r);
    if !(rhs > 0.0) {
        return Err(Error::domain(format!("right-hand profile must be positive at r = {r}")));
    }
    let bracket = max_modulus_on_circle(numerator, r, tol)?;
    Ok((rhs - bracket.lo, Complex64::from_polar(r, bracket.argmax_theta)))
}

/// `constant + Σ weight·|p(z)|`, a margin expression in moduli of
/// polynomials.
#[derive(Debug, Clone)]
pub struct MarginForm {
    pub constant: f64,
    pub terms: Vec<(f64, ComplexPolynomial)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginMinimum {
    /// Smallest value attained on the samples and refinements.
    pub value: f64,
    pub theta: f64,
    /// Lipschitz lower bound for the true minimum.
    pub certified_lower: f64,
    /// Largest sampled value of the non-negative part
    /// `constant + Σ_{w > 0} w·|p|`.
    pub positive_peak: f64,
}

impl MarginForm {
    fn dilated(&self, r: f64) -> Vec<(f64, ComplexPolynomial)> {
        self.terms.iter().map(|(w, p)| (*w, p.dilate(r))).collect()
    }

    pub fn value_at(&self, z: Complex64) -> f64 {
        self.terms
            .iter()
            .fold(self.constant, |acc, (w, p)| acc + w * p.value_at(z).norm())
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.degree()).max().unwrap_or(0)
    }
}

/// Dense sampling followed by golden-section refinement around the best
/// local minima.
pub fn minimize_margin_on_circle(form: &MarginForm, r: f64, samples: usize) -> MarginMinimum {
    let terms = form.dilated(r);
    let eval = |theta: f64| {
        let z = Complex64::from_polar(1.0, theta);
        let mut total = form.constant;
        let mut positive = form.constant.max(0.0);
        for (w, q) in &terms {
            let m = w * q.value_at(z).norm();
            total += m;
            if *w > 0.0 {
                positive += m;
            }
        }
        (total, positive)
    };
    let n = samples.max(8);
    let mut values = Vec::with_capacity(n);
    let mut positive_peak = 0.0f64;
    for i in 0..n {
        let (v, pos) = eval(angle(i, n));
        values.push(-v);
        positive_peak = positive_peak.max(pos);
    }
    let (mut best_i, mut best) = (0, f64::INFINITY);
    for (i, v) in values.iter().enumerate() {
        if -v < best {
            best = -v;
            best_i = i;
        }
    }
    let sampled_min = best;
    let mut theta = angle(best_i, n);
    let h = TAU / n as f64;
    for i in best_local_maxima(&values, REFINE_CANDIDATES) {
        let centre = angle(i, n);
        let (t, neg) = golden_max(|t| -eval(t).0, centre - h, centre + h);
        if -neg < best {
            best = -neg;
            theta = wrap(t);
        }
    }
    let lipschitz: f64 = terms.iter().map(|(w, q)| w.abs() * q.coeff_norm_bounds().1).sum();
    MarginMinimum {
        value: best,
        theta,
        certified_lower: sampled_min - lipschitz * h / 2.0,
        positive_peak,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ONE, ZERO};

    fn zn_plus_one(n: usize) -> ComplexPolynomial {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[0] = ONE;
        coeffs[n] = ONE;
        ComplexPolynomial::new(coeffs).unwrap()
    }

    #[test]
    fn known_maxima() {
        for n in 1..=10 {
            let b = max_modulus_on_circle(&zn_plus_one(n), 1.0, 1e-10).unwrap();
            assert!(b.contains(2.0), "{n}: {b:?}");
            assert!(b.width() <= 1e-10);
        }
        let sq = ComplexPolynomial::from_real(&[1.0, 2.0, 1.0]).unwrap();
        let b = max_modulus_on_circle(&sq, 1.0, 1e-10).unwrap();
        assert!(b.contains(4.0), "{b:?}");
        assert!(b.argmax_theta.min(TAU - b.argmax_theta) < 1e-6);
    }

    #[test]
    fn constant_is_exact() {
        let c = ComplexPolynomial::constant(Complex64::new(3.0, -4.0));
        let b = max_modulus_on_circle(&c, 2.5, 1e-10).unwrap();
        assert_eq!((b.lo, b.hi), (5.0, 5.0));
    }

    #[test]
    fn rejects_bad_arguments() {
        let p = zn_plus_one(3);
        assert!(max_modulus_on_circle(&p, 0.0, 1e-10).is_err());
        assert!(max_modulus_on_circle(&p, 1.0, 0.0).is_err());
    }

    #[test]
    fn unreachable_tolerance_reports_best_bracket() {
        let p = ComplexPolynomial::from_real(&[1.0, 3.0, -2.0, 0.5, 1.0]).unwrap();
        match max_modulus_on_circle(&p, 1.0, 1e-300) {
            Err(Error::ToleranceUnreachable { best, .. }) => assert!(best.lo <= best.hi),
            other => panic!("expected unreachable tolerance, got {other:?}"),
        }
    }

    #[test]
    fn sup_ratio_examples() {
        let flat = |_: f64| 1.0;
        let (m, w) = sup_ratio_on_circle(&ComplexPolynomial::zero(), &flat, 1.0, 1e-10).unwrap();
        assert_eq!(m, 1.0);
        assert!((w.norm() - 1.0).abs() < 1e-12);

        let zn = ComplexPolynomial::monomial(ONE, 5);
        let (m, _) = sup_ratio_on_circle(&zn, &flat, 1.0, 1e-10).unwrap();
        assert!(m.abs() < 1e-12);

        let n = 5;
        let deriv = ComplexPolynomial::monomial(Complex64::new(n as f64, 0.0), n - 1);
        let profile = move |r: f64| n as f64 * r.powi(n as i32 - 1);
        for r in [1.0, 1.7, 3.0] {
            let (m, w) = sup_ratio_on_circle(&deriv, &profile, r, 1e-10).unwrap();
            assert!(m.abs() <= 1e-10 * profile(r), "r = {r}: {m}");
            assert!((w.norm() - r).abs() < 1e-12);
        }
        assert!(sup_ratio_on_circle(&zn, &|_: f64| 0.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn margin_form_minimum() {
        // 2 - |z + 1| on the unit circle: minimum 0 at z = 1
        let form = MarginForm {
            constant: 2.0,
            terms: vec![(-1.0, ComplexPolynomial::from_real(&[1.0, 1.0]).unwrap())],
        };
        let m = minimize_margin_on_circle(&form, 1.0, 4096);
        assert!(m.value.abs() < 1e-12);
        assert!(m.certified_lower <= m.value);
        assert_eq!(m.positive_peak, 2.0);
    }
}
