//! Sharpness probes: largest `lhs/rhs` over a parameter grid for an
//! extremal family.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle_max::max_modulus_on_circle;
use crate::error::{Error, Result};
use crate::inequalities::{certify_on_circle, CheckConfig, InequalityId, MaxMode, Subject};
use crate::operators::ParameterSet;
use crate::poly::{ComplexPolynomial, ONE, ZERO};

/// Bracket tolerance used by probes.
pub const PROBE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "lambda_zn")]
    LambdaZn,
    #[serde(rename = "zn_plus_1")]
    ZnPlusOne,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::LambdaZn => "lambda_zn",
            Family::ZnPlusOne => "zn_plus_1",
        }
    }

    /// `λzⁿ` or `zⁿ + 1`.
    pub fn polynomial(self, n: usize, lambda: Complex64) -> ComplexPolynomial {
        match self {
            Family::LambdaZn => ComplexPolynomial::monomial(lambda, n),
            Family::ZnPlusOne => {
                let mut coeffs = vec![ZERO; n + 1];
                coeffs[0] = ONE;
                coeffs[n] += ONE;
                ComplexPolynomial::new(coeffs).expect("finite coefficients")
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "lambda_zn" => Ok(Family::LambdaZn),
            "zn_plus_1" => Ok(Family::ZnPlusOne),
            other => Err(Error::usage(format!("unknown family '{other}' (lambda_zn or zn_plus_1)"))),
        }
    }
}

/// Cartesian grid of instance parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterGrid {
    #[serde(rename = "R")]
    pub dilation: Vec<f64>,
    pub alpha: Vec<Complex64>,
    pub beta: Vec<Complex64>,
    pub a: Vec<Complex64>,
    pub degrees: Vec<usize>,
    pub radius_grid: Vec<f64>,
    pub k: f64,
}

impl Default for ParameterGrid {
    fn default() -> Self {
        Self {
            dilation: vec![1.0],
            alpha: vec![ZERO],
            beta: vec![ZERO],
            a: vec![ZERO],
            degrees: (2..=8).collect(),
            radius_grid: vec![1.0],
            k: 1.0,
        }
    }
}

impl ParameterGrid {
    pub fn validate(&self) -> Result<()> {
        let empty = [
            ("R", self.dilation.is_empty()),
            ("alpha", self.alpha.is_empty()),
            ("beta", self.beta.is_empty()),
            ("a", self.a.is_empty()),
            ("n", self.degrees.is_empty()),
            ("radius", self.radius_grid.is_empty()),
        ];
        if let Some((name, _)) = empty.iter().find(|(_, e)| *e) {
            return Err(Error::usage(format!("{name} grid is empty")));
        }
        Ok(())
    }

    /// Parameter sets and degrees in lexicographic order of the grid
    /// indices `(R, α, β, a, n)`.
    pub fn points(&self) -> Result<Vec<(ParameterSet, usize)>> {
        self.validate()?;
        let mut out = Vec::new();
        for &dilation in &self.dilation {
            for &alpha in &self.alpha {
                for &beta in &self.beta {
                    for &a in &self.a {
                        let params = ParameterSet::new(dilation, alpha, beta, a, self.k, self.radius_grid.clone())?;
                        for &n in &self.degrees {
                            out.push((params.clone(), n));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub ineq: InequalityId,
    pub family: Family,
    pub best_ratio: f64,
    pub degree: usize,
    pub params: ParameterSet,
    pub radius: f64,
    pub witness_z: Complex64,
    /// Width of the bracket on `max|P|` at the argmax.
    pub bracket_width: f64,
    pub hypothesis_ok: bool,
}

/// Largest `lhs/rhs` over `grid`, with the right side built from the
/// bracket midpoint. Pair inequalities compare the family member with
/// itself.
pub fn sharpness_probe(
    ineq: InequalityId,
    family: Family,
    lambda: Complex64,
    grid: &ParameterGrid,
) -> Result<ProbeResult> {
    let cfg = CheckConfig { tol: PROBE_TOL, max_mode: MaxMode::Midpoint, ..CheckConfig::default() };
    let mut best: Option<ProbeResult> = None;
    for (params, n) in grid.points()? {
        let p = family.polynomial(n, lambda);
        let subject = if ineq.needs_dominant() {
            Subject::Pair { p: &p, dominant: &p }
        } else {
            Subject::Single(&p)
        };
        for &r in &grid.radius_grid {
            let rep = certify_on_circle(ineq, subject, &params, r, &cfg)?;
            let ratio = rep.ratio();
            if best.as_ref().is_none_or(|b| ratio > b.best_ratio) {
                let width = max_modulus_on_circle(&p, 1.0, PROBE_TOL * p.coeff_norm_bounds().0.max(1.0))
                    .map(|b| b.width())
                    .unwrap_or(f64::NAN);
                best = Some(ProbeResult {
                    ineq,
                    family,
                    best_ratio: ratio,
                    degree: n,
                    params: ParameterSet { radius_grid: vec![r], ..params.clone() },
                    radius: r,
                    witness_z: rep.witness_z,
                    bracket_width: width,
                    hypothesis_ok: rep.hypothesis_ok,
                });
            }
        }
    }
    Ok(best.expect("validated grid is non-empty"))
}
