//! Smirnov-type operators and the composite transforms built from them.
//!
//! Every operator carries an explicit degree `n`, which need not equal the
//! degree of its argument. `S̃ₐ[P](Rz)` is realized as the operator applied
//! to the dilated polynomial `z ↦ P(Rz)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{linear_combine, ComplexPolynomial, ONE, TAU_DEG, ZERO};

/// Slack allowed on every modulus constraint of a [`ParameterSet`].
pub const PARAM_TOL: f64 = 1e-12;

pub const DEFAULT_RADIUS_GRID: [f64; 6] = [1.0, 1.05, 1.25, 2.0, 4.0, 10.0];

/// Degree at which an operator is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OperatorDegree(pub usize);

impl From<usize> for OperatorDegree {
    fn from(n: usize) -> Self {
        OperatorDegree(n)
    }
}

impl OperatorDegree {
    pub fn of(p: &ComplexPolynomial) -> Self {
        OperatorDegree(p.degree())
    }

    fn admits(self, p: &ComplexPolynomial) -> Result<usize> {
        if self.0 < p.degree() {
            return Err(Error::domain(format!(
                "operator degree {} is below the argument degree {}",
                self.0,
                p.degree()
            )));
        }
        Ok(self.0)
    }
}

/// The tuple `(R, α, β, a, k, radius grid)` of one inequality instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParameters")]
pub struct ParameterSet {
    #[serde(rename = "R")]
    pub dilation: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub a: Complex64,
    pub k: f64,
    pub radius_grid: Vec<f64>,
}

#[derive(Deserialize)]
struct RawParameters {
    #[serde(rename = "R")]
    dilation: f64,
    alpha: Complex64,
    beta: Complex64,
    a: Complex64,
    k: f64,
    radius_grid: Vec<f64>,
}

impl TryFrom<RawParameters> for ParameterSet {
    type Error = Error;

    fn try_from(raw: RawParameters) -> Result<Self> {
        ParameterSet::new(raw.dilation, raw.alpha, raw.beta, raw.a, raw.k, raw.radius_grid)
    }
}

fn check_unit(name: &str, v: Complex64) -> Result<()> {
    if !(v.re.is_finite() && v.im.is_finite()) || v.norm() > 1.0 + PARAM_TOL {
        return Err(Error::domain(format!("|{name}| must be at most 1, got {v}")));
    }
    Ok(())
}

impl ParameterSet {
    pub fn new(
        dilation: f64,
        alpha: Complex64,
        beta: Complex64,
        a: Complex64,
        k: f64,
        radius_grid: Vec<f64>,
    ) -> Result<Self> {
        if !(dilation.is_finite() && dilation >= 1.0 - PARAM_TOL) {
            return Err(Error::domain(format!("R must be at least 1, got {dilation}")));
        }
        check_unit("alpha", alpha)?;
        check_unit("beta", beta)?;
        check_unit("a", a)?;
        if !(k > 0.0 && k <= 1.0 + PARAM_TOL) {
            return Err(Error::domain(format!("k must lie in (0, 1], got {k}")));
        }
        if let Some(r) = radius_grid.iter().find(|r| !(r.is_finite() && **r >= 1.0 - PARAM_TOL)) {
            return Err(Error::domain(format!("radius grid entries must be at least 1, got {r}")));
        }
        Ok(Self {
            dilation: dilation.max(1.0),
            alpha,
            beta,
            a,
            k: k.min(1.0),
            radius_grid: radius_grid.into_iter().map(|r| r.max(1.0)).collect(),
        })
    }

    pub fn with_dilation(mut self, dilation: f64) -> Result<Self> {
        self.dilation = dilation;
        Self::new(self.dilation, self.alpha, self.beta, self.a, self.k, self.radius_grid)
    }

    pub fn with_grid(mut self, grid: Vec<f64>) -> Result<Self> {
        self.radius_grid = grid;
        Self::new(self.dilation, self.alpha, self.beta, self.a, self.k, self.radius_grid)
    }

    /// `((R + 1)/2)^n − |α|`.
    pub fn growth_term(&self, n: usize) -> f64 {
        half_power(self.dilation, n) - self.alpha.norm()
    }

    /// `R^n − α + β{((R + 1)/2)^n − |α|}`: the extremal factor multiplying
    /// `|S̃ₐ[zⁿ]|`.
    pub fn extremal_factor(&self, n: usize) -> Complex64 {
        Complex64::new(power(self.dilation, n), 0.0) - self.alpha + self.beta * self.growth_term(n)
    }

    /// `1 − α + β{((R + 1)/2)^n − |α|}`: the factor multiplying `n|a|`.
    pub fn constant_factor(&self, n: usize) -> Complex64 {
        ONE - self.alpha + self.beta * self.growth_term(n)
    }
}

impl Default for ParameterSet {
    fn default() -> Self {
        Self {
            dilation: 1.0,
            alpha: ZERO,
            beta: ZERO,
            a: ZERO,
            k: 1.0,
            radius_grid: DEFAULT_RADIUS_GRID.to_vec(),
        }
    }
}

/// `x^n`, through logarithms for large `n`.
pub fn power(x: f64, n: usize) -> f64 {
    if n > 64 && x > 0.0 {
        (n as f64 * x.ln()).exp()
    } else {
        x.powi(n as i32)
    }
}

/// `((R + 1)/2)^n`.
pub fn half_power(dilation: f64, n: usize) -> f64 {
    power(0.5 * (dilation + 1.0), n)
}

/// `S_α[P](z) = zP'(z) − nαP(z)`.
pub fn smirnov(p: &ComplexPolynomial, alpha: Complex64, n: OperatorDegree) -> Result<ComplexPolynomial> {
    let n = n.admits(p)? as f64;
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, &c)| c * (Complex64::new(j as f64, 0.0) - alpha * n))
        .collect();
    Ok(ComplexPolynomial::from_finite(coeffs))
}

/// `S̃ₐ[P](z) = (1 + az)P'(z) − naP(z)`.
///
/// The `z^n` terms cancel identically, so the result has degree at most
/// `n − 1`; coefficient `j` is `(j + 1)c_{j+1} + a(j − n)c_j`.
pub fn smirnov_modified(p: &ComplexPolynomial, a: Complex64, n: OperatorDegree) -> Result<ComplexPolynomial> {
    let n = n.admits(p)?;
    if n == 0 {
        return Ok(ComplexPolynomial::zero());
    }
    let coeffs = (0..n)
        .map(|j| p.coeff(j + 1) * (j + 1) as f64 + a * p.coeff(j) * (j as f64 - n as f64))
        .collect();
    Ok(ComplexPolynomial::from_finite(coeffs))
}

/// `S̃ₐ[P(R·)] − αS̃ₐ[P] + β{((R + 1)/2)^n − |α|}S̃ₐ[P]`, all at degree `n`.
pub fn composite_t(p: &ComplexPolynomial, params: &ParameterSet, n: OperatorDegree) -> Result<ComplexPolynomial> {
    let deg = n.admits(p)?;
    let dilated = smirnov_modified(&p.dilate(params.dilation), params.a, n)?;
    let plain = smirnov_modified(p, params.a, n)?;
    let weight = params.beta * params.growth_term(deg) - params.alpha;
    Ok(linear_combine(&[(ONE, &dilated), (weight, &plain)]))
}

/// `z S̃_{a,n−1}[P'](z) + (n/2)β S̃_{a,n}[P](z) + P'(z)`: the derivative in
/// `R` at `R = 1` of [`composite_t`] with `α = 1`.
pub fn limit_expression(
    p: &ComplexPolynomial,
    beta: Complex64,
    a: Complex64,
    n: OperatorDegree,
) -> Result<ComplexPolynomial> {
    let deg = n.admits(p)?;
    if p.degree() == 0 || deg == 0 {
        return Err(Error::domain("the limit expression needs a non-constant polynomial"));
    }
    let dp = p.derivative();
    let inner = smirnov_modified(&dp, a, OperatorDegree(deg - 1))?.shift_up();
    let outer = smirnov_modified(p, a, n)?;
    Ok(linear_combine(&[(ONE, &inner), (beta * (deg as f64 / 2.0), &outer), (ONE, &dp)]))
}

/// Whether `α` lies in the closure of the image of `{|t| < |z|}` under
/// `t ↦ t/(t + 1)`, i.e. `|α| ≤ |z|·|1 − α|`.
pub fn omega_membership(alpha: Complex64, z_modulus: f64) -> bool {
    debug_assert!(z_modulus >= 1.0 - PARAM_TOL);
    alpha.norm() <= z_modulus * (ONE - alpha).norm() + PARAM_TOL
}

/// Whether `a` collapses `S̃ₐ[P]` below degree `n − 1`: the `z^{n−1}`
/// coefficient `n c_n − a c_{n−1}` vanishes.
pub fn is_exceptional_value(p: &ComplexPolynomial, a: Complex64) -> bool {
    let n = p.degree();
    if n == 0 {
        return false;
    }
    let lead = p.leading() * n as f64 - a * p.coeff(n - 1);
    lead.norm() <= TAU_DEG * p.coeff_norm_bounds().0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z2p1() -> ComplexPolynomial {
        ComplexPolynomial::from_real(&[1.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn smirnov_examples() {
        let n = 4;
        let zn = ComplexPolynomial::monomial(ONE, n);
        let alpha = c(0.3, -0.2);
        let out = smirnov(&zn, alpha, OperatorDegree(n)).unwrap();
        assert_eq!(out, ComplexPolynomial::monomial((ONE - alpha) * n as f64, n));

        let p = ComplexPolynomial::from_real(&[1.0, -2.0, 0.5]).unwrap();
        let zdp = p.derivative().shift_up();
        assert_eq!(smirnov(&p, ZERO, OperatorDegree(2)).unwrap(), zdp);

        // 2z·z − 2(z² + 1) = −2
        assert_eq!(smirnov(&z2p1(), ONE, OperatorDegree(2)).unwrap(), ComplexPolynomial::constant(c(-2.0, 0.0)));
        assert!(smirnov(&z2p1(), ONE, OperatorDegree(1)).is_err());
    }

    #[test]
    fn modified_smirnov_examples() {
        for n in 1..=6 {
            let zn = ComplexPolynomial::monomial(ONE, n);
            for a in [ZERO, c(0.5, 0.5), c(-1.0, 0.0), c(0.0, 0.9)] {
                let out = smirnov_modified(&zn, a, OperatorDegree(n)).unwrap();
                assert_eq!(out, ComplexPolynomial::monomial(c(n as f64, 0.0), n - 1));
            }
        }
        let p = ComplexPolynomial::from_real(&[2.0, 1.0, -3.0, 0.25]).unwrap();
        assert_eq!(smirnov_modified(&p, ZERO, OperatorDegree(3)).unwrap(), p.derivative());

        // (1 + iz)2z − 2i(z² + 1) = 2z − 2i
        let out = smirnov_modified(&z2p1(), c(0.0, 1.0), OperatorDegree(2)).unwrap();
        assert_eq!(out, ComplexPolynomial::new(vec![c(0.0, -2.0), c(2.0, 0.0)]).unwrap());
        assert!(smirnov_modified(&z2p1(), ONE, OperatorDegree(1)).is_err());
    }

    #[test]
    fn composite_collapses_at_unit_dilation() {
        let p = ComplexPolynomial::from_real(&[1.0, -2.0, 3.0, 0.5]).unwrap();
        let params = ParameterSet::new(1.0, ONE, c(0.3, 0.4), c(0.2, -0.7), 1.0, vec![1.0]).unwrap();
        assert!(composite_t(&p, &params, OperatorDegree(3)).unwrap().is_zero());
    }

    #[test]
    fn composite_without_alpha_beta_is_dilated_operator() {
        let p = ComplexPolynomial::from_real(&[1.0, -2.0, 3.0, 0.5]).unwrap();
        let a = c(0.1, 0.6);
        let params = ParameterSet::new(2.5, ZERO, ZERO, a, 1.0, vec![1.0]).unwrap();
        let expected = smirnov_modified(&p.dilate(2.5), a, OperatorDegree(3)).unwrap();
        assert_eq!(composite_t(&p, &params, OperatorDegree(3)).unwrap(), expected);
    }

    #[test]
    fn composite_worked_instance() {
        let z2 = ComplexPolynomial::monomial(ONE, 2);
        let params = ParameterSet::new(2.0, c(0.3, 0.0), c(0.7, 0.0), c(0.4, 0.0), 1.0, vec![1.0]).unwrap();
        let t = composite_t(&z2, &params, OperatorDegree(2)).unwrap();
        assert_eq!(t.degree(), 1);
        assert!(t.coeff(0).norm() < 1e-15);
        assert!((t.coeff(1) - c(10.13, 0.0)).norm() < 1e-12);
        assert!((t.value_at(ONE).norm() - 10.13).abs() < 1e-12);
    }

    #[test]
    fn limit_expression_examples() {
        let n = 5;
        let zn = ComplexPolynomial::monomial(ONE, n);
        let out = limit_expression(&zn, ZERO, ZERO, OperatorDegree(n)).unwrap();
        assert_eq!(out, ComplexPolynomial::monomial(c((n * n) as f64, 0.0), n - 1));

        let z2 = ComplexPolynomial::monomial(ONE, 2);
        let out = limit_expression(&z2, ZERO, c(0.4, 0.0), OperatorDegree(2)).unwrap();
        assert!((out.coeff(1) - c(4.0, 0.0)).norm() < 1e-14);
        assert!(out.coeff(0).norm() < 1e-14);

        let constant = ComplexPolynomial::constant(ONE);
        assert!(limit_expression(&constant, ZERO, ZERO, OperatorDegree(3)).is_err());
    }

    #[test]
    fn limit_expression_matches_finite_difference() {
        let p = ComplexPolynomial::new(vec![c(0.3, -1.0), c(1.2, 0.4), c(-0.5, 0.0), c(0.0, 0.8)]).unwrap();
        let (beta, a) = (c(0.2, -0.5), c(-0.3, 0.6));
        let n = OperatorDegree(3);
        let h = 1e-6;
        let params = ParameterSet::new(1.0 + h, ONE, beta, a, 1.0, vec![1.0]).unwrap();
        let t = composite_t(&p, &params, n).unwrap();
        let l = limit_expression(&p, beta, a, n).unwrap();
        for j in 0..=3 {
            assert!((t.coeff(j) / h - l.coeff(j)).norm() < 1e-4, "coefficient {j}");
        }
    }

    #[test]
    fn omega_examples() {
        assert!(omega_membership(ZERO, 1.0));
        assert!(omega_membership(ZERO, 7.0));
        assert!(omega_membership(c(0.5, 0.0), 1.0));
        assert!(!omega_membership(c(2.0, 0.0), 1.0));
        assert!(omega_membership(c(2.0, 0.0), 2.0));
        assert!(!omega_membership(ONE, 100.0));
    }

    #[test]
    fn exceptional_examples() {
        let zn = ComplexPolynomial::monomial(ONE, 4);
        for a in [ONE, c(0.0, 1.0), c(-0.6, 0.8)] {
            assert!(!is_exceptional_value(&zn, a));
        }
        let p = ComplexPolynomial::from_real(&[0.0, 2.0, 1.0]).unwrap();
        assert!(is_exceptional_value(&p, ONE));
        assert!(!is_exceptional_value(&p, ZERO));
        let s = smirnov_modified(&p, ONE, OperatorDegree(2)).unwrap();
        assert!(s.degree() < 1);
    }

    #[test]
    fn parameter_validation() {
        assert!(ParameterSet::new(0.5, ZERO, ZERO, ZERO, 1.0, vec![1.0]).is_err());
        assert!(ParameterSet::new(1.0, c(1.5, 0.0), ZERO, ZERO, 1.0, vec![1.0]).is_err());
        assert!(ParameterSet::new(1.0, ZERO, c(0.0, 1.1), ZERO, 1.0, vec![1.0]).is_err());
        assert!(ParameterSet::new(1.0, ZERO, ZERO, c(0.8, 0.8), 1.0, vec![1.0]).is_err());
        assert!(ParameterSet::new(1.0, ZERO, ZERO, ZERO, 0.0, vec![1.0]).is_err());
        assert!(ParameterSet::new(1.0, ZERO, ZERO, ZERO, 1.0, vec![0.9]).is_err());
        assert!(ParameterSet::new(1.0, ONE, c(0.0, -1.0), c(0.6, 0.8), 1.0, vec![]).is_ok());
    }

    #[test]
    fn parameter_json_round_trip() {
        let params = ParameterSet::new(2.0, c(0.3, 0.0), c(0.7, 0.0), c(0.4, 0.0), 0.5, vec![1.0, 2.0]).unwrap();
        let text = serde_json::to_string(&params).unwrap();
        assert!(text.starts_with("{\"R\":2.0,\"alpha\":[0.3,0.0]"));
        let back: ParameterSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, params);
        let bad = text.replace("[0.3,0.0]", "[1.3,0.0]");
        assert!(serde_json::from_str::<ParameterSet>(&bad).is_err());
    }

    #[test]
    fn large_degree_half_power_is_finite() {
        let v = half_power(8.0, 400);
        assert!(v.is_finite() && v > 1e200);
        assert!((half_power(3.0, 70) / 2f64.powi(70) - 1.0).abs() < 1e-12);
    }
}
