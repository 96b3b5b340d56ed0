//! Complex polynomials in ascending-power coefficient form.
//!
//! Every polynomial is kept degree-trimmed: leading coefficients whose
//! modulus falls below [`TAU_DEG`] times the largest coefficient modulus are
//! dropped, and the zero polynomial is stored as `[0]`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance below which a leading coefficient is treated as zero.
pub const TAU_DEG: f64 = 1e-12;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    /// Builds a polynomial from ascending coefficients, trimming the degree.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if let Some(j) = coeffs.iter().position(|c| !is_finite(*c)) {
            return Err(Error::domain(format!("coefficient {j} is not finite")));
        }
        Ok(Self::from_finite(coeffs))
    }

    /// Same as [`ComplexPolynomial::new`] for coefficients known to be finite.
    pub(crate) fn from_finite(mut coeffs: Vec<Complex64>) -> Self {
        let largest = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if largest == 0.0 {
            return Self::zero();
        }
        let floor = TAU_DEG * largest;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= floor) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![ZERO] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_finite(vec![c])
    }

    /// `c * z^n`.
    pub fn monomial(c: Complex64, n: usize) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = c;
        Self::from_finite(coeffs)
    }

    /// Expands `lead * Π (z - w)` over the given zeros.
    pub fn from_roots(lead: Complex64, zeros: &[Complex64]) -> Self {
        let mut coeffs = vec![lead];
        for &w in zeros {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (j, &c) in coeffs.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * w;
            }
            coeffs = next;
        }
        Self::from_finite(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ZERO
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    /// Coefficient of `z^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or(ZERO)
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        if !is_finite(z) {
            return Err(Error::domain("evaluation point is not finite"));
        }
        Ok(self.value_at(z))
    }

    /// Horner evaluation without the finiteness check on `z`.
    #[inline]
    pub fn value_at(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Value and first derivative in one Horner pass.
    #[inline]
    pub fn value_and_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero();
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(j, &c)| c * (j + 1) as f64)
            .collect();
        Self::from_finite(coeffs)
    }

    /// `z^n * conj(P(1 / conj(z)))`: the conjugated coefficients, zero-padded
    /// to length `n + 1`, in reverse order.
    pub fn conjugate_reciprocal(&self, n: usize) -> Result<Self> {
        if n < self.degree() {
            return Err(Error::domain(format!(
                "conjugate-reciprocal degree {n} is below the polynomial degree {}",
                self.degree()
            )));
        }
        let coeffs = (0..=n).rev().map(|j| self.coeff(j).conj()).collect();
        Ok(Self::from_finite(coeffs))
    }

    /// The polynomial `z ↦ P(R z)`.
    pub fn dilate(&self, radius: f64) -> Self {
        assert!(
            radius.is_finite() && radius >= 0.0,
            "dilation factor must be finite and non-negative, got {radius}"
        );
        if radius == 1.0 {
            return self.clone();
        }
        let mut scale = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * scale;
                scale *= radius;
                out
            })
            .collect();
        Self::from_finite(coeffs)
    }

    /// `z * P(z)`.
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_finite(self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_finite(coeffs)
    }

    /// `(Σ|c_j|, Σ j|c_j|)`: bounds for the maximum of `|P|` and of `|P'|` on
    /// the unit circle.
    pub fn coeff_norm_bounds(&self) -> (f64, f64) {
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(b, b1), (j, c)| {
                let m = c.norm();
                (b + m, b1 + j as f64 * m)
            })
    }

    /// `Σ j²|c_j|`.
    pub fn second_moment(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| (j * j) as f64 * c.norm())
            .sum()
    }

    /// `Σ |c_j| r^j`, an upper bound for `|P|` on the circle of radius `r`.
    pub fn abs_sum_at(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite coefficients always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::usage(format!("malformed polynomial: {e}")))
    }
}

/// Coefficient-wise `Σ c_i p_i`, trimmed with [`TAU_DEG`] relative to the
/// result.
pub fn linear_combine(terms: &[(Complex64, &ComplexPolynomial)]) -> ComplexPolynomial {
    let len = terms.iter().map(|(_, p)| p.coeffs.len()).max().unwrap_or(1);
    let mut coeffs = vec![ZERO; len];
    for (c, p) in terms {
        for (acc, &x) in coeffs.iter_mut().zip(&p.coeffs) {
            *acc += c * x;
        }
    }
    ComplexPolynomial::from_finite(coeffs)
}

impl TryFrom<Vec<Complex64>> for ComplexPolynomial {
    type Error = Error;

    fn try_from(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::usage("polynomial needs at least one coefficient"));
        }
        Self::new(coeffs)
    }
}

impl From<ComplexPolynomial> for Vec<Complex64> {
    fn from(p: ComplexPolynomial) -> Self {
        p.coeffs
    }
}

impl fmt::Debug for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexPolynomial{}", self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(coeffs: &[(f64, f64)]) -> ComplexPolynomial {
        ComplexPolynomial::new(coeffs.iter().map(|&(re, im)| c(re, im)).collect()).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let zn = ComplexPolynomial::monomial(ONE, 7);
        assert_eq!(zn.evaluate(ONE).unwrap(), ONE);

        let z2p1 = poly(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert!(z2p1.evaluate(c(0.0, 1.0)).unwrap().norm() < 1e-15);

        // (2z + i) at 1 + i: 2 + 2i + i
        let p = poly(&[(0.0, 1.0), (2.0, 0.0)]);
        assert_eq!(p.evaluate(c(1.0, 1.0)).unwrap(), c(2.0, 3.0));
    }

    #[test]
    fn evaluate_rejects_non_finite_point() {
        let p = poly(&[(1.0, 0.0), (1.0, 0.0)]);
        assert!(matches!(p.evaluate(c(f64::NAN, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(p.evaluate(c(0.0, f64::INFINITY)), Err(Error::Domain(_))));
    }

    #[test]
    fn non_finite_coefficients_rejected() {
        assert!(ComplexPolynomial::new(vec![c(1.0, 0.0), c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexPolynomial::from_json("[]").is_err());
    }

    #[test]
    fn derivative_examples() {
        let zn = ComplexPolynomial::monomial(ONE, 5);
        assert_eq!(zn.derivative(), ComplexPolynomial::monomial(c(5.0, 0.0), 4));
        assert!(ComplexPolynomial::constant(c(5.0, 0.0)).derivative().is_zero());
        let z2p1 = poly(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(z2p1.derivative(), poly(&[(0.0, 0.0), (2.0, 0.0)]));
    }

    #[test]
    fn conjugate_reciprocal_examples() {
        let zn = ComplexPolynomial::monomial(ONE, 4);
        assert_eq!(zn.conjugate_reciprocal(4).unwrap(), ComplexPolynomial::constant(ONE));

        let z2p1 = poly(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(z2p1.conjugate_reciprocal(2).unwrap(), z2p1);

        // z * conj(2/conj(z) + i) = 2 - i z
        let p = poly(&[(0.0, 1.0), (2.0, 0.0)]);
        assert_eq!(p.conjugate_reciprocal(1).unwrap(), poly(&[(2.0, 0.0), (0.0, -1.0)]));

        // padding: a degree-1 polynomial taken at degree 3
        assert_eq!(p.conjugate_reciprocal(3).unwrap(), poly(&[(0.0, 0.0), (0.0, 0.0), (2.0, 0.0), (0.0, -1.0)]));
        assert!(matches!(p.conjugate_reciprocal(0), Err(Error::Domain(_))));
    }

    #[test]
    fn dilate_examples() {
        let z2p1 = poly(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(z2p1.dilate(2.0), poly(&[(1.0, 0.0), (0.0, 0.0), (4.0, 0.0)]));
        assert_eq!(z2p1.dilate(1.0), z2p1);
        let z3 = ComplexPolynomial::monomial(ONE, 3);
        assert_eq!(z3.dilate(1.5), ComplexPolynomial::monomial(c(3.375, 0.0), 3));
    }

    #[test]
    fn linear_combine_examples() {
        let z2 = ComplexPolynomial::monomial(ONE, 2);
        assert!(linear_combine(&[(ONE, &z2), (-ONE, &z2)]).is_zero());

        let z = ComplexPolynomial::monomial(ONE, 1);
        let one = ComplexPolynomial::constant(ONE);
        assert_eq!(linear_combine(&[(c(2.0, 0.0), &z), (c(3.0, 0.0), &one)]), poly(&[(3.0, 0.0), (2.0, 0.0)]));

        // i(z² + 1) - i z² = i
        let z2p1 = poly(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let miz2 = ComplexPolynomial::monomial(c(0.0, -1.0), 2);
        let out = linear_combine(&[(c(0.0, 1.0), &z2p1), (ONE, &miz2)]);
        assert_eq!(out, ComplexPolynomial::constant(c(0.0, 1.0)));
        assert_eq!(out.degree(), 0);
    }

    #[test]
    fn coeff_norm_bound_examples() {
        let n = 6;
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[0] = ONE;
        coeffs[n] = ONE;
        assert_eq!(ComplexPolynomial::new(coeffs).unwrap().coeff_norm_bounds(), (2.0, 6.0));
        assert_eq!(ComplexPolynomial::constant(c(-3.0, 4.0)).coeff_norm_bounds(), (5.0, 0.0));
        let p = poly(&[(0.0, 0.0), (0.0, -4.0), (3.0, 0.0)]);
        assert_eq!(p.coeff_norm_bounds(), (7.0, 10.0));
    }

    #[test]
    fn zero_polynomial_is_canonical() {
        let z = ComplexPolynomial::new(vec![ZERO, ZERO, ZERO]).unwrap();
        assert_eq!(z.coeffs(), &[ZERO]);
        assert_eq!(z.degree(), 0);
        assert!(z.is_zero());
    }

    #[test]
    fn trimming_is_relative() {
        let p = poly(&[(1.0, 0.0), (2.0, 0.0), (1e-13, 0.0)]);
        assert_eq!(p.degree(), 1);
        let q = poly(&[(1e-20, 0.0), (1e-20, 0.0)]);
        assert_eq!(q.degree(), 1);
    }

    #[test]
    fn json_format() {
        let p = poly(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(p.to_json(), "[[1.0,0.0],[0.0,0.0],[0.0,0.0],[1.0,0.0]]");
        assert_eq!(ComplexPolynomial::from_json("[[1,0],[0,0],[0,0],[1,0]]").unwrap(), p);
        assert!(ComplexPolynomial::from_json("[[1,0],[0]]").is_err());
        assert!(ComplexPolynomial::from_json("{\"a\":1}").is_err());
    }

    #[test]
    fn from_roots_expands() {
        let p = ComplexPolynomial::from_roots(ONE, &[c(0.0, 1.0), c(0.0, -1.0)]);
        assert_eq!(p, poly(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]));
    }
}
