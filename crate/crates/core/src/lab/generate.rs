//! Random instances with prescribed zero locations.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{ParameterSet, DEFAULT_RADIUS_GRID};
use crate::poly::ComplexPolynomial;

/// Smallest admissible pairwise zero separation.
pub const MIN_SEPARATION: f64 = 1e-3;
/// Resampling attempts before giving up on the separation constraint.
pub const MAX_ATTEMPTS: usize = 10_000;
/// Largest zero modulus drawn for unbounded regions.
pub const OUTER_RADIUS: f64 = 3.0;
/// Largest dilation drawn by [`random_params`].
pub const MAX_DILATION: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroRegion {
    Anywhere,
    OutsideClosedDisk,
    InsideClosedDisk,
    Annulus { k_lo: f64, k_hi: f64 },
    /// Moduli in `[1, 1.01]`, stressing the on-circle band.
    BoundaryHugging,
}

impl ZeroRegion {
    /// Radial range `[lo, hi]` of sampled zero moduli.
    pub fn radial_range(&self) -> (f64, f64) {
        match *self {
            ZeroRegion::Anywhere => (0.0, OUTER_RADIUS),
            ZeroRegion::OutsideClosedDisk => (1.0, OUTER_RADIUS),
            ZeroRegion::InsideClosedDisk => (0.0, 1.0),
            ZeroRegion::Annulus { k_lo, k_hi } => (k_lo, k_hi),
            ZeroRegion::BoundaryHugging => (1.0, 1.01),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub degree: usize,
    pub zero_region: ZeroRegion,
    pub zero_separation_min: f64,
    pub coeff_scale: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(degree: usize, zero_region: ZeroRegion, seed: u64) -> Self {
        Self {
            degree,
            zero_region,
            zero_separation_min: MIN_SEPARATION,
            coeff_scale: 1.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::domain("generator degree must be at least 1"));
        }
        if !(self.zero_separation_min >= MIN_SEPARATION && self.zero_separation_min.is_finite()) {
            return Err(Error::domain(format!(
                "zero separation must be at least {MIN_SEPARATION}, got {}",
                self.zero_separation_min
            )));
        }
        if !(self.coeff_scale > 0.0 && self.coeff_scale.is_finite()) {
            return Err(Error::domain(format!("coeff_scale must be positive, got {}", self.coeff_scale)));
        }
        let (lo, hi) = self.zero_region.radial_range();
        if !(lo >= 0.0 && hi > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::domain(format!("invalid radial range [{lo}, {hi}]")));
        }
        Ok(())
    }
}

/// Deterministic instance for `spec.seed`.
pub fn generate(spec: &GeneratorSpec) -> Result<ComplexPolynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    generate_from(spec, &mut rng)
}

/// Like [`generate`], drawing from `rng` instead of `spec.seed`.
pub fn generate_from<R: Rng + ?Sized>(spec: &GeneratorSpec, rng: &mut R) -> Result<ComplexPolynomial> {
    spec.validate()?;
    let (lo, hi) = spec.zero_region.radial_range();
    let mut zeros: Vec<Complex64> = Vec::with_capacity(spec.degree);
    let mut attempts = 0;
    while zeros.len() < spec.degree {
        if attempts == MAX_ATTEMPTS {
            return Err(Error::SeparationUnattainable {
                separation: spec.zero_separation_min,
                attempts,
            });
        }
        attempts += 1;
        let z = Complex64::from_polar(rng.gen_range(lo..=hi), rng.gen_range(0.0..TAU));
        if zeros.iter().all(|w| (w - z).norm() >= spec.zero_separation_min) {
            zeros.push(z);
        }
    }
    let lead = unit_phase(rng) * spec.coeff_scale;
    Ok(ComplexPolynomial::from_roots(lead, &zeros))
}

pub fn unit_phase<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

/// Uniform on the closed unit disk, by rejection from the square.
pub fn unit_disk<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        if z.norm_sqr() <= 1.0 {
            return z;
        }
    }
}

/// `R` log-uniform on `[1, 8]`; `α, β, a` uniform on the closed disk.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R) -> ParameterSet {
    ParameterSet {
        dilation: rng.gen_range(0.0..=MAX_DILATION.ln()).exp(),
        alpha: unit_disk(rng),
        beta: unit_disk(rng),
        a: unit_disk(rng),
        k: 1.0,
        radius_grid: DEFAULT_RADIUS_GRID.to_vec(),
    }
}
