//! Root location: Aberth–Ehrlich simultaneous iteration plus an
//! argument-principle zero counter used as an independent cross-check.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{ComplexPolynomial, ZERO};

/// Half-width of the band around a circle inside which a root counts as
/// lying on it.
pub const TAU_CIRCLE: f64 = 1e-9;

/// Largest normalized residual `max |P(root)| / Σ|c_j|` of an accepted report.
pub const MAX_RESIDUAL: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;
const RESTARTS: usize = 4;
const UPDATE_TOL: f64 = 1e-13;
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;
/// Roots closer than this (relative) are a cluster and reported at their mean.
const CLUSTER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroLocationReport {
    pub roots: Vec<Complex64>,
    pub max_modulus: f64,
    pub min_modulus: f64,
    pub count_inside: usize,
    pub count_on: usize,
    pub count_outside: usize,
    pub residual: f64,
}

impl ZeroLocationReport {
    /// No root strictly inside the circle (roots on it are allowed).
    pub fn none_inside(&self) -> bool {
        self.count_inside == 0
    }

    /// Every root inside or on the circle.
    pub fn none_outside(&self) -> bool {
        self.count_outside == 0
    }
}

/// Normalized residual of a set of approximate roots.
pub fn residual(p: &ComplexPolynomial, roots: &[Complex64]) -> f64 {
    let (b, _) = p.coeff_norm_bounds();
    if b == 0.0 {
        return 0.0;
    }
    roots.iter().map(|&z| p.value_at(z).norm()).fold(0.0, f64::max) / b
}

pub fn find_roots(p: &ComplexPolynomial) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::domain("the zero polynomial has no root set"));
    }
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }

    // exact zeros at the origin are split off; Aberth converges only
    // linearly on them
    let low = p.coeffs().iter().take_while(|c| **c == ZERO).count();
    let mut roots = vec![ZERO; low];
    let reduced = ComplexPolynomial::new(p.coeffs()[low..].to_vec())?;
    if reduced.degree() == 0 {
        return Ok(roots);
    }

    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for attempt in 0..RESTARTS {
        let (found, converged) = aberth(&reduced, attempt);
        let found = merge_clusters(polish(&reduced, found));
        let res = residual(&reduced, &found);
        if converged && res <= MAX_RESIDUAL {
            roots.extend(found);
            return Ok(roots);
        }
        if best.as_ref().is_none_or(|(r, _)| res < *r) {
            best = Some((res, found));
        }
    }
    let (res, found) = best.expect("at least one attempt ran");
    // clustered roots converge slowly; a small residual still certifies them
    if res <= MAX_RESIDUAL {
        roots.extend(found);
        return Ok(roots);
    }
    Err(Error::UnresolvedRoots { residual: res })
}

fn initial_radius(p: &ComplexPolynomial, attempt: usize) -> f64 {
    let n = p.degree() as f64;
    let ratio = p.coeff(0).norm() / p.leading().norm();
    let mut radius = ratio.powf(1.0 / n);
    if !radius.is_finite() || radius <= 0.0 {
        radius = 1.0;
    }
    radius * [1.0, 1.3, 0.7, 2.1][attempt % 4]
}

fn aberth(p: &ComplexPolynomial, attempt: usize) -> (Vec<Complex64>, bool) {
    let n = p.degree();
    let radius = initial_radius(p, attempt);
    let offset = 0.4 + 0.9 * attempt as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, offset + k as f64 * GOLDEN_ANGLE))
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut worst = 0.0f64;
        for k in 0..n {
            let (value, slope) = p.value_and_derivative(z[k]);
            if value == ZERO {
                continue;
            }
            let newton = if slope == ZERO {
                // nudge off a critical point
                Complex64::from_polar(1e-3 * (1.0 + z[k].norm()), k as f64)
            } else {
                value / slope
            };
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d == ZERO {
                        ZERO
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom == ZERO || !denom.is_finite() {
                newton
            } else {
                newton / denom
            };
            if !step.is_finite() {
                continue;
            }
            z[k] -= step;
            worst = worst.max(step.norm() / (1.0 + z[k].norm()));
        }
        if worst < UPDATE_TOL {
            return (z, true);
        }
    }
    (z, false)
}

/// A few Newton steps per root, kept only while the residual decreases.
fn polish(p: &ComplexPolynomial, mut roots: Vec<Complex64>) -> Vec<Complex64> {
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let (value, slope) = p.value_and_derivative(*z);
            if value == ZERO || slope == ZERO {
                break;
            }
            let candidate = *z - value / slope;
            if !candidate.is_finite() || p.value_at(candidate).norm() >= value.norm() {
                break;
            }
            *z = candidate;
        }
    }
    roots
}

/// Replaces every cluster of nearly coincident roots by its centroid; the
/// mean of a cluster is far better conditioned than its members.
fn merge_clusters(mut roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = 1.0 + roots[i].norm().max(roots[j].norm());
            if (roots[i] - roots[j]).norm() <= CLUSTER_TOL * scale {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut sums = vec![(ZERO, 0usize); n];
    for i in 0..n {
        let root = find(&mut label, i);
        sums[root].0 += roots[i];
        sums[root].1 += 1;
    }
    for i in 0..n {
        let root = find(&mut label, i);
        let (s, count) = sums[root];
        if count > 1 {
            roots[i] = s / count as f64;
        }
    }
    roots
}

/// Counts roots against the circle `|z| = k` with the [`TAU_CIRCLE`] band.
pub fn classify_zero_location(p: &ComplexPolynomial, k: f64) -> Result<ZeroLocationReport> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::domain(format!("classification radius must be positive, got {k}")));
    }
    let roots = find_roots(p)?;
    let residual = residual(p, &roots);
    let mut report = ZeroLocationReport {
        max_modulus: roots.iter().map(|z| z.norm()).fold(0.0, f64::max),
        min_modulus: roots.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min),
        count_inside: 0,
        count_on: 0,
        count_outside: 0,
        residual,
        roots,
    };
    if report.roots.is_empty() {
        report.min_modulus = 0.0;
    }
    for z in &report.roots {
        let m = z.norm();
        if m < k - TAU_CIRCLE {
            report.count_inside += 1;
        } else if m > k + TAU_CIRCLE {
            report.count_outside += 1;
        } else {
            report.count_on += 1;
        }
    }
    Ok(report)
}

fn winding_at(p: &ComplexPolynomial, r: f64, samples: usize) -> (f64, f64) {
    let mut total = 0.0;
    let mut max_step = 0.0f64;
    let mut prev = p.value_at(Complex64::new(r, 0.0));
    for i in 1..=samples {
        let theta = TAU * i as f64 / samples as f64;
        let cur = p.value_at(Complex64::from_polar(r, theta));
        let step = if prev == ZERO || cur == ZERO {
            PI
        } else {
            (cur / prev).arg()
        };
        total += step;
        max_step = max_step.max(step.abs());
        prev = cur;
    }
    (total / TAU, max_step)
}

/// Winding number of `p` around the origin along `|z| = r`.
pub fn count_zeros_argument_principle(p: &ComplexPolynomial, r: f64, samples: usize) -> Result<i64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("contour radius must be positive, got {r}")));
    }
    if p.is_zero() {
        return Err(Error::domain("the zero polynomial has no winding number"));
    }
    let mut n = samples.max(8);
    let mut previous: Option<i64> = None;
    let mut last_step = 0.0;
    for _ in 0..=4 {
        let (turns, max_step) = winding_at(p, r, n);
        last_step = max_step;
        if max_step < PI / 2.0 {
            let count = turns.round() as i64;
            if previous == Some(count) {
                return Ok(count);
            }
            previous = Some(count);
        } else {
            previous = None;
        }
        n *= 2;
    }
    Err(Error::NearCircleZero { radius: r, max_step: last_step })
}
