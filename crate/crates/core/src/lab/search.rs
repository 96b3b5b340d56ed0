//! Randomized counterexample search: random restarts followed by
//! Nelder–Mead on a real encoding of (zeros, leading coefficient,
//! parameters, radius).

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::inequalities::{certify_on_grid, CheckConfig, CheckReport, HypothesisClass, InequalityId, Subject};
use crate::lab::generate::{MAX_DILATION, OUTER_RADIUS};
use crate::lab::nelder_mead;
use crate::operators::ParameterSet;
use crate::poly::{ComplexPolynomial, ONE};

/// Largest certification radius explored.
pub const MAX_RADIUS: f64 = 10.0;
/// Smallest `k` explored for the zeros-in-`|z| ≤ k` hypothesis.
pub const MIN_K: f64 = 0.05;
const LEAD_LOG_RANGE: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub budget: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub check: CheckConfig,
    /// Random instances drawn per restart.
    pub restart_samples: usize,
    /// Nelder–Mead evaluations per restart.
    pub local_budget: usize,
}

impl SearchConfig {
    pub fn new(budget: usize, seed: u64) -> Self {
        Self {
            budget,
            seed,
            max_degree: 8,
            check: CheckConfig::default(),
            restart_samples: 20,
            local_budget: 300,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchInstance {
    pub p: ComplexPolynomial,
    /// Dominating polynomial for pair inequalities.
    pub dominant: Option<ComplexPolynomial>,
    /// Parameters; the radius grid holds the single radius searched.
    pub params: ParameterSet,
    pub witness_z: Complex64,
}

impl SearchInstance {
    pub fn subject(&self) -> Subject<'_> {
        match &self.dominant {
            Some(f) => Subject::Pair { p: &self.p, dominant: f },
            None => Subject::Single(&self.p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub ineq: InequalityId,
    /// Most negative normalized margin (`margin / scale`) found; `+∞` if no
    /// admissible instance was evaluated.
    pub best_margin: f64,
    pub best_instance: Option<SearchInstance>,
    pub best_report: Option<CheckReport>,
    pub evaluations: usize,
    pub seed: u64,
    pub violation_found: bool,
}

impl SearchResult {
    /// Normalized margin of the stored best instance, recomputed.
    pub fn reevaluate(&self, cfg: &CheckConfig) -> Option<f64> {
        let inst = self.best_instance.as_ref()?;
        let reports = certify_on_grid(self.ineq, inst.subject(), &inst.params, cfg).ok()?;
        reports.first().map(CheckReport::normalized_margin)
    }
}

struct Uses {
    dilation: bool,
    alpha: bool,
    beta: bool,
    a: bool,
    k: bool,
}

fn uses(ineq: InequalityId) -> Uses {
    use InequalityId::*;
    let (dilation, alpha, beta, a, k) = match ineq {
        C1 | C3 | DomA => (false, false, false, false, false),
        C2 | C4 => (true, false, false, false, false),
        C5 | C6 => (true, true, false, false, false),
        S8 | S9 | S10 | S11 | L2 | L3 | L4 => (false, false, false, true, false),
        S12 | S13 => (true, true, false, true, false),
        C14 | C15 => (true, true, true, false, false),
        M1 | M3 | M5 | L5 | L6 => (true, true, true, true, false),
        M2 | M4 | M6 => (false, false, true, true, false),
        L1 => (true, false, false, false, true),
        DomB => (false, true, false, false, false),
    };
    Uses { dilation, alpha, beta, a, k }
}

/// Offsets of each group inside the search vector.
struct Layout {
    ineq: InequalityId,
    degree: usize,
    pair: Option<usize>,
    dilation: Option<usize>,
    alpha: Option<usize>,
    beta: Option<usize>,
    a: Option<usize>,
    k: Option<usize>,
    radius: usize,
    len: usize,
}

fn slot(flag: bool, width: usize, next: &mut usize) -> Option<usize> {
    flag.then(|| {
        let at = *next;
        *next += width;
        at
    })
}

fn project_disk(re: f64, im: f64) -> Complex64 {
    let z = Complex64::new(re, im);
    let m = z.norm();
    if m > 1.0 {
        z / m
    } else {
        z
    }
}

fn project_circle(re: f64, im: f64) -> Complex64 {
    let z = Complex64::new(re, im);
    let m = z.norm();
    if m > 0.0 {
        z / m
    } else {
        ONE
    }
}

impl Layout {
    fn new(ineq: InequalityId, degree: usize) -> Self {
        let u = uses(ineq);
        let mut next = 2 * degree + 2;
        let pair = slot(ineq.needs_dominant(), 5, &mut next);
        let dilation = slot(u.dilation, 1, &mut next);
        let alpha = slot(u.alpha, 2, &mut next);
        let beta = slot(u.beta, 2, &mut next);
        let a = slot(u.a, 2, &mut next);
        let k = slot(u.k, 1, &mut next);
        let radius = next;
        Self { ineq, degree, pair, dilation, alpha, beta, a, k, radius, len: radius + 1 }
    }

    fn zero_range(&self, k: f64) -> (f64, f64) {
        match self.ineq.hypothesis() {
            HypothesisClass::AnyPolynomial => (0.0, OUTER_RADIUS),
            HypothesisClass::NoZerosInOpenDisk => (1.0, OUTER_RADIUS),
            HypothesisClass::AllZerosInClosedDisk | HypothesisClass::DominatedPair => (0.0, 1.0),
            HypothesisClass::ZerosInRadiusK => (0.0, k),
        }
    }

    fn k_of(&self, x: &[f64]) -> f64 {
        self.k.map_or(1.0, |i| x[i].clamp(MIN_K, 1.0))
    }

    fn random<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        let mut x = vec![0.0; self.len];
        if let Some(i) = self.k {
            x[i] = rng.gen_range(MIN_K..=1.0);
        }
        let (lo, hi) = self.zero_range(self.k_of(&x));
        for j in 0..self.degree {
            x[2 * j] = rng.gen_range(lo..=hi);
            x[2 * j + 1] = rng.gen_range(0.0..TAU);
        }
        x[2 * self.degree] = rng.gen_range(-LEAD_LOG_RANGE..=LEAD_LOG_RANGE);
        x[2 * self.degree + 1] = rng.gen_range(0.0..TAU);
        let mut disk = |x: &mut [f64], at: usize| loop {
            let (re, im) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            if re * re + im * im <= 1.0 {
                x[at] = re;
                x[at + 1] = im;
                break;
            }
        };
        if let Some(i) = self.pair {
            disk(&mut x, i + 1);
            disk(&mut x, i + 3);
        }
        for at in [self.alpha, self.beta, self.a].into_iter().flatten() {
            disk(&mut x, at);
        }
        if let Some(i) = self.pair {
            x[i] = rng.gen_range(0.0..=self.degree as f64);
        }
        if let Some(i) = self.dilation {
            x[i] = rng.gen_range(0.0..=MAX_DILATION.ln());
        }
        x[self.radius] = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..=MAX_RADIUS.ln()) };
        x
    }

    fn decode(&self, x: &[f64]) -> SearchInstance {
        let k = self.k_of(x);
        let (lo, hi) = self.zero_range(k);
        let zeros: Vec<Complex64> = (0..self.degree)
            .map(|j| Complex64::from_polar(x[2 * j].clamp(lo, hi), x[2 * j + 1]))
            .collect();
        let n = 2 * self.degree;
        let lead = Complex64::from_polar(x[n].clamp(-LEAD_LOG_RANGE, LEAD_LOG_RANGE).exp(), x[n + 1]);
        let pick = |slot: Option<usize>| slot.map_or(Complex64::new(0.0, 0.0), |i| project_disk(x[i], x[i + 1]));
        let a = match self.a {
            Some(i) if self.ineq == InequalityId::L2 => project_circle(x[i], x[i + 1]),
            other => pick(other),
        };
        let radius = x[self.radius].clamp(0.0, MAX_RADIUS.ln()).exp();
        let params = ParameterSet {
            dilation: self.dilation.map_or(1.0, |i| x[i].clamp(0.0, MAX_DILATION.ln()).exp()),
            alpha: pick(self.alpha),
            beta: pick(self.beta),
            a,
            k,
            radius_grid: vec![radius],
        };
        let (p, dominant) = match self.pair {
            None => (ComplexPolynomial::from_roots(lead, &zeros), None),
            Some(i) => {
                // P = λ₁F + λ₂·F_A·F_B*, with F = F_A·F_B; |F_B*| = |F_B| on the
                // unit circle, so |P| ≤ (|λ₁| + |λ₂|)|F| ≤ |F| there.
                let split = x[i].clamp(0.0, self.degree as f64).round() as usize;
                let f = ComplexPolynomial::from_roots(lead, &zeros);
                let fa = ComplexPolynomial::from_roots(lead, &zeros[..split]);
                let fb = ComplexPolynomial::from_roots(ONE, &zeros[split..]);
                let fb_star = fb.conjugate_reciprocal(self.degree - split).expect("degree matches");
                let (mut l1, mut l2) = (project_disk(x[i + 1], x[i + 2]), project_disk(x[i + 3], x[i + 4]));
                let total = l1.norm() + l2.norm();
                if total > 1.0 {
                    l1 /= total;
                    l2 /= total;
                }
                let p = crate::poly::linear_combine(&[(l1, &f), (l2, &fa.mul(&fb_star))]);
                (p, Some(f))
            }
        };
        SearchInstance { p, dominant, params, witness_z: Complex64::new(radius, 0.0) }
    }
}

struct Best {
    value: f64,
    instance: Option<SearchInstance>,
    report: Option<CheckReport>,
}

fn objective(layout: &Layout, x: &[f64], cfg: &CheckConfig, best: &mut Best) -> f64 {
    let mut inst = layout.decode(x);
    let Ok(reports) = certify_on_grid(layout.ineq, inst.subject(), &inst.params, cfg) else {
        return f64::INFINITY;
    };
    let report = &reports[0];
    if !report.hypothesis_ok || !report.margin.is_finite() {
        return f64::INFINITY;
    }
    let value = report.normalized_margin();
    if value < best.value {
        inst.witness_z = report.witness_z;
        best.value = value;
        best.instance = Some(inst);
        best.report = Some(report.clone());
    }
    value
}

/// [`violation_search_with`] at the default configuration.
pub fn violation_search(ineq: InequalityId, budget: usize, seed: u64) -> SearchResult {
    violation_search_with(ineq, &SearchConfig::new(budget, seed))
}

/// Minimizes the normalized margin of `ineq` over admissible instances.
/// Each restart draws its degree and instances from its own stream of the
/// master seed.
pub fn violation_search_with(ineq: InequalityId, cfg: &SearchConfig) -> SearchResult {
    let mut best = Best { value: f64::INFINITY, instance: None, report: None };
    let mut evaluations = 0;
    let mut round = 0u64;
    let max_degree = cfg.max_degree.max(1);
    while evaluations < cfg.budget {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(round);
        round += 1;
        let layout = Layout::new(ineq, rng.gen_range(1..=max_degree));
        let draws = cfg.restart_samples.max(1).min(cfg.budget - evaluations);
        let mut start: Option<(f64, Vec<f64>)> = None;
        for _ in 0..draws {
            let x = layout.random(&mut rng);
            let v = objective(&layout, &x, &cfg.check, &mut best);
            evaluations += 1;
            if v.is_finite() && start.as_ref().is_none_or(|(s, _)| v < *s) {
                start = Some((v, x));
            }
        }
        let local = cfg.local_budget.min(cfg.budget - evaluations);
        if let (Some((_, x0)), true) = (start, local > 0) {
            let m = nelder_mead::minimize(|x| objective(&layout, x, &cfg.check, &mut best), &x0, 0.1, local);
            evaluations += m.evaluations;
        }
    }
    let violation_found = best.report.as_ref().is_some_and(CheckReport::is_violation);
    SearchResult {
        ineq,
        best_margin: best.value,
        best_instance: best.instance,
        best_report: best.report,
        evaluations,
        seed: cfg.seed,
        violation_found,
    }
}
