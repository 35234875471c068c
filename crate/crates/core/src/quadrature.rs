//! Boundary integration for the trace functionals.
//!
//! In one dimension the boundary of `(-r, r)` is two points and the
//! "integral" is a sum. On the circle we use composite Gauss-Legendre panels,
//! split at kinks of the integrand and geometrically graded towards them, and
//! refine by doubling every panel until two successive estimates agree.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const GAUSS_POINTS: usize = 16;
const GRADING_RATIO: f64 = 0.2;
const GRADING_LEVELS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Uniform panels per smooth piece before refinement.
    pub n_init: usize,
    /// Relative agreement required between successive refinements.
    pub tol: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { n_init: 64, tol: 1e-10, max_doublings: 16 }
    }
}

impl QuadratureConfig {
    pub fn new(n_init: usize, tol: f64, max_doublings: u32) -> Result<Self> {
        let cfg = Self { n_init, tol, max_doublings };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(64, tol, 16)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_init < 16 || !self.n_init.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "n_init = {} must be a power of two >= 16",
                self.n_init
            )));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-4) {
            return Err(Error::InvalidArgument(format!("tol = {} outside (0, 1e-4]", self.tol)));
        }
        if self.max_doublings > 24 {
            return Err(Error::InvalidArgument(format!(
                "max_doublings = {} exceeds 24",
                self.max_doublings
            )));
        }
        Ok(())
    }
}

/// Result of an integration together with its refinement error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// A function of the boundary parameter (the angle on the circle).
pub struct BoundaryIntegrand<F> {
    pub evaluator: F,
    /// Angles where the integrand is continuous but not smooth. The point
    /// `0 = 2 pi` is always treated as a kink.
    pub known_kinks: Vec<f64>,
}

impl<F: Fn(f64) -> f64> BoundaryIntegrand<F> {
    pub fn new(evaluator: F) -> Self {
        Self { evaluator, known_kinks: Vec::new() }
    }

    pub fn with_kinks(evaluator: F, known_kinks: Vec<f64>) -> Self {
        Self { evaluator, known_kinks }
    }
}

/// `int_0^{2 pi} f(phi) dphi`.
pub fn integrate_circle<F: Fn(f64) -> f64>(
    f: &BoundaryIntegrand<F>,
    cfg: &QuadratureConfig,
) -> Result<QuadEstimate> {
    let mut breaks = vec![0.0, 2.0 * PI];
    for &k in &f.known_kinks {
        let k = k.rem_euclid(2.0 * PI);
        if k.is_finite() {
            breaks.push(k);
        }
    }
    integrate_piecewise(&f.evaluator, &breaks, true, cfg)
}

/// `f(-r) + f(r)`: the boundary "integral" of `(-r, r)`.
pub fn boundary_sum_1d<F: Fn(f64) -> f64>(f: F, r: f64) -> f64 {
    f(-r) + f(r)
}

/// Integrates over `[min(breaks), max(breaks)]` with pieces split at every
/// breakpoint. With `graded`, panels shrink geometrically towards each
/// breakpoint so integrands with kinks or near-singularities there keep
/// converging fast.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    graded: bool,
    cfg: &QuadratureConfig,
) -> Result<QuadEstimate> {
    cfg.validate()?;
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|b| b.is_finite()).collect();
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * (1.0 + b.abs()));
    if pts.len() < 2 {
        return Ok(QuadEstimate { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let base = base_mesh(&pts, cfg.n_init, graded);

    let mut evaluations = 0;
    let (mut prev, _) = composite(f, &base, 0, &mut evaluations)?;
    for level in 1..=cfg.max_doublings {
        let (value, l1) = composite(f, &base, level, &mut evaluations)?;
        let error = (value - prev).abs();
        if error <= cfg.tol * value.abs().max(l1) || error <= f64::MIN_POSITIVE {
            return Ok(QuadEstimate { value, error, evaluations });
        }
        if level == cfg.max_doublings {
            return Err(Error::NonConvergence { last: value, previous: prev });
        }
        prev = value;
    }
    Err(Error::NonConvergence { last: prev, previous: prev })
}

fn base_mesh(pts: &[f64], n_init: usize, graded: bool) -> Vec<f64> {
    let mut mesh = vec![pts[0]];
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= 0.0 {
            continue;
        }
        let h = (b - a) / n_init as f64;
        if graded {
            for k in (1..=GRADING_LEVELS).rev() {
                mesh.push(a + h * GRADING_RATIO.powi(k as i32));
            }
        }
        for i in 1..n_init {
            mesh.push(a + h * i as f64);
        }
        if graded {
            for k in 1..=GRADING_LEVELS {
                mesh.push(b - h * GRADING_RATIO.powi(k as i32));
            }
        }
        mesh.push(b);
    }
    mesh
}

/// Composite Gauss sum over `base` with each panel split into `2^level`.
/// Returns the integral and the integral of `|f|`.
fn composite<F: Fn(f64) -> f64>(
    f: &F,
    base: &[f64],
    level: u32,
    evaluations: &mut usize,
) -> Result<(f64, f64)> {
    let rule = gauss_legendre();
    let splits = 1usize << level;
    let mut sum = NeumaierSum::default();
    let mut abs_sum = NeumaierSum::default();
    for w in base.windows(2) {
        let sub = (w[1] - w[0]) / splits as f64;
        for s in 0..splits {
            let a = w[0] + sub * s as f64;
            let half = 0.5 * sub;
            let mid = a + half;
            for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
                let at = mid + half * x;
                let v = f(at);
                if !v.is_finite() {
                    return Err(Error::NonFinite { at });
                }
                sum.add(wt * half * v);
                abs_sum.add(wt * half * v.abs());
            }
        }
        *evaluations += splits * GAUSS_POINTS;
    }
    Ok((sum.total(), abs_sum.total()))
}

/// Compensated summation; the result does not depend on the magnitude
/// ordering of the terms beyond the last bit.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn gauss_legendre() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(GAUSS_POINTS))
}

/// Nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
fn legendre_rule(n: usize) -> GaussRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GaussRule { nodes, weights }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Adaptive Simpson, used as an independent reference.
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
        fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
            let (flm, frm) = (f(lm), f(rm));
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            let diff = left + right - whole;
            if depth == 0 || diff.abs() <= 15.0 * tol {
                return left + right + diff / 15.0;
            }
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
        let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        rec(f, a, b, fa, fm, fb, whole, tol, 50)
    }

    #[test]
    fn rule_integrates_polynomials() {
        let rule = legendre_rule(GAUSS_POINTS);
        let sum: f64 = rule.weights.iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
        // x^30 is exact for 16 points
        let v: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(30)).sum();
        assert!((v - 2.0 / 31.0).abs() < 1e-15);
    }

    #[test]
    fn constant_and_cosine() {
        let cfg = QuadratureConfig::default();
        let one = integrate_circle(&BoundaryIntegrand::new(|_| 1.0), &cfg).unwrap();
        assert!((one.value - 2.0 * PI).abs() < 1e-13);
        let c = integrate_circle(&BoundaryIntegrand::new(f64::cos), &cfg).unwrap();
        assert!(c.value.abs() < 1e-14, "{}", c.value);
    }

    #[test]
    fn trigonometric_exactness() {
        let cfg = QuadratureConfig::default();
        for k in 1..12 {
            let s = integrate_circle(&BoundaryIntegrand::new(|p: f64| (k as f64 * p).cos()), &cfg).unwrap();
            assert!(s.value.abs() <= 1e-14, "k={k}: {}", s.value);
            let s2 = integrate_circle(&BoundaryIntegrand::new(|p: f64| (k as f64 * p).sin().powi(2)), &cfg)
                .unwrap();
            assert!((s2.value - PI).abs() <= 1e-14, "k={k}: {}", s2.value);
        }
    }

    #[test]
    fn kernel_trace_against_simpson() {
        let f = |p: f64| (-2.0 * (p / 2.0).sin()).exp();
        let cfg = QuadratureConfig::default();
        let g = integrate_circle(&BoundaryIntegrand::new(f), &cfg).unwrap();
        let reference = simpson(&f, 0.0, 2.0 * PI, 1e-12);
        assert!((g.value - reference).abs() < 1e-10, "{} vs {}", g.value, reference);
    }

    #[test]
    fn refinement_is_stable_under_tighter_tolerance() {
        let (r, t) = (1.0f64, 1.0f64);
        let f = |p: f64| (-(r * r + t * t - 2.0 * r * t * p.cos()).max(0.0).sqrt()).exp();
        let mut tol = 1e-6;
        let mut prev = integrate_circle(&BoundaryIntegrand::new(f), &QuadratureConfig::with_tol(tol).unwrap())
            .unwrap()
            .value;
        for _ in 0..6 {
            let next_tol = tol / 2.0;
            let v = integrate_circle(&BoundaryIntegrand::new(f), &QuadratureConfig::with_tol(next_tol).unwrap())
                .unwrap()
                .value;
            assert!((v - prev).abs() <= tol * v.abs());
            prev = v;
            tol = next_tol;
        }
    }

    #[test]
    fn half_range_symmetry() {
        let f = |p: f64| (-(2.0 - 1.5 * p.cos()).sqrt()).exp() * (1.0 + p.cos());
        let cfg = QuadratureConfig::default();
        let full = integrate_circle(&BoundaryIntegrand::new(f), &cfg).unwrap().value;
        let half = integrate_piecewise(&f, &[0.0, PI], true, &cfg).unwrap().value;
        assert!((full - 2.0 * half).abs() < 1e-13);
    }

    #[test]
    fn kinks_are_honoured() {
        let f = |p: f64| (p - 2.0).abs();
        let cfg = QuadratureConfig::default();
        let v = integrate_circle(&BoundaryIntegrand::with_kinks(f, vec![2.0]), &cfg).unwrap().value;
        let exact = 0.5 * 4.0 + 0.5 * (2.0 * PI - 2.0).powi(2);
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn boundary_sums() {
        assert!((boundary_sum_1d(|x: f64| (-x.abs()).exp(), 1.0) - 2.0 * (-1f64).exp()).abs() < 1e-16);
        assert_eq!(boundary_sum_1d(|_| 1.0, 3.0), 2.0);
        assert_eq!(boundary_sum_1d(|x| x, 2.5), 0.0);
    }

    #[test]
    fn non_convergence_is_reported() {
        let cfg = QuadratureConfig::new(16, 1e-12, 2).unwrap();
        let f = |p: f64| (50.0 * p * p).sin();
        let err = integrate_circle(&BoundaryIntegrand::new(f), &cfg).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(8, 1e-10, 4).is_err());
        assert!(QuadratureConfig::new(48, 1e-10, 4).is_err());
        assert!(QuadratureConfig::new(64, 1e-3, 4).is_err());
        assert!(QuadratureConfig::new(64, 1e-10, 25).is_err());
        assert!(QuadratureConfig::default().validate().is_ok());
    }
}
