//! Derived quantities and verification routines built on the solver:
//! norm curves and their scaling slope, finite-point Power Functions, a
//! quadrature oracle for the `H^1(R)` norm of the exponential kernel, and
//! optimality checks against perturbed competitors.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bump::{solve_bump, translate_1d, BumpProblem, OptimalBump};
use crate::error::{Error, Result};
use crate::kernels::{kernel_eval, wendland_phi31, wendland_phi31_deriv, KernelSpec};
use crate::quadrature::{integrate_piecewise, QuadratureConfig};

/// Seed used by the perturbation and reproduction suites unless overridden.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Quadrature settings for the one-dimensional norm oracle.
pub fn oracle_quadrature() -> QuadratureConfig {
    QuadratureConfig { n_init: 16, tol: 1e-13, max_doublings: 20 }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn exponential_1d() -> Result<KernelSpec> {
    KernelSpec::new(1, 1.0)
}

fn require_exponential_1d(spec: &KernelSpec) -> Result<()> {
    if spec.d() != 1 || spec.m() != 1.0 {
        return Err(Error::InvalidArgument(format!(
            "only available for d = 1, m = 1 (got d = {}, m = {})",
            spec.d(),
            spec.m()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// beta curves

/// `beta(r)` over an increasing grid of radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaCurve {
    pub spec: KernelSpec,
    pub rs: Vec<f64>,
    /// `None` where the solver failed; see `failures`.
    pub betas: Vec<Option<f64>>,
    pub failures: Vec<(usize, String)>,
    /// Least-squares slope of `log beta` against `log r` on the five
    /// smallest radii with `r <= 0.1`.
    pub slope: Option<f64>,
}

impl BetaCurve {
    /// The exponent `d/2 - m` of the scaling law.
    pub fn expected_slope(&self) -> f64 {
        self.spec.d() as f64 / 2.0 - self.spec.m()
    }

    /// Indices with `beta^2 < 1`.
    pub fn lower_bound_violations(&self) -> Vec<usize> {
        self.betas
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.filter(|b| !(b * b >= 1.0)).map(|_| i))
            .collect()
    }

    /// Indices `i` where `beta` fails to decrease from the previous solved entry.
    pub fn monotone_violations(&self) -> Vec<usize> {
        let mut last: Option<f64> = None;
        let mut out = Vec::new();
        for (i, b) in self.betas.iter().enumerate() {
            if let Some(b) = *b {
                if let Some(prev) = last {
                    if !(b < prev) {
                        out.push(i);
                    }
                }
                last = Some(b);
            }
        }
        out
    }
}

pub fn beta_curve(spec: &KernelSpec, rs: &[f64], quad: &QuadratureConfig) -> Result<BetaCurve> {
    if rs.is_empty() || rs.iter().any(|&r| !(r > 0.0) || !r.is_finite()) {
        return Err(Error::InvalidArgument("radii must be positive and finite".into()));
    }
    if rs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("radii must be strictly increasing".into()));
    }
    quad.validate()?;
    let mut betas = Vec::with_capacity(rs.len());
    let mut failures = Vec::new();
    for (i, &r) in rs.iter().enumerate() {
        match BumpProblem::new(*spec, r, *quad).and_then(|p| solve_bump(&p)) {
            Ok(b) => betas.push(Some(b.beta())),
            Err(e) => {
                betas.push(None);
                failures.push((i, e.to_string()));
            }
        }
    }
    let small: Vec<(f64, f64)> = rs
        .iter()
        .zip(&betas)
        .filter_map(|(&r, b)| b.filter(|_| r <= 0.1).map(|b| (r, b)))
        .take(5)
        .collect();
    let slope = fit_loglog_slope(&small);
    Ok(BetaCurve { spec: *spec, rs: rs.to_vec(), betas, failures, slope })
}

/// Ordinary least-squares slope of `ln y` against `ln x`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return None;
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

// ---------------------------------------------------------------------------
// one-dimensional Sobolev norm oracle

/// A piecewise smooth function on the line, with its derivative and the
/// points where either may fail to be smooth.
pub struct Function1d<'a> {
    value: Box<dyn Fn(f64) -> f64 + 'a>,
    derivative: Box<dyn Fn(f64) -> f64 + 'a>,
    support: (f64, f64),
    kinks: Vec<f64>,
}

impl<'a> Function1d<'a> {
    /// `support` may be infinite on either side as long as the function is
    /// only paired with compactly supported partners.
    pub fn new(
        value: impl Fn(f64) -> f64 + 'a,
        derivative: impl Fn(f64) -> f64 + 'a,
        support: (f64, f64),
        kinks: Vec<f64>,
    ) -> Self {
        Self { value: Box::new(value), derivative: Box::new(derivative), support, kinks }
    }

    pub fn zero() -> Self {
        Self::new(|_| 0.0, |_| 0.0, (0.0, 0.0), Vec::new())
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (self.derivative)(x)
    }

    /// `K(x, .) = exp(-|x - .|)`, not compactly supported.
    pub fn kernel_translate(x: f64) -> Self {
        Self::new(
            move |y| (-(y - x).abs()).exp(),
            move |y| -sign(y - x) * (-(y - x).abs()).exp(),
            (f64::NEG_INFINITY, f64::INFINITY),
            vec![x],
        )
    }

    /// `amplitude * phi_{3,1}(|. - center|)` with support radius `radius`.
    pub fn wendland(center: f64, radius: f64, amplitude: f64) -> Self {
        Self::new(
            move |y| amplitude * wendland_phi31((y - center).abs(), radius).unwrap_or(f64::NAN),
            move |y| {
                amplitude * sign(y - center) * wendland_phi31_deriv((y - center).abs(), radius).unwrap_or(f64::NAN)
            },
            (center - radius, center + radius),
            vec![center],
        )
    }

    /// The even extension of a one-dimensional bump, `b_r^*(|x|)`.
    pub fn from_bump(bump: &'a OptimalBump) -> Self {
        let r = bump.r();
        Self::new(
            move |y| bump.eval(y).unwrap_or(f64::NAN),
            move |y| sign(y) * bump.derivative(y.abs(), 1).unwrap_or(f64::NAN),
            (-r, r),
            vec![0.0],
        )
    }

    /// `f(. / scale)`.
    pub fn scaled(self, scale: f64) -> Function1d<'a> {
        let (a, b) = self.support;
        let kinks = self.kinks.iter().map(|k| k * scale).collect();
        let Function1d { value, derivative, .. } = self;
        Function1d::new(
            move |y| value(y / scale),
            move |y| derivative(y / scale) / scale,
            (a * scale, b * scale),
            kinks,
        )
    }

    /// `self + eps * other`.
    pub fn plus(self, eps: f64, other: Function1d<'a>) -> Function1d<'a> {
        let support = (self.support.0.min(other.support.0), self.support.1.max(other.support.1));
        let mut kinks = self.kinks.clone();
        kinks.extend(other.kinks.iter().copied());
        kinks.extend([other.support.0, other.support.1]);
        let (v1, d1, v2, d2) = (self.value, self.derivative, other.value, other.derivative);
        Function1d::new(move |y| v1(y) + eps * v2(y), move |y| d1(y) + eps * d2(y), support, kinks)
    }
}

/// `(f, g)_K = (1/2) int (f g + f' g')`, the inner product reproduced by
/// `exp(-|x - y|)`.
pub fn sobolev_inner_1d(f: &Function1d, g: &Function1d, cfg: &QuadratureConfig) -> Result<f64> {
    let lo = f.support.0.max(g.support.0);
    let hi = f.support.1.min(g.support.1);
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidArgument("inner product needs a compact support".into()));
    }
    if hi <= lo {
        return Ok(0.0);
    }
    let mut breaks = vec![lo, hi];
    breaks.extend(
        f.kinks
            .iter()
            .chain(&g.kinks)
            .chain([&f.support.0, &f.support.1, &g.support.0, &g.support.1])
            .copied()
            .filter(|&k| k > lo && k < hi),
    );
    let integrand = |y: f64| f.value(y) * g.value(y) + f.derivative(y) * g.derivative(y);
    Ok(0.5 * integrate_piecewise(&integrand, &breaks, false, cfg)?.value)
}

/// `||f||_K` for the exponential kernel on the line.
pub fn sobolev_norm_1d(f: &Function1d, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(sobolev_inner_1d(f, f, cfg)?.max(0.0).sqrt())
}

/// `|(f, K(x, .))_K - f(x)|`.
pub fn reproduction_check_1d(f: &Function1d, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let k = Function1d::kernel_translate(x);
    Ok((sobolev_inner_1d(f, &k, cfg)? - f.value(x)).abs())
}

/// Random sums of one to three Wendland bumps inside `[-2, 2]`.
pub fn seeded_test_functions(n: usize, seed: u64) -> Vec<Function1d<'static>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let terms = rng.gen_range(1..=3);
            let mut f = Function1d::zero();
            for _ in 0..terms {
                let center = rng.gen_range(-1.0..1.0);
                let radius = rng.gen_range(0.2..1.0);
                let amp = rng.gen_range(-2.0..2.0);
                f = f.plus(1.0, Function1d::wendland(center, radius, amp));
            }
            f
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Power Functions

/// Finite set of pairwise distinct data sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<Vec<f64>>,
}

impl PointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("point set is empty".into()));
        }
        let d = points[0].len();
        for p in &points {
            if p.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: p.len() });
            }
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].iter().any(|q| q == p) {
                return Err(Error::InvalidArgument(format!("duplicate point {p:?}")));
            }
        }
        Ok(Self { points })
    }

    pub fn from_1d(xs: &[f64]) -> Result<Self> {
        Self::new(xs.iter().map(|&x| vec![x]).collect())
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `dist(x, X)`.
    pub fn distance(&self, x: &[f64]) -> f64 {
        self.points
            .iter()
            .map(|p| p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
            .fold(f64::INFINITY, f64::min)
    }
}

fn gram(spec: &KernelSpec, set: &PointSet) -> Result<DMatrix<f64>> {
    let n = set.len();
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = kernel_eval(spec, &set.points[i], &set.points[j])?;
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    Ok(a)
}

/// `P_X(x) = sqrt(K(x, x) - k(x)^T A^{-1} k(x))`.
pub fn power_function(spec: &KernelSpec, set: &PointSet, x: &[f64]) -> Result<f64> {
    let chol = gram(spec, set)?.cholesky().ok_or(Error::SingularGram)?;
    let k = DVector::from_iterator(
        set.len(),
        set.points.iter().map(|p| kernel_eval(spec, p, x)).collect::<Result<Vec<_>>>()?,
    );
    let v = chol.l().solve_lower_triangular(&k).ok_or(Error::SingularGram)?;
    let p2 = kernel_eval(spec, x, x)? - v.norm_squared();
    Ok(p2.max(0.0).sqrt())
}

/// Kernel interpolant `s(x) = sum_i a_i K(x_i, x)` of data on a point set.
#[derive(Debug, Clone)]
pub struct Interpolant {
    spec: KernelSpec,
    sites: PointSet,
    coefficients: DVector<f64>,
}

impl Interpolant {
    pub fn new(spec: &KernelSpec, sites: &PointSet, values: &[f64]) -> Result<Self> {
        if values.len() != sites.len() {
            return Err(Error::DimensionMismatch { expected: sites.len(), got: values.len() });
        }
        let chol = gram(spec, sites)?.cholesky().ok_or(Error::SingularGram)?;
        let coefficients = chol.solve(&DVector::from_column_slice(values));
        Ok(Self { spec: *spec, sites: sites.clone(), coefficients })
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        let mut s = 0.0;
        for (p, c) in self.sites.points.iter().zip(self.coefficients.iter()) {
            s += c * kernel_eval(&self.spec, p, x)?;
        }
        Ok(s)
    }

    /// `||s||_K^2 = a^T A a`.
    pub fn native_norm(&self) -> Result<f64> {
        let a = gram(&self.spec, &self.sites)?;
        Ok(self.coefficients.dot(&(a * &self.coefficients)).max(0.0).sqrt())
    }
}

/// Interpolation error at `x` of `f = sum_i a_i K(y_i, .)` against the bound
/// `P_X(x) ||f||_K`. Returns `(error, bound)`.
pub fn interpolation_error_bound(
    spec: &KernelSpec,
    centers: &PointSet,
    coefficients: &[f64],
    sites: &PointSet,
    x: &[f64],
) -> Result<(f64, f64)> {
    // the function itself, represented as an interpolant on its centers
    let a = gram(spec, centers)?;
    let coeffs = DVector::from_column_slice(coefficients);
    let values_at_centers = &a * &coeffs;
    let f = Interpolant::new(spec, centers, values_at_centers.as_slice())?;
    let data = sites.points.iter().map(|p| f.eval(p)).collect::<Result<Vec<_>>>()?;
    let s = Interpolant::new(spec, sites, &data)?;
    let error = (f.eval(x)? - s.eval(x)?).abs();
    let bound = power_function(spec, sites, x)? * f.native_norm()?;
    Ok((error, bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    /// `P_{{-r, r}}(0)`.
    pub power: f64,
    pub beta: f64,
    /// `power * beta`; equals 1.
    pub product: f64,
}

/// Power Function of `{-r, r}` at the origin times `beta(r)` (1D, `m = 1`).
pub fn uncertainty_check(spec: &KernelSpec, r: f64, quad: &QuadratureConfig) -> Result<UncertaintyReport> {
    require_exponential_1d(spec)?;
    let power = power_function(spec, &PointSet::from_1d(&[-r, r])?, &[0.0])?;
    let beta = solve_bump(&BumpProblem::new(*spec, r, *quad)?)?.beta();
    Ok(UncertaintyReport { power, beta, product: power * beta })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub power: f64,
    pub inverse_beta: f64,
    pub holds: bool,
}

/// Compares `P_X(x)` with `1 / beta(r_b)` for a bump radius that keeps the
/// bump around `x` away from every data site.
pub fn lower_bound_check(
    spec: &KernelSpec,
    set: &PointSet,
    x: &[f64],
    r_b: f64,
    quad: &QuadratureConfig,
) -> Result<LowerBoundReport> {
    let dist = set.distance(x);
    if !(r_b > 0.0 && r_b <= dist) {
        return Err(Error::InvalidArgument(format!(
            "bump radius {r_b} must lie in (0, dist(x, X) = {dist}]"
        )));
    }
    let power = power_function(spec, set, x)?;
    let inverse_beta = 1.0 / solve_bump(&BumpProblem::new(*spec, r_b, *quad)?)?.beta();
    Ok(LowerBoundReport { power, inverse_beta, holds: power >= inverse_beta - 1e-12 })
}

// ---------------------------------------------------------------------------
// comparisons against non-optimal bumps

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledComparison {
    pub r: f64,
    /// `||b_1^*(. / r)||_K`.
    pub norm_scaled: f64,
    /// `beta(r)`.
    pub norm_optimal: f64,
    pub ratio: f64,
    /// `max_t |b_1^*(t / r) - b_r^*(t)|`.
    pub max_profile_gap: f64,
}

pub fn scaled_bump_compare(spec: &KernelSpec, r: f64, quad: &QuadratureConfig) -> Result<ScaledComparison> {
    require_exponential_1d(spec)?;
    let unit = solve_bump(&BumpProblem::new(*spec, 1.0, *quad)?)?;
    let optimal = solve_bump(&BumpProblem::new(*spec, r, *quad)?)?;
    let scaled = Function1d::from_bump(&unit).scaled(r);
    let norm_scaled = sobolev_norm_1d(&scaled, &oracle_quadrature())?;
    let norm_optimal = optimal.beta();
    let mut gap: f64 = 0.0;
    let n = 2000;
    for i in 0..=n {
        let t = r * i as f64 / n as f64;
        gap = gap.max((unit.eval(t / r)? - optimal.eval(t)?).abs());
    }
    Ok(ScaledComparison { r, norm_scaled, norm_optimal, ratio: norm_scaled / norm_optimal, max_profile_gap: gap })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WendlandComparison {
    pub r: f64,
    pub wendland_norm: f64,
    pub beta: f64,
}

/// `||phi_{3,1}(|.|, r)||_K` in 1D next to `beta(r)`.
pub fn wendland_norm_compare(r: f64, quad: &QuadratureConfig) -> Result<WendlandComparison> {
    let spec = exponential_1d()?;
    let beta = solve_bump(&BumpProblem::new(spec, r, *quad)?)?.beta();
    let w = Function1d::wendland(0.0, r, 1.0);
    let wendland_norm = sobolev_norm_1d(&w, &oracle_quadrature())?;
    Ok(WendlandComparison { r, wendland_norm, beta })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationTrial {
    pub center: f64,
    pub support: f64,
    pub epsilon: f64,
    /// `||b_r^* + eps w||_K - beta(r)`.
    pub excess: f64,
    /// Value at zero of the competitor renormalized to unit norm, minus `1 / beta(r)`.
    pub value_excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationReport {
    pub r: f64,
    pub seed: u64,
    pub beta: f64,
    pub trials: Vec<PerturbationTrial>,
    pub min_excess: f64,
    pub max_value_excess: f64,
}

/// Norm excess of the admissible competitor `b_r^* + eps (w - w(0) b_r^*)`
/// where `w` is a Wendland bump centered at `center` with radius `support`.
pub fn perturbation_excess(
    bump: &OptimalBump,
    center: f64,
    support: f64,
    epsilon: f64,
) -> Result<PerturbationTrial> {
    require_exponential_1d(bump.problem().spec())?;
    let r = bump.r();
    if !(support > 0.0 && center.abs() + support <= r * (1.0 + 1e-12)) {
        return Err(Error::InvalidArgument(format!(
            "perturbation [{}, {}] leaves [-{r}, {r}]",
            center - support,
            center + support
        )));
    }
    let w0 = wendland_phi31(center.abs(), support)?;
    let correction = Function1d::wendland(center, support, 1.0).plus(-w0, Function1d::from_bump(bump));
    let competitor = Function1d::from_bump(bump).plus(epsilon, correction);
    let norm = sobolev_norm_1d(&competitor, &oracle_quadrature())?;
    let beta = bump.beta();
    let value_at_zero = competitor.value(0.0);
    Ok(PerturbationTrial {
        center,
        support,
        epsilon,
        excess: norm - beta,
        value_excess: value_at_zero / norm - 1.0 / beta,
    })
}

/// Seeded random perturbations of `b_r^*` in 1D with the exponential kernel.
pub fn perturbation_optimality(
    r: f64,
    n_trials: usize,
    seed: u64,
    quad: &QuadratureConfig,
) -> Result<PerturbationReport> {
    let bump = solve_bump(&BumpProblem::new(exponential_1d()?, r, *quad)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials = Vec::with_capacity(n_trials);
    for _ in 0..n_trials {
        let center = rng.gen_range(-0.9 * r..0.9 * r);
        let support = rng.gen_range(0.05..1.0) * (r - center.abs());
        let epsilon = rng.gen_range(-0.5..0.5);
        trials.push(perturbation_excess(&bump, center, support, epsilon)?);
    }
    let min_excess = trials.iter().map(|t| t.excess).fold(f64::INFINITY, f64::min);
    let max_value_excess = trials.iter().map(|t| t.value_excess).fold(f64::NEG_INFINITY, f64::max);
    Ok(PerturbationReport { r, seed, beta: bump.beta(), trials, min_excess, max_value_excess })
}

/// `|(v, g_{r,x})_K - v(x)|` for the 1D zero-trace representer.
pub fn representer_check_1d(v: &Function1d, r: f64, x: f64) -> Result<f64> {
    let g = translate_1d(r, x)?;
    let gf = Function1d::new(move |y| g.eval(y), move |y| g.derivative(y), (-r, r), vec![x]);
    Ok((sobolev_inner_1d(v, &gf, &oracle_quadrature())? - v.value(x)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn norm_oracle_on_known_functions() {
        let cfg = oracle_quadrature();
        let b1 = Function1d::new(
            |x: f64| (1.0 - x.abs()).sinh() / 1f64.sinh(),
            |x: f64| -sign(x) * (1.0 - x.abs()).cosh() / 1f64.sinh(),
            (-1.0, 1.0),
            vec![0.0],
        );
        let n = sobolev_norm_1d(&b1, &cfg).unwrap();
        assert!((n - (1.0 / 1f64.tanh()).sqrt()).abs() < 1e-13);

        let k = Function1d::new(
            |x: f64| (-x.abs()).exp(),
            |x: f64| -sign(x) * (-x.abs()).exp(),
            (-40.0, 40.0),
            vec![0.0],
        );
        assert!((sobolev_norm_1d(&k, &cfg).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!(sobolev_norm_1d(&Function1d::zero(), &cfg).unwrap(), 0.0);
    }

    #[test]
    fn reproduction() {
        let cfg = oracle_quadrature();
        let w = Function1d::wendland(0.0, 1.0, 1.0);
        assert!(reproduction_check_1d(&w, 0.3, &cfg).unwrap() <= 1e-8);
        let spec = exponential_1d().unwrap();
        let b = solve_bump(&BumpProblem::new(spec, 1.0, quad()).unwrap()).unwrap();
        assert!(reproduction_check_1d(&Function1d::from_bump(&b), 0.0, &cfg).unwrap() <= 1e-8);
        assert_eq!(reproduction_check_1d(&Function1d::zero(), 0.4, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn power_function_cases() {
        let spec = exponential_1d().unwrap();
        let set = PointSet::from_1d(&[-0.5, 0.3, 1.0]).unwrap();
        assert!(power_function(&spec, &set, &[0.3]).unwrap() < 1e-7);
        assert_eq!(power_function(&spec, &PointSet::from_1d(&[0.0]).unwrap(), &[0.0]).unwrap(), 0.0);
        for r in [0.2, 1.0, 3.0] {
            let p = power_function(&spec, &PointSet::from_1d(&[-r, r]).unwrap(), &[0.0]).unwrap();
            assert!((p - r.tanh().sqrt()).abs() < 1e-14);
        }
        assert!(PointSet::from_1d(&[1.0, 1.0]).is_err());
    }

    #[test]
    fn uncertainty_identity() {
        let spec = exponential_1d().unwrap();
        for r in [0.01, 1.0, 10.0] {
            let rep = uncertainty_check(&spec, r, &quad()).unwrap();
            assert!((rep.product - 1.0).abs() < 1e-10, "r={r}: {}", rep.product);
        }
        assert!(uncertainty_check(&KernelSpec::new(2, 1.5).unwrap(), 1.0, &quad()).is_err());
    }

    #[test]
    fn lower_bounds() {
        let spec = exponential_1d().unwrap();
        let x = PointSet::from_1d(&[-1.0, 1.0]).unwrap();
        let eq = lower_bound_check(&spec, &x, &[0.0], 1.0, &quad()).unwrap();
        assert!((eq.power - eq.inverse_beta).abs() < 1e-10 && eq.holds);
        let strict = lower_bound_check(&spec, &x, &[0.0], 0.5, &quad()).unwrap();
        assert!(strict.power > strict.inverse_beta);
        let x4 = PointSet::from_1d(&[-2.0, -1.0, 1.0, 2.0]).unwrap();
        let more = lower_bound_check(&spec, &x4, &[0.0], 1.0, &quad()).unwrap();
        assert!((more.power - eq.power).abs() < 1e-12 && more.holds);
        assert!(lower_bound_check(&spec, &x, &[0.0], 1.5, &quad()).is_err());
    }

    #[test]
    fn scaled_comparison() {
        let spec = exponential_1d().unwrap();
        let same = scaled_bump_compare(&spec, 1.0, &quad()).unwrap();
        assert!((same.norm_scaled - same.norm_optimal).abs() < 1e-12);
        assert!(same.max_profile_gap < 1e-15);
        let half = scaled_bump_compare(&spec, 0.5, &quad()).unwrap();
        assert!(half.norm_scaled >= (1.0 / 0.5f64.tanh()).sqrt());
        assert!(half.max_profile_gap > 1e-3);
    }

    #[test]
    fn perturbations() {
        let spec = exponential_1d().unwrap();
        let b = solve_bump(&BumpProblem::new(spec, 1.0, quad()).unwrap()).unwrap();
        let zero = perturbation_excess(&b, 0.5, 0.4, 0.0).unwrap();
        assert!(zero.excess.abs() < 1e-13);
        let pos = perturbation_excess(&b, 0.5, 0.5, 0.3).unwrap();
        assert!(pos.excess > 1e-6, "{}", pos.excess);
        assert!(perturbation_excess(&b, 0.8, 0.5, 0.1).is_err());
        let rep = perturbation_optimality(1.0, 20, DEFAULT_SEED, &quad()).unwrap();
        assert!(rep.min_excess >= -1e-12);
        assert!(rep.max_value_excess <= 1e-10);
    }

    #[test]
    fn wendland_is_not_optimal() {
        for r in [0.1, 1.0, 10.0] {
            let c = wendland_norm_compare(r, &quad()).unwrap();
            assert!(c.wendland_norm > c.beta, "r={r}");
        }
    }

    #[test]
    fn curve_closed_form_and_slope() {
        let spec = exponential_1d().unwrap();
        let rs: Vec<f64> = (0..13).map(|i| 10f64.powf(-3.0 + 0.25 * i as f64)).collect();
        let curve = beta_curve(&spec, &rs, &quad()).unwrap();
        for (r, b) in rs.iter().zip(&curve.betas) {
            let b = b.unwrap();
            assert!((b - (1.0 / r.tanh()).sqrt()).abs() <= 1e-10 * b);
        }
        assert!((curve.slope.unwrap() + 0.5).abs() < 0.05);
        assert!(curve.lower_bound_violations().is_empty());
        assert!(curve.monotone_violations().is_empty());
        assert!(beta_curve(&spec, &[1.0, 0.5], &quad()).is_err());
    }

    #[test]
    fn small_radius_limit_in_the_plane() {
        // beta^2(r) r -> 1 / (2 - 4/pi) as r -> 0
        let spec = KernelSpec::new(2, 1.5).unwrap();
        let limit = 1.0 / (2.0 - 4.0 / std::f64::consts::PI);
        for r in [1e-3, 1e-4] {
            let b = solve_bump(&BumpProblem::new(spec, r, quad()).unwrap()).unwrap();
            let v = b.beta().powi(2) * r;
            assert!((v - limit).abs() < 5.0 * r * limit, "r={r}: {v} vs {limit}");
        }
    }

    #[test]
    fn slope_fit() {
        let pts: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, (i as f64).powf(-1.5))).collect();
        assert!((fit_loglog_slope(&pts).unwrap() + 1.5).abs() < 1e-12);
        assert!(fit_loglog_slope(&pts[..1]).is_none());
    }
}
