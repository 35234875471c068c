//! Construction of norm-minimal bump functions on balls.
//!
//! The boundary functionals `lambda_{j,r}` integrate the j-th radial
//! derivative over the sphere `|y| = r`. Their kernel representers
//! `g_{j,r}(x) = lambda^y_{j,r} K(x, y)` are radial, so everything reduces to
//! radial profiles `t -> g_{j,r}(t z)`. Projecting `K(0, .)` onto the
//! zero-trace subspace gives
//!
//! ```text
//! g_r = K(0, .) - sum_j c_j g_{j,r},   sum_j c_j lambda_k g_{j,r} = g_{k,r}(0),
//! ```
//!
//! and the optimal bump is `b_r^* = g_r / g_r(0)` with norm `g_r(0)^{-1/2}`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::kernels::{KernelSpec, MaternProfile, ProfileLabel, RadialProfile};
use crate::quadrature::{integrate_circle, BoundaryIntegrand, QuadratureConfig};

/// Samples used for the cached dense profile.
pub const DENSE_SAMPLES: usize = 1025;

/// A support radius together with the kernel and quadrature settings.
#[derive(Debug, Clone)]
pub struct BumpProblem {
    spec: KernelSpec,
    r: f64,
    quad: QuadratureConfig,
    profile: MaternProfile,
}

impl BumpProblem {
    pub fn new(spec: KernelSpec, r: f64, quad: QuadratureConfig) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidArgument(format!("support radius {r} must be positive")));
        }
        quad.validate()?;
        Ok(Self { spec, r, quad, profile: spec.profile() })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn quad(&self) -> &QuadratureConfig {
        &self.quad
    }

    pub fn profile(&self) -> &MaternProfile {
        &self.profile
    }

    pub fn trace_count(&self) -> usize {
        self.spec.trace_count()
    }

    /// Measure of the boundary in the convention used by the functionals:
    /// two points in 1D, the angular measure `2 pi` in 2D.
    pub fn boundary_measure(&self) -> f64 {
        match self.spec.d() {
            1 => 2.0,
            _ => 2.0 * PI,
        }
    }

    /// The k-th radial derivative at `t >= 0` of the profile of `g_{j,r}`.
    ///
    /// At `t = r` the derivative is taken from the inside.
    pub fn trace_derivative(&self, j: usize, k: usize, t: f64) -> Result<f64> {
        if j >= self.trace_count() {
            return Err(Error::InvalidArgument(format!(
                "trace order {j} outside 0..{}",
                self.trace_count()
            )));
        }
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::InvalidArgument(format!("radial coordinate {t} must be >= 0")));
        }
        let r = self.r;
        match self.spec.d() {
            1 => {
                let phi = |u: f64| self.profile.derivative(u, j + k);
                let sign = |p: usize| if p % 2 == 0 { 1.0 } else { -1.0 };
                Ok(if t <= r {
                    sign(k) * phi(r - t) + phi(r + t)
                } else {
                    sign(j) * phi(t - r) + phi(t + r)
                })
            }
            _ => {
                let integrand = |angle: f64| radial_jet(&self.profile, j, k, r, t, angle);
                Ok(integrate_circle(&BoundaryIntegrand::new(integrand), &self.quad)?.value)
            }
        }
    }

    /// Evaluates `g_{j,r}` at an arbitrary point of the plane by integrating
    /// over the circle directly, without using radial symmetry.
    pub fn trace_function_at_point(&self, j: usize, x: [f64; 2]) -> Result<f64> {
        if self.spec.d() != 2 {
            return Err(Error::DimensionMismatch { expected: self.spec.d(), got: 2 });
        }
        if j >= self.trace_count() {
            return Err(Error::InvalidArgument(format!("trace order {j} out of range")));
        }
        let r = self.r;
        let integrand = |angle: f64| {
            let (s, c) = angle.sin_cos();
            let (dx, dy) = (x[0] - r * c, x[1] - r * s);
            let s0 = dx * dx + dy * dy;
            let proj = x[0] * c + x[1] * s;
            jet_sum(&self.profile, j, 0, s0, 2.0 * (r - proj), 0.0, -2.0 * c)
        };
        let kink = x[1].atan2(x[0]);
        let f = BoundaryIntegrand::with_kinks(integrand, vec![kink]);
        Ok(integrate_circle(&f, &self.quad)?.value)
    }
}

/// `g_{j,r}(t z)` for a unit vector `z`.
pub fn g_j_r(problem: &BumpProblem, j: usize, t: f64) -> Result<f64> {
    problem.trace_derivative(j, 0, t)
}

/// `d^k/dt^k d^j/dr'^j phi(|t z - r' e(angle)|)` at `r' = r`.
fn radial_jet(profile: &MaternProfile, j: usize, k: usize, r: f64, t: f64, angle: f64) -> f64 {
    let c = angle.cos();
    let half = (0.5 * angle).sin();
    // 1 - cos(angle), without cancellation
    let h2 = 2.0 * half * half;
    let s0 = (r - t) * (r - t) + 2.0 * r * t * h2;
    let da = 2.0 * ((r - t) + t * h2);
    let db = 2.0 * ((t - r) + r * h2);
    jet_sum(profile, j, k, s0, da, db, -2.0 * c)
}

/// Mixed derivative `d^j_a d^k_b f(s(a, b))` at the origin, where
/// `f(s) = phi(sqrt(s))` and
/// `s(a, b) = s0 + da a + db b + a^2 + b^2 + dab a b`.
fn jet_sum(profile: &MaternProfile, j: usize, k: usize, s0: f64, da: f64, db: f64, dab: f64) -> f64 {
    let rho = s0.max(0.0).sqrt();
    if j + k == 0 {
        return profile.value(rho);
    }
    let cols = k + 1;
    let idx = |p: usize, q: usize| p * cols + q;
    let size = (j + 1) * cols;
    let mut delta = vec![0.0; size];
    let mut set = |p: usize, q: usize, v: f64| {
        if p <= j && q <= k {
            delta[idx(p, q)] = v;
        }
    };
    set(1, 0, da);
    set(0, 1, db);
    set(2, 0, 1.0);
    set(0, 2, 1.0);
    set(1, 1, dab);

    let mut power = vec![0.0; size];
    power[0] = 1.0;
    let mut total = 0.0;
    let mut q_fact = 1.0;
    for q in 1..=(j + k) {
        power = truncated_product(&power, &delta, j, k);
        q_fact *= q as f64;
        let coeff = power[idx(j, k)];
        if coeff != 0.0 {
            total += profile.s_derivative(rho, q) / q_fact * coeff;
        }
    }
    let jk_fact: f64 = (1..=j).chain(1..=k).map(|v| v as f64).product();
    total * jk_fact
}

fn truncated_product(x: &[f64], y: &[f64], j: usize, k: usize) -> Vec<f64> {
    let cols = k + 1;
    let mut out = vec![0.0; x.len()];
    for p1 in 0..=j {
        for q1 in 0..=k {
            let a = x[p1 * cols + q1];
            if a == 0.0 {
                continue;
            }
            for p2 in 0..=(j - p1) {
                for q2 in 0..=(k - q1) {
                    out[(p1 + p2) * cols + q1 + q2] += a * y[p2 * cols + q2];
                }
            }
        }
    }
    out
}

/// The trace Gram system and its solution.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSystem {
    /// `matrix[(k, j)] = lambda_k lambda_j K`.
    pub matrix: DMatrix<f64>,
    /// `rhs[k] = g_{k,r}(0)`.
    pub rhs: DVector<f64>,
    pub coefficients: DVector<f64>,
}

impl TraceSystem {
    pub fn asymmetry(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).abs().max()
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let sym = (&self.matrix + self.matrix.transpose()) * 0.5;
        let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    /// Normwise backward error `|A c - b| / (|A| |c| + |b|)`.
    pub fn relative_residual(&self) -> f64 {
        let res = &self.matrix * &self.coefficients - &self.rhs;
        res.norm() / (self.matrix.norm() * self.coefficients.norm() + self.rhs.norm())
    }

    /// Recomputes every derivative entry (`k >= 1`) by Richardson-extrapolated
    /// central differences of the order `k - 1` profile and returns the largest
    /// discrepancy relative to the largest entry.
    pub fn finite_difference_check(&self, problem: &BumpProblem) -> Result<f64> {
        let n = problem.trace_count();
        let r = problem.r();
        let w = problem.boundary_measure();
        let h = 1e-5 * r;
        let scale = self.matrix.abs().max();
        let mut worst: f64 = 0.0;
        for k in 1..n {
            for j in 0..n {
                let d = |h: f64| -> Result<f64> {
                    let plus = problem.trace_derivative(j, k - 1, r + h)?;
                    let minus = problem.trace_derivative(j, k - 1, r - h)?;
                    Ok((plus - minus) / (2.0 * h))
                };
                let fd = (4.0 * d(h / 2.0)? - d(h)?) / 3.0;
                worst = worst.max((w * fd - self.matrix[(k, j)]).abs() / scale);
            }
        }
        Ok(worst)
    }
}

/// Assembles and solves the trace system.
pub fn assemble_trace_system(problem: &BumpProblem) -> Result<TraceSystem> {
    let n = problem.trace_count();
    let r = problem.r();
    let w = problem.boundary_measure();
    let mut matrix = DMatrix::zeros(n, n);
    let mut rhs = DVector::zeros(n);
    for k in 0..n {
        rhs[k] = problem.trace_derivative(k, 0, 0.0)?;
        for j in 0..n {
            matrix[(k, j)] = w * problem.trace_derivative(j, k, r)?;
        }
    }

    // Equilibrate before factoring: derivative functionals scale like r^{-k}.
    let diag: Vec<f64> = (0..n).map(|i| matrix[(i, i)]).collect();
    if diag.iter().any(|&d| !(d > 0.0)) {
        return Err(Error::SingularSystem);
    }
    let scale = DVector::from_iterator(n, diag.iter().map(|d| 1.0 / d.sqrt()));
    let sym = (&matrix + matrix.transpose()) * 0.5;
    let scaled = DMatrix::from_fn(n, n, |a, b| sym[(a, b)] * scale[a] * scale[b]);
    let chol = scaled.clone().cholesky().ok_or(Error::SingularSystem)?;
    let mut y = chol.solve(&rhs.component_mul(&scale));
    // one step of iterative refinement on the scaled system
    let resid = rhs.component_mul(&scale) - &scaled * &y;
    y += chol.solve(&resid);
    let coefficients = y.component_mul(&scale);

    let system = TraceSystem { matrix, rhs, coefficients };
    let residual = system.relative_residual();
    let limit = 1e-12;
    if !(residual <= limit) {
        return Err(Error::ResidualCheck { residual, limit });
    }
    Ok(system)
}

/// The norm-minimal bump function of support radius `r`.
#[derive(Debug)]
pub struct OptimalBump {
    problem: BumpProblem,
    system: TraceSystem,
    g_r_at_0: f64,
    beta: f64,
    dense: OnceLock<RadialProfile>,
}

/// Solves for `b_r^*` and verifies its boundary conditions.
pub fn solve_bump(problem: &BumpProblem) -> Result<OptimalBump> {
    let system = assemble_trace_system(problem)?;
    let g0 = 1.0 - system.coefficients.dot(&system.rhs);
    if !(g0 > 1e-14) {
        return Err(Error::NonPositiveG0(g0));
    }
    let bump = OptimalBump {
        problem: problem.clone(),
        system,
        g_r_at_0: g0,
        beta: 1.0 / g0.sqrt(),
        dense: OnceLock::new(),
    };
    let limit = 1e-6 * bump.system.rhs.norm();
    for (k, value) in bump.boundary_functionals()?.into_iter().enumerate() {
        if !(value.abs() <= limit) {
            return Err(Error::BoundaryCheck { order: k, value, limit });
        }
    }
    Ok(bump)
}

/// `beta(r) = ||b_r^*||_K`.
pub fn beta_of_r(problem: &BumpProblem) -> Result<f64> {
    Ok(solve_bump(problem)?.beta())
}

impl OptimalBump {
    pub fn problem(&self) -> &BumpProblem {
        &self.problem
    }

    pub fn system(&self) -> &TraceSystem {
        &self.system
    }

    pub fn r(&self) -> f64 {
        self.problem.r
    }

    pub fn g_r_at_0(&self) -> f64 {
        self.g_r_at_0
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The projection `g_r(t z) = phi(t) - sum_j c_j g_{j,r}(t z)`; not cut off at `r`.
    pub fn projection(&self, t: f64) -> Result<f64> {
        self.projection_derivative(t, 0)
    }

    pub fn projection_derivative(&self, t: f64, k: usize) -> Result<f64> {
        let t = t.abs();
        let mut v = self.problem.profile.derivative(t, k);
        for (j, c) in self.system.coefficients.iter().enumerate() {
            v -= c * self.problem.trace_derivative(j, k, t)?;
        }
        Ok(v)
    }

    /// `b_r^*(t z)`: exactly 1 at the origin and exactly 0 for `|t| >= r`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let t = t.abs();
        if t == 0.0 {
            return Ok(1.0);
        }
        if t >= self.problem.r {
            return Ok(0.0);
        }
        Ok(self.projection(t)? / self.g_r_at_0)
    }

    /// Radial derivative of `b_r^*` for `t >= 0`, one-sided at 0.
    pub fn derivative(&self, t: f64, k: usize) -> Result<f64> {
        let t = t.abs();
        if t >= self.problem.r {
            return Ok(0.0);
        }
        Ok(self.projection_derivative(t, k)? / self.g_r_at_0)
    }

    /// `lambda_{k,r}(g_r)` for every trace order; all should vanish.
    pub fn boundary_functionals(&self) -> Result<Vec<f64>> {
        let w = self.problem.boundary_measure();
        let r = self.problem.r;
        (0..self.problem.trace_count())
            .map(|k| Ok(w * self.projection_derivative(r, k)?))
            .collect()
    }

    /// `g_r` at an arbitrary planar point via the non-radial boundary integrals.
    pub fn projection_at_point(&self, x: [f64; 2]) -> Result<f64> {
        let norm = x[0].hypot(x[1]);
        let mut v = self.problem.profile.value(norm);
        for (j, c) in self.system.coefficients.iter().enumerate() {
            v -= c * self.problem.trace_function_at_point(j, x)?;
        }
        Ok(v)
    }

    /// `n` equispaced samples of `b_r^*` on `[0, r]`.
    pub fn sample(&self, n: usize) -> Result<RadialProfile> {
        if n < 2 {
            return Err(Error::InvalidArgument("need at least two samples".into()));
        }
        let r = self.problem.r;
        let ts: Vec<f64> = (0..n)
            .map(|i| if i + 1 == n { r } else { r * i as f64 / (n - 1) as f64 })
            .collect();
        let values = ts.iter().map(|&t| self.eval(t)).collect::<Result<Vec<_>>>()?;
        RadialProfile::new(self.problem.spec, r, ts, values, ProfileLabel::OptimalBump)
    }

    /// Cached samples at `DENSE_SAMPLES` Chebyshev-Lobatto-like points on `[0, r]`.
    pub fn dense_profile(&self) -> Result<&RadialProfile> {
        if let Some(p) = self.dense.get() {
            return Ok(p);
        }
        let r = self.problem.r;
        let last = DENSE_SAMPLES - 1;
        let ts: Vec<f64> = (0..DENSE_SAMPLES)
            .map(|i| match i {
                0 => 0.0,
                i if i == last => r,
                i => 0.5 * r * (1.0 - (PI * i as f64 / last as f64).cos()),
            })
            .collect();
        let values = ts.iter().map(|&t| self.eval(t)).collect::<Result<Vec<_>>>()?;
        let profile = RadialProfile::new(self.problem.spec, r, ts, values, ProfileLabel::OptimalBump)?;
        Ok(self.dense.get_or_init(|| profile))
    }
}

/// Riesz representer `g_{r,x}` of point evaluation at `x` on the zero-trace
/// subspace of `H^1(R)` over `(-r, r)`, exponential kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslateRepresenter {
    pub r: f64,
    pub x: f64,
    a: f64,
    b: f64,
    pub norm: f64,
}

impl TranslateRepresenter {
    /// `exp(-|x - y|) - a exp(-|y - r|) - b exp(-|y + r|)` inside, 0 outside.
    pub fn eval(&self, y: f64) -> f64 {
        if y.abs() >= self.r {
            return 0.0;
        }
        (-(self.x - y).abs()).exp() - self.a * (-(y - self.r).abs()).exp() - self.b * (-(y + self.r).abs()).exp()
    }

    pub fn derivative(&self, y: f64) -> f64 {
        if y.abs() >= self.r {
            return 0.0;
        }
        let sgn = |v: f64| if v > 0.0 { 1.0 } else if v < 0.0 { -1.0 } else { 0.0 };
        -sgn(y - self.x) * (-(self.x - y).abs()).exp()
            + self.a * sgn(y - self.r) * (-(y - self.r).abs()).exp()
            + self.b * sgn(y + self.r) * (-(y + self.r).abs()).exp()
    }
}

/// Projects `K(x, .)` onto functions vanishing at `+-r` (1D, `m = 1`).
pub fn translate_1d(r: f64, x: f64) -> Result<TranslateRepresenter> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("support radius {r} must be positive")));
    }
    if !(x.abs() < r) {
        return Err(Error::OutOfDomain(format!("center {x} not inside (-{r}, {r})")));
    }
    let e2 = (-2.0 * r).exp();
    let det = 1.0 - e2 * e2;
    let (up, down) = ((x - r).exp(), (-x - r).exp());
    let a = (up - e2 * down) / det;
    let b = (down - e2 * up) / det;
    let mut rep = TranslateRepresenter { r, x, a, b, norm: 0.0 };
    rep.norm = rep.eval(x).max(0.0).sqrt();
    Ok(rep)
}

/// Reproducing kernel of the zero-trace subspace, `K_r(x, y) = g_{r,y}(x)`.
pub fn kernel_kr_1d(r: f64, x: f64, y: f64) -> Result<f64> {
    if !(x.abs() < r) {
        return Err(Error::OutOfDomain(format!("{x} not inside (-{r}, {r})")));
    }
    Ok(translate_1d(r, y)?.eval(x))
}
