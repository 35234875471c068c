//! Report generation behind the `sobolev-bumps` binary.
//!
//! Every command turns a [`RunConfig`] into a [`Report`]: metadata, an
//! optional table and a list of named checks. Reports render either as CSV
//! (`#`-prefixed metadata lines, a header row, values with 17 significant
//! digits) or as JSON that parses back into the same [`Report`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::analysis::{
    beta_curve, interpolation_error_bound, oracle_quadrature, perturbation_optimality, power_function,
    reproduction_check_1d, representer_check_1d, scaled_bump_compare, seeded_test_functions, sobolev_norm_1d,
    uncertainty_check, wendland_norm_compare, Function1d, PointSet,
};
use crate::bump::{solve_bump, translate_1d, BumpProblem, OptimalBump};
use crate::kernels::{kernel_eval, matern_profile_deriv, wendland_phi31, KernelSpec};
use crate::quadrature::{integrate_circle, BoundaryIntegrand, QuadratureConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Profile,
    Beta,
    Scaling,
    CompareWendland,
    Translates,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Profile => "profile",
            Command::Beta => "beta",
            Command::Scaling => "scaling",
            Command::CompareWendland => "compare-wendland",
            Command::Translates => "translates",
            Command::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Lin,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub d: usize,
    pub m: f64,
    pub r: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub r_count: usize,
    pub r_spacing: Spacing,
    pub n_samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
    /// Centers for `translates`; empty means `r * {0, +-0.33, +-0.66}`.
    pub centers: Vec<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            d: 1,
            m: 1.0,
            r: 1.0,
            r_min: 1e-3,
            r_max: 1.0,
            r_count: 13,
            r_spacing: Spacing::Log,
            n_samples: 201,
            tol: 1e-10,
            seed: crate::analysis::DEFAULT_SEED,
            output: None,
            format: if command == Command::Validate { Format::Json } else { Format::Csv },
            centers: Vec::new(),
        }
    }

    pub fn spec(&self) -> Result<KernelSpec, CliError> {
        KernelSpec::new(self.d, self.m).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn quad(&self) -> Result<QuadratureConfig, CliError> {
        QuadratureConfig::with_tol(self.tol).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.spec()?;
        self.quad()?;
        let usage = |m: String| Err(CliError::Usage(m));
        if !(self.r > 0.0 && self.r.is_finite()) {
            return usage(format!("--r must be positive, got {}", self.r));
        }
        if self.n_samples < 2 {
            return usage(format!("--samples must be >= 2, got {}", self.n_samples));
        }
        if matches!(self.command, Command::Beta | Command::Scaling | Command::Validate) {
            if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
                return usage(format!("need 0 < --r-min < --r-max, got {} and {}", self.r_min, self.r_max));
            }
            if self.r_count < 2 {
                return usage(format!("--r-count must be >= 2, got {}", self.r_count));
            }
        }
        if matches!(self.command, Command::CompareWendland | Command::Translates) && (self.d != 1 || self.m != 1.0) {
            return usage(format!("{} is only available for --d 1 --m 1", self.command.name()));
        }
        if self.command == Command::Translates {
            if let Some(x) = self.centers.iter().find(|x| !(x.abs() < self.r)) {
                return usage(format!("center {x} must lie inside (-r, r)"));
            }
        }
        Ok(())
    }

    pub fn radii(&self) -> Vec<f64> {
        let n = self.r_count;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.r_min;
                }
                if i + 1 == n {
                    return self.r_max;
                }
                let f = i as f64 / (n - 1) as f64;
                match self.r_spacing {
                    Spacing::Lin => self.r_min + f * (self.r_max - self.r_min),
                    Spacing::Log => (self.r_min.ln() + f * (self.r_max / self.r_min).ln()).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

/// A table cell: a number, a flag, or a missing value for failed rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Flag(bool),
    Num(f64),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        if v.is_finite() {
            Cell::Num(v)
        } else {
            Cell::Missing
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: Option<f64>,
    pub threshold: Option<f64>,
}

impl Check {
    fn new(name: &str, pass: bool, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            pass,
            measured: measured.is_finite().then_some(measured),
            threshold: threshold.is_finite().then_some(threshold),
        }
    }

    fn at_most(name: &str, measured: f64, threshold: f64) -> Self {
        Self::new(name, measured <= threshold, measured, threshold)
    }

    fn failed(name: &str, err: impl std::fmt::Display) -> Self {
        Self { name: format!("{name}: {err}"), pass: false, measured: None, threshold: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub metadata: BTreeMap<String, Value>,
    pub table: Option<Table>,
    pub checks: Vec<Check>,
    pub exit_code: i32,
}

impl Report {
    fn new(config: &RunConfig) -> Self {
        let mut metadata = BTreeMap::new();
        metadata.insert("command".into(), json!(config.command.name()));
        metadata.insert("d".into(), json!(config.d));
        metadata.insert("m".into(), json!(config.m));
        metadata.insert("tol".into(), json!(config.tol));
        metadata.insert("version".into(), json!(VERSION));
        Self { config: config.clone(), metadata, table: None, checks: Vec::new(), exit_code: 0 }
    }

    fn meta(&mut self, key: &str, value: Value) {
        self.metadata.insert(key.to_string(), value);
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => self.to_csv(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}={}", meta_value(v));
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "# check {}={} measured={} threshold={}",
                c.name,
                if c.pass { "pass" } else { "fail" },
                c.measured.map(fmt17).unwrap_or_else(|| "nan".into()),
                c.threshold.map(fmt17).unwrap_or_else(|| "nan".into()),
            );
        }
        if let Some(t) = &self.table {
            let _ = writeln!(out, "{}", t.columns.join(","));
            for row in &t.rows {
                let cells: Vec<String> = row
                    .iter()
                    .map(|c| match c {
                        Cell::Num(v) => fmt17(*v),
                        Cell::Flag(b) => b.to_string(),
                        Cell::Missing => "nan".into(),
                    })
                    .collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        out
    }
}

/// 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn meta_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => fmt17(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Runs one command. Usage and solver failures come back as `Err`; a report
/// whose checks failed carries exit code 1.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let mut report = match cfg.command {
        Command::Profile => cmd_profile(cfg)?,
        Command::Beta => cmd_beta(cfg, false)?,
        Command::Scaling => cmd_beta(cfg, true)?,
        Command::CompareWendland => cmd_compare_wendland(cfg)?,
        Command::Translates => cmd_translates(cfg)?,
        Command::Validate => cmd_validate(cfg)?,
    };
    if report.exit_code == 0 && !report.all_checks_pass() {
        report.exit_code = 1;
    }
    Ok(report)
}

fn solve(cfg: &RunConfig, r: f64) -> Result<OptimalBump, CliError> {
    Ok(solve_bump(&BumpProblem::new(cfg.spec()?, r, cfg.quad()?)?)?)
}

/// `n` samples over `[0, r]` followed by zero rows at the same spacing up to
/// `1.05 r`; the last row is always `1.05 r`.
pub fn profile_grid(r: f64, n: usize) -> Vec<f64> {
    let h = r / (n - 1) as f64;
    let end = 1.05 * r;
    let mut ts: Vec<f64> = (0..n).map(|i| if i + 1 == n { r } else { h * i as f64 }).collect();
    let mut k = 1;
    while r + h * (k as f64) < end * (1.0 - 1e-12) {
        ts.push(r + h * k as f64);
        k += 1;
    }
    ts.push(end);
    ts
}

pub fn cmd_profile(cfg: &RunConfig) -> Result<Report, CliError> {
    let bump = solve(cfg, cfg.r)?;
    let mut report = Report::new(cfg);
    report.meta("r", json!(cfg.r));
    report.meta("beta", json!(bump.beta()));
    report.meta("g_r_at_0", json!(bump.g_r_at_0()));
    let mut rows = Vec::new();
    let mut min_value = f64::INFINITY;
    let mut decreasing = true;
    let mut prev = f64::INFINITY;
    for t in profile_grid(cfg.r, cfg.n_samples) {
        let v = bump.eval(t)?;
        if t < cfg.r {
            min_value = min_value.min(v);
            decreasing &= v <= prev;
            prev = v;
        }
        rows.push(vec![Cell::from(t), Cell::from(v)]);
    }
    // observations only; positivity and bell shape are not guaranteed
    report.meta("observed_min_inside", json!(min_value));
    report.meta("observed_monotone", json!(decreasing));
    let boundary = bump.boundary_functionals()?;
    report.meta("boundary_functionals", json!(boundary));
    report.table = Some(Table { columns: vec!["t".into(), "b_r_star".into()], rows });
    Ok(report)
}

pub fn cmd_beta(cfg: &RunConfig, scaling: bool) -> Result<Report, CliError> {
    let spec = cfg.spec()?;
    let rs = cfg.radii();
    if rs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage("radius grid is not strictly increasing".into()));
    }
    let curve = beta_curve(&spec, &rs, &cfg.quad()?)?;
    let mut report = Report::new(cfg);
    let mut rows = Vec::new();
    let mut prev: Option<f64> = None;
    for (r, b) in rs.iter().zip(&curve.betas) {
        match b {
            Some(b) => {
                let monotone = prev.map_or(true, |p| *b < p);
                prev = Some(*b);
                rows.push(vec![
                    Cell::from(*r),
                    Cell::from(*b),
                    Cell::from(b * b),
                    Cell::Flag(b * b >= 1.0),
                    Cell::Flag(monotone),
                ]);
            }
            None => rows.push(vec![Cell::from(*r), Cell::Missing, Cell::Missing, Cell::Missing, Cell::Missing]),
        }
    }
    report.table = Some(Table {
        columns: ["r", "beta", "beta_sq", "lower_bound_ok", "monotone_ok"].map(String::from).to_vec(),
        rows,
    });
    let expected = curve.expected_slope();
    let pass = curve.slope.is_some_and(|s| (s - expected).abs() <= 0.05);
    report.meta("slope", curve.slope.map_or(Value::Null, |s| json!(s)));
    report.meta("expected", json!(expected));
    report.meta("pass", json!(pass));
    report.meta(
        "failures",
        json!(curve.failures.iter().map(|(i, e)| json!({"index": i, "error": e})).collect::<Vec<_>>()),
    );
    report.checks.push(Check::new(
        "lower_bound",
        curve.lower_bound_violations().is_empty(),
        curve.lower_bound_violations().len() as f64,
        0.0,
    ));
    report.checks.push(Check::new(
        "monotone",
        curve.monotone_violations().is_empty(),
        curve.monotone_violations().len() as f64,
        0.0,
    ));
    if scaling {
        report.checks.push(Check::new(
            "slope",
            pass,
            curve.slope.map_or(f64::NAN, |s| (s - expected).abs()),
            0.05,
        ));
    }
    if !curve.failures.is_empty() {
        report.exit_code = 3;
    }
    Ok(report)
}

pub fn cmd_compare_wendland(cfg: &RunConfig) -> Result<Report, CliError> {
    let bump = solve(cfg, cfg.r)?;
    let cmp = wendland_norm_compare(cfg.r, &cfg.quad()?)?;
    let mut report = Report::new(cfg);
    report.meta("r", json!(cfg.r));
    report.meta("beta", json!(cmp.beta));
    report.meta("wendland_norm", json!(cmp.wendland_norm));
    let rows = profile_grid(cfg.r, cfg.n_samples)
        .into_iter()
        .map(|t| Ok(vec![Cell::from(t), Cell::from(bump.eval(t)?), Cell::from(wendland_phi31(t, cfg.r)?)]))
        .collect::<Result<Vec<_>, crate::Error>>()?;
    report.table = Some(Table { columns: vec!["t".into(), "b_r_star".into(), "wendland".into()], rows });
    report.checks.push(Check::new(
        "wendland_norm_exceeds_beta",
        cmp.wendland_norm > cmp.beta,
        cmp.wendland_norm - cmp.beta,
        0.0,
    ));
    Ok(report)
}

pub fn cmd_translates(cfg: &RunConfig) -> Result<Report, CliError> {
    let r = cfg.r;
    let centers = if cfg.centers.is_empty() {
        [-0.66, -0.33, 0.0, 0.33, 0.66].iter().map(|c| c * r).collect()
    } else {
        cfg.centers.clone()
    };
    let reps = centers.iter().map(|&x| translate_1d(r, x)).collect::<Result<Vec<_>, _>>()?;
    let mut report = Report::new(cfg);
    report.meta("r", json!(r));
    report.meta("centers", json!(centers));
    report.meta("norms", json!(reps.iter().map(|g| g.norm).collect::<Vec<_>>()));
    let n = cfg.n_samples;
    let rows = (0..n)
        .map(|i| {
            let y = if i + 1 == n { r } else { -r + 2.0 * r * i as f64 / (n - 1) as f64 };
            std::iter::once(Cell::from(y)).chain(reps.iter().map(|g| Cell::from(g.eval(y)))).collect()
        })
        .collect();
    let mut columns = vec!["y".to_string()];
    columns.extend(centers.iter().map(|x| format!("g_r_x[{x}]")));
    report.table = Some(Table { columns, rows });
    let worst = reps
        .iter()
        .map(|g| g.eval(r * (1.0 - 1e-15)).abs().max(g.eval(-r * (1.0 - 1e-15)).abs()))
        .fold(0.0, f64::max);
    report.checks.push(Check::at_most("vanish_at_boundary", worst, 1e-12));
    Ok(report)
}

/// Runs every invariant that applies to `(d, m)` and records measured values.
pub fn cmd_validate(cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = cfg.spec()?;
    let quad = cfg.quad()?;
    let mut report = Report::new(cfg);
    report.meta("r", json!(cfg.r));
    report.meta("seed", json!(cfg.seed));
    let mut checks = Vec::new();

    kernel_checks(&spec, cfg.seed, &mut checks);
    quadrature_checks(&quad, &mut checks);

    match BumpProblem::new(spec, cfg.r, quad).and_then(|p| solve_bump(&p)) {
        Ok(bump) => bump_checks(&bump, &mut checks),
        Err(e) => checks.push(Check::failed("solve_bump", e)),
    }

    let rs = cfg.radii();
    match beta_curve(&spec, &rs, &quad) {
        Ok(curve) => {
            checks.push(Check::new("curve_solves", curve.failures.is_empty(), curve.failures.len() as f64, 0.0));
            checks.push(Check::new(
                "lower_bound",
                curve.lower_bound_violations().is_empty(),
                curve.lower_bound_violations().len() as f64,
                0.0,
            ));
            checks.push(Check::new(
                "monotone",
                curve.monotone_violations().is_empty(),
                curve.monotone_violations().len() as f64,
                0.0,
            ));
            if let Some(s) = curve.slope {
                checks.push(Check::at_most("scaling_slope", (s - curve.expected_slope()).abs(), 0.05));
            }
        }
        Err(e) => checks.push(Check::failed("beta_curve", e)),
    }

    if spec.d() == 1 && spec.m() == 1.0 {
        exponential_checks(&spec, &quad, cfg.seed, &mut checks);
    }
    report.checks = checks;
    Ok(report)
}

fn kernel_checks(spec: &KernelSpec, seed: u64, checks: &mut Vec<Check>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = spec.d();
    let pts: Vec<Vec<f64>> = (0..5).map(|_| (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
    let mut asym: f64 = 0.0;
    let mut gram = nalgebra::DMatrix::zeros(5, 5);
    for i in 0..5 {
        for j in 0..5 {
            let a = kernel_eval(spec, &pts[i], &pts[j]).unwrap_or(f64::NAN);
            let b = kernel_eval(spec, &pts[j], &pts[i]).unwrap_or(f64::NAN);
            asym = asym.max((a - b).abs());
            gram[(i, j)] = a;
        }
    }
    checks.push(Check::at_most("kernel_symmetry", asym, 0.0));
    let min_ev = gram.symmetric_eigenvalues().min();
    checks.push(Check::new("kernel_positive_definite", min_ev > 0.0, min_ev, 0.0));

    let profile = spec.profile();
    let decreasing = (1..=2000).all(|i| profile.value(0.01 * i as f64) < profile.value(0.01 * (i - 1) as f64));
    checks.push(Check::new("profile_decreasing", decreasing, decreasing as u8 as f64, 1.0));

    let nu = spec.nu().nu();
    let mut worst: f64 = 0.0;
    for t in [0.1, 1.0, 5.0] {
        let h = 1e-5 * t;
        let fd = (profile.value(t + h) - profile.value(t - h)) / (2.0 * h);
        let exact = matern_profile_deriv(nu, t, 1).unwrap_or(f64::NAN);
        worst = worst.max(((fd - exact) / exact).abs());
    }
    checks.push(Check::at_most("profile_derivative_vs_fd", worst, 1e-7));
}

fn quadrature_checks(quad: &QuadratureConfig, checks: &mut Vec<Check>) {
    let one = integrate_circle(&BoundaryIntegrand::new(|_| 1.0), quad).map(|e| (e.value - 2.0 * PI).abs());
    checks.push(Check::at_most("quadrature_constant", one.unwrap_or(f64::NAN), 1e-13));
    let cos = integrate_circle(&BoundaryIntegrand::new(f64::cos), quad).map(|e| e.value.abs());
    checks.push(Check::at_most("quadrature_cosine", cos.unwrap_or(f64::NAN), 1e-14));
}

fn bump_checks(bump: &OptimalBump, checks: &mut Vec<Check>) {
    let sys = bump.system();
    let r = bump.r();
    let spec = *bump.problem().spec();
    checks.push(Check::new("g_r_at_0_positive", bump.g_r_at_0() > 0.0, bump.g_r_at_0(), 0.0));
    let prod = bump.beta().powi(2) * bump.g_r_at_0();
    checks.push(Check::at_most("beta_sq_times_g0", (prod - 1.0).abs(), 1e-14));
    checks.push(Check::new(
        "beta_sq_times_g0_value",
        (prod - 1.0).abs() <= 1e-14,
        prod,
        1.0,
    ));
    checks.push(Check::at_most("gram_asymmetry", sys.asymmetry(), 1e-9));
    let min_ev = sys.eigenvalues().first().copied().unwrap_or(f64::NAN);
    checks.push(Check::new("gram_positive_definite", min_ev > 0.0, min_ev, 0.0));
    checks.push(Check::at_most("solve_residual", sys.relative_residual(), 1e-12));
    match bump.boundary_functionals() {
        Ok(vals) => {
            let worst = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            checks.push(Check::at_most("boundary_conditions", worst, 1e-6 * sys.rhs.norm()));
        }
        Err(e) => checks.push(Check::failed("boundary_conditions", e)),
    }
    match sys.finite_difference_check(bump.problem()) {
        Ok(v) => checks.push(Check::at_most("finite_difference_cross_check", v, 1e-5)),
        Err(e) => checks.push(Check::failed("finite_difference_cross_check", e)),
    }
    let at0 = bump.eval(0.0).unwrap_or(f64::NAN);
    checks.push(Check::new("value_at_zero", at0 == 1.0, at0, 1.0));
    let near = bump.eval(r * (1.0 - 1e-12)).map(f64::abs).unwrap_or(f64::NAN);
    checks.push(Check::at_most("value_near_boundary", near, 1e-9));
    let beyond = bump.eval(r * (1.0 + 1e-13)).unwrap_or(f64::NAN);
    checks.push(Check::new("zero_outside", beyond == 0.0, beyond, 0.0));

    if spec.d() == 2 {
        let t = 0.5 * r;
        let radial = bump.projection(t);
        let mut worst: f64 = 0.0;
        for i in 0..16 {
            let a = 2.0 * PI * i as f64 / 16.0 + 0.05;
            let v = bump.projection_at_point([t * a.cos(), t * a.sin()]);
            worst = match (&radial, v) {
                (Ok(g), Ok(v)) => worst.max((g - v).abs()),
                _ => f64::NAN,
            };
        }
        checks.push(Check::at_most("radiality", worst, 1e-8));
    }
}

fn exponential_checks(spec: &KernelSpec, quad: &QuadratureConfig, seed: u64, checks: &mut Vec<Check>) {
    // closed form sinh(r - t) / sinh(r)
    let mut worst: f64 = 0.0;
    for r in [0.5, 1.0, 2.0, 5.0] {
        match BumpProblem::new(*spec, r, *quad).and_then(|p| solve_bump(&p)) {
            Ok(b) => {
                for i in 0..=1000 {
                    let t = r * i as f64 / 1000.0;
                    let exact = (r - t).sinh() / r.sinh();
                    worst = worst.max((b.eval(t).unwrap_or(f64::NAN) - exact).abs());
                }
            }
            Err(_) => worst = f64::NAN,
        }
    }
    checks.push(Check::at_most("closed_form_1d", worst, 1e-10));

    let mut worst: f64 = 0.0;
    for r in [0.01, 0.1, 1.0, 10.0] {
        let v = uncertainty_check(spec, r, quad).map(|u| (u.product - 1.0).abs()).unwrap_or(f64::NAN);
        worst = worst.max(v);
    }
    checks.push(Check::at_most("uncertainty_identity", worst, 1e-9));

    match perturbation_optimality(1.0, 20, seed, quad) {
        Ok(rep) => {
            checks.push(Check::new("perturbation_optimality", rep.min_excess >= -1e-12, rep.min_excess, -1e-12));
            checks.push(Check::at_most("max_value_at_zero", rep.max_value_excess, 1e-10));
        }
        Err(e) => checks.push(Check::failed("perturbation_optimality", e)),
    }

    let oracle = oracle_quadrature();
    let mut worst: f64 = 0.0;
    for f in seeded_test_functions(5, seed) {
        for x in [-0.7, 0.0, 0.45] {
            worst = worst.max(reproduction_check_1d(&f, x, &oracle).unwrap_or(f64::NAN));
        }
    }
    checks.push(Check::at_most("reproduction", worst, 1e-8));

    let mut worst: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..10 {
        let r = 1.0;
        let c = rng.gen_range(-0.5..0.5);
        let s = rng.gen_range(0.1..(r - f64::abs(c)));
        let v = Function1d::wendland(c, s, 1.0);
        let x = rng.gen_range(-0.9..0.9);
        worst = worst.max(representer_check_1d(&v, r, x).unwrap_or(f64::NAN));
    }
    checks.push(Check::at_most("representer_property", worst, 1e-6));

    for r in [0.01, 0.1, 0.5] {
        match scaled_bump_compare(spec, r, quad) {
            Ok(c) => {
                checks.push(Check::new(
                    &format!("scaled_not_better_r{r}"),
                    c.norm_scaled >= c.norm_optimal,
                    c.ratio,
                    1.0,
                ));
                checks.push(Check::at_most(&format!("scaled_ratio_r{r}"), c.ratio, 1.2));
            }
            Err(e) => checks.push(Check::failed("scaled_bump_compare", e)),
        }
    }

    for r in [0.1, 1.0, 10.0] {
        match wendland_norm_compare(r, quad) {
            Ok(c) => checks.push(Check::new(
                &format!("wendland_dominance_r{r}"),
                c.wendland_norm > c.beta,
                c.wendland_norm / c.beta,
                1.0,
            )),
            Err(e) => checks.push(Check::failed("wendland_norm_compare", e)),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut ok = true;
    let mut worst_ratio: f64 = 0.0;
    for _ in 0..10 {
        let centers: Vec<f64> = (0..5).map(|i| -2.0 + i as f64 + rng.gen_range(-0.3..0.3)).collect();
        let coeffs: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let result = PointSet::from_1d(&centers).and_then(|c| {
            let sites = PointSet::from_1d(&[-1.7, -0.6, 0.4, 1.3])?;
            interpolation_error_bound(spec, &c, &coeffs, &sites, &[0.9])
        });
        match result {
            Ok((err, bound)) => {
                ok &= err <= bound * (1.0 + 1e-10) + 1e-14;
                worst_ratio = worst_ratio.max(err / bound);
            }
            Err(_) => ok = false,
        }
    }
    checks.push(Check::new("power_function_error_bound", ok, worst_ratio, 1.0));

    let set = PointSet::from_1d(&[-1.0, 1.0]);
    let p = set.and_then(|s| power_function(spec, &s, &[0.0]));
    let b1 = Function1d::wendland(0.0, 1.0, 1.0);
    let nw = sobolev_norm_1d(&b1, &oracle);
    if let (Ok(p), Ok(nw)) = (p, nw) {
        checks.push(Check::new("power_function_vs_wendland", p >= 1.0 / nw, p * nw, 1.0));
    }
}
