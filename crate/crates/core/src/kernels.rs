//! Half-integer Matérn kernels in closed form.
//!
//! For `nu = n + 1/2` the modified Bessel function of the second kind reduces
//! to an exponential times a polynomial, so the normalized radial profile is
//!
//! ```text
//! phi(t) = c_nu t^nu K_nu(t) = exp(-t) p_n(t),   p_n(0) = 1.
//! ```
//!
//! `n = 0` gives `exp(-t)`, `n = 1` gives `(1 + t) exp(-t)`, `n = 2` gives
//! `(1 + t + t^2/3) exp(-t)`. The kernel `phi(||x - y||)` reproduces the
//! Sobolev space `H^m(R^d)` with `m = nu + d/2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Matérn order restricted to half-integers, stored as `n` with `nu = n + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MaternOrder(u32);

impl MaternOrder {
    pub fn new(nu: f64) -> Result<Self> {
        let twice = 2.0 * nu;
        if !nu.is_finite() || nu <= 0.0 || twice.fract() != 0.0 || (twice as i64) % 2 != 1 {
            return Err(Error::InvalidSpec(format!(
                "Matérn order {nu} is not a positive half-integer"
            )));
        }
        Ok(Self(((twice as u32) - 1) / 2))
    }

    pub fn from_index(n: u32) -> Self {
        Self(n)
    }

    /// The integer part `n` of `nu = n + 1/2`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn nu(self) -> f64 {
        self.0 as f64 + 0.5
    }

    /// Highest radial derivative order available at `t`.
    ///
    /// The kernel `phi(|x|)` is `C^{2n}` at the origin, so one-sided
    /// derivatives of the profile up to order `2n` are meaningful there.
    pub fn max_derivative_order(self, t: f64) -> usize {
        let at_origin = 2 * self.0 as usize;
        if t == 0.0 {
            at_origin
        } else {
            at_origin.max(1)
        }
    }
}

/// The pair `(d, m)` identifying `H^m(R^d)` and its Matérn kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    d: usize,
    m_twice: u32,
    nu: MaternOrder,
    cnu: f64,
}

impl KernelSpec {
    /// Validates `d in {1, 2}`, `m > d/2` and `nu = m - d/2` half-integer.
    pub fn new(d: usize, m: f64) -> Result<Self> {
        if !(1..=2).contains(&d) {
            return Err(Error::InvalidSpec(format!("dimension {d} not supported (1 or 2)")));
        }
        let m_twice = 2.0 * m;
        if !m.is_finite() || m <= 0.0 || m_twice.fract() != 0.0 {
            return Err(Error::InvalidSpec(format!(
                "smoothness {m} is not a positive multiple of 1/2"
            )));
        }
        let m_twice = m_twice as u32;
        if m_twice as usize <= d {
            return Err(Error::InvalidSpec(format!("need m > d/2, got m = {m}, d = {d}")));
        }
        let nu = MaternOrder::new(m - d as f64 / 2.0).map_err(|_| {
            Error::InvalidSpec(format!(
                "nu = m - d/2 = {} is not a half-integer (d = {d}, m = {m})",
                m - d as f64 / 2.0
            ))
        })?;
        Ok(Self { d, m_twice, nu, cnu: normalization(nu) })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> f64 {
        self.m_twice as f64 / 2.0
    }

    pub fn nu(&self) -> MaternOrder {
        self.nu
    }

    /// `2^{1-nu} / Gamma(nu)`, the factor making the profile equal 1 at zero.
    pub fn cnu(&self) -> f64 {
        self.cnu
    }

    /// Number of trace conditions: `#{ j : 0 <= j < m - 1/2 }`.
    pub fn trace_count(&self) -> usize {
        (self.m_twice / 2) as usize
    }

    pub fn profile(&self) -> MaternProfile {
        MaternProfile::new(self.nu)
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn normalization(nu: MaternOrder) -> f64 {
    let n = nu.index();
    // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
    let gamma = factorial(2 * n) * std::f64::consts::PI.sqrt() / (4f64.powi(n as i32) * factorial(n));
    2f64.powf(1.0 - nu.nu()) / gamma
}

/// Polynomial in ascending-power coefficient form.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<f64>);

impl Poly {
    fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    fn derivative(&self) -> Poly {
        Poly(self.0.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect())
    }

    /// `P' - P`, so that `(exp(-t) P)' = exp(-t) (P' - P)`.
    fn exp_derivative(&self) -> Poly {
        let dp = self.derivative();
        let mut out: Vec<f64> = self.0.iter().map(|c| -c).collect();
        for (o, d) in out.iter_mut().zip(dp.0.iter()) {
            *o += d;
        }
        Poly(out)
    }
}

/// `q_n(t) = sum_k (n+k)! / (k! (n-k)! 2^k) t^{n-k}`, so that
/// `t^{n+1/2} K_{n+1/2}(t) = sqrt(pi/2) exp(-t) q_n(t)`.
fn bessel_poly(n: u32) -> Poly {
    let mut coeffs = vec![0.0; n as usize + 1];
    for k in 0..=n {
        let c = factorial(n + k) / (factorial(k) * factorial(n - k) * 2f64.powi(k as i32));
        coeffs[(n - k) as usize] = c;
    }
    Poly(coeffs)
}

const CACHED_ORDERS: usize = 8;

/// Closed-form normalized profile `exp(-t) p(t)` with its derivatives.
#[derive(Debug, Clone)]
pub struct MaternProfile {
    order: MaternOrder,
    /// `exp(-t) derivs[k](t)` is the k-th derivative of the profile.
    derivs: Vec<Poly>,
    /// `q_i` for `i = 0..=n`, unnormalized.
    bessel: Vec<Poly>,
    q0: f64,
}

impl MaternProfile {
    pub fn new(order: MaternOrder) -> Self {
        let n = order.index();
        let bessel: Vec<Poly> = (0..=n).map(bessel_poly).collect();
        let q0 = bessel[n as usize].0[0];
        let p = Poly(bessel[n as usize].0.iter().map(|c| c / q0).collect());
        let mut derivs = vec![p];
        for k in 1..CACHED_ORDERS {
            let next = derivs[k - 1].exp_derivative();
            derivs.push(next);
        }
        Self { order, derivs, bessel, q0 }
    }

    pub fn order(&self) -> MaternOrder {
        self.order
    }

    /// `phi(t)` for `t >= 0`.
    pub fn value(&self, t: f64) -> f64 {
        (-t).exp() * self.derivs[0].eval(t)
    }

    /// k-th derivative of the profile; at `t = 0` this is the one-sided
    /// derivative from the right. No smoothness check.
    pub fn derivative(&self, t: f64, k: usize) -> f64 {
        if k < self.derivs.len() {
            return (-t).exp() * self.derivs[k].eval(t);
        }
        let mut p = self.derivs[self.derivs.len() - 1].clone();
        for _ in self.derivs.len()..=k {
            p = p.exp_derivative();
        }
        (-t).exp() * p.eval(t)
    }

    /// q-th derivative of `f(s) = phi(sqrt(s))` with respect to `s`, at `rho = sqrt(s)`.
    ///
    /// Uses `d/ds [t^mu K_mu(t)] = -(1/2) t^{mu-1} K_{mu-1}(t)` and
    /// `K_{-mu} = K_mu`. Singular at `rho = 0` once `q > n`.
    pub fn s_derivative(&self, rho: f64, q: usize) -> f64 {
        let n = self.order.index() as i64;
        let i = n - q as i64;
        let scale = (-0.5f64).powi(q as i32) / self.q0;
        let e = (-rho).exp();
        if i >= 0 {
            scale * e * self.bessel[i as usize].eval(rho)
        } else {
            let np = (-i - 1) as u32;
            let poly = if (np as usize) < self.bessel.len() {
                self.bessel[np as usize].eval(rho)
            } else {
                bessel_poly(np).eval(rho)
            };
            scale * e * poly * rho.powi((2 * i + 1) as i32)
        }
    }
}

/// Normalized Matérn profile `c_nu t^nu K_nu(t)` for half-integer `nu`.
pub fn matern_profile(nu: f64, t: f64) -> Result<f64> {
    let order = MaternOrder::new(nu)?;
    check_radius(t)?;
    Ok(MaternProfile::new(order).value(t))
}

/// Radial derivative of the normalized profile, limited to the smoothness
/// the kernel actually has at `t`.
pub fn matern_profile_deriv(nu: f64, t: f64, order: usize) -> Result<f64> {
    let nu = MaternOrder::new(nu)?;
    check_radius(t)?;
    let max = nu.max_derivative_order(t);
    if order > max {
        return Err(Error::DerivativeOrder { order, t, max });
    }
    Ok(MaternProfile::new(nu).derivative(t, order))
}

fn check_radius(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("radius {t} must be finite and >= 0")));
    }
    Ok(())
}

/// Wendland's `phi_{3,1}(t) = (1 - t/r)_+^4 (1 + 4t/r)`.
pub fn wendland_phi31(t: f64, r: f64) -> Result<f64> {
    check_wendland(t, r)?;
    let u = t / r;
    if u >= 1.0 {
        return Ok(0.0);
    }
    Ok((1.0 - u).powi(4) * (1.0 + 4.0 * u))
}

/// `d/dt phi_{3,1}(t) = -20 (t/r) (1 - t/r)^3 / r`.
pub fn wendland_phi31_deriv(t: f64, r: f64) -> Result<f64> {
    check_wendland(t, r)?;
    let u = t / r;
    if u >= 1.0 {
        return Ok(0.0);
    }
    Ok(-20.0 * u * (1.0 - u).powi(3) / r)
}

fn check_wendland(t: f64, r: f64) -> Result<()> {
    check_radius(t)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("support radius {r} must be positive")));
    }
    Ok(())
}

/// `K(x, y) = phi(||x - y||_2)`.
pub fn kernel_eval(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    for p in [x, y] {
        if p.len() != spec.d() {
            return Err(Error::DimensionMismatch { expected: spec.d(), got: p.len() });
        }
    }
    let dist = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    Ok(spec.profile().value(dist))
}

/// Which function a [`RadialProfile`] samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileLabel {
    OptimalBump,
    Projection,
    Trace(usize),
    Wendland,
    ScaledBump,
}

/// Samples of a radial function on `[0, r]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub spec: KernelSpec,
    pub r: f64,
    pub ts: Vec<f64>,
    pub values: Vec<f64>,
    pub label: ProfileLabel,
}

impl RadialProfile {
    pub fn new(
        spec: KernelSpec,
        r: f64,
        ts: Vec<f64>,
        values: Vec<f64>,
        label: ProfileLabel,
    ) -> Result<Self> {
        if ts.len() != values.len() || ts.len() < 2 {
            return Err(Error::InvalidArgument("profile needs >= 2 matching samples".into()));
        }
        if ts[0] != 0.0 || ts[ts.len() - 1] != r {
            return Err(Error::InvalidArgument("profile abscissae must span [0, r]".into()));
        }
        if ts.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("profile abscissae not increasing".into()));
        }
        if label == ProfileLabel::OptimalBump && (values[0] != 1.0 || values[values.len() - 1] != 0.0) {
            return Err(Error::InvalidArgument("bump profile must run from 1 to 0".into()));
        }
        Ok(Self { spec, r, ts, values, label })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((matern_profile(0.5, 1.0).unwrap() - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(matern_profile(1.5, 0.0).unwrap(), 1.0);
        let v = matern_profile(1.5, 2.0).unwrap();
        assert!((v - 0.4060058497098381).abs() < 1e-15, "{v}");
        let v = matern_profile(2.5, 1.5).unwrap();
        assert!((v - (1.0 + 1.5 + 1.5 * 1.5 / 3.0) * (-1.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(matern_profile(1.0, 1.0).is_err());
        assert!(matern_profile(0.0, 1.0).is_err());
        assert!(matern_profile(0.75, 1.0).is_err());
        assert!(matern_profile(0.5, -1.0).is_err());
        assert!(KernelSpec::new(2, 2.0).is_err());
        assert!(KernelSpec::new(2, 1.0).is_err());
        assert!(KernelSpec::new(1, 0.5).is_err());
        assert!(KernelSpec::new(3, 2.0).is_err());
        assert!(KernelSpec::new(1, 1.5).is_err());
    }

    #[test]
    fn spec_fields() {
        let s = KernelSpec::new(2, 2.5).unwrap();
        assert_eq!(s.nu().nu(), 1.5);
        assert_eq!(s.trace_count(), 2);
        // c_{3/2} = 2^{-1/2} / Gamma(3/2) = sqrt(2/pi)
        assert!((s.cnu() - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-15);
        assert_eq!(KernelSpec::new(1, 1.0).unwrap().trace_count(), 1);
        assert_eq!(KernelSpec::new(2, 1.5).unwrap().trace_count(), 1);
        assert_eq!(KernelSpec::new(1, 3.0).unwrap().trace_count(), 3);
    }

    #[test]
    fn derivatives() {
        let e = (-1f64).exp();
        assert_eq!(matern_profile_deriv(1.5, 0.0, 1).unwrap(), 0.0);
        assert!((matern_profile_deriv(1.5, 1.0, 1).unwrap() + e).abs() < 1e-15);
        assert!((matern_profile_deriv(0.5, 1.0, 1).unwrap() + e).abs() < 1e-15);
        let t = 0.7;
        let d2 = matern_profile_deriv(1.5, t, 2).unwrap();
        assert!((d2 - (t - 1.0) * (-t).exp()).abs() < 1e-15);
        assert!(matches!(
            matern_profile_deriv(0.5, 0.0, 1),
            Err(Error::DerivativeOrder { .. })
        ));
        assert!(matern_profile_deriv(0.5, 1.0, 2).is_err());
        assert!(matern_profile_deriv(1.5, 0.0, 3).is_err());
    }

    #[test]
    fn s_derivatives_match_chain_rule() {
        // f(s) = phi(sqrt(s)); f'(s) = phi'(rho) / (2 rho)
        for n in 0..3 {
            let p = MaternProfile::new(MaternOrder::from_index(n));
            for &rho in &[0.3, 1.0, 4.0] {
                let f1 = p.derivative(rho, 1) / (2.0 * rho);
                assert!((p.s_derivative(rho, 1) - f1).abs() < 1e-14);
                let f2 = (p.derivative(rho, 2) - p.derivative(rho, 1) / rho) / (4.0 * rho * rho);
                assert!((p.s_derivative(rho, 2) - f2).abs() < 1e-13, "n={n} rho={rho}");
            }
        }
    }

    #[test]
    fn wendland() {
        assert_eq!(wendland_phi31(0.0, 1.0).unwrap(), 1.0);
        assert_eq!(wendland_phi31(1.0, 1.0).unwrap(), 0.0);
        assert_eq!(wendland_phi31(0.5, 1.0).unwrap(), 0.1875);
        assert_eq!(wendland_phi31(3.0, 1.0).unwrap(), 0.0);
        assert!(wendland_phi31(0.5, 0.0).is_err());
    }

    #[test]
    fn kernel_values() {
        let s1 = KernelSpec::new(1, 1.0).unwrap();
        assert_eq!(kernel_eval(&s1, &[0.0], &[0.0]).unwrap(), 1.0);
        assert!((kernel_eval(&s1, &[0.0], &[2.0]).unwrap() - (-2f64).exp()).abs() < 1e-16);
        let s2 = KernelSpec::new(2, 1.5).unwrap();
        let v = kernel_eval(&s2, &[0.0, 0.0], &[3.0, 4.0]).unwrap();
        assert!((v - (-5f64).exp()).abs() < 1e-17);
        assert!(matches!(
            kernel_eval(&s2, &[0.0], &[1.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn profile_validation() {
        let s = KernelSpec::new(1, 1.0).unwrap();
        let ok = RadialProfile::new(s, 1.0, vec![0.0, 1.0], vec![1.0, 0.0], ProfileLabel::OptimalBump);
        assert!(ok.is_ok());
        let bad = RadialProfile::new(s, 1.0, vec![0.0, 1.0], vec![0.9, 0.0], ProfileLabel::OptimalBump);
        assert!(bad.is_err());
        let bad = RadialProfile::new(s, 1.0, vec![0.0, 0.5], vec![1.0, 0.0], ProfileLabel::Wendland);
        assert!(bad.is_err());
    }
}
