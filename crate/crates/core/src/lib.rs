//! Norm-minimal compactly supported functions ("bump functions") in the
//! Sobolev spaces `H^m(R^d)`, `d = 1, 2`, whose reproducing kernels are the
//! half-integer Matérn kernels.
//!
//! Among all functions in the native space that equal 1 at the origin and
//! vanish outside the ball `B_r(0)`, there is a unique one of minimal norm,
//! `b_r^*`. Its norm `beta(r)` controls lower bounds for kernel Power
//! Functions. This crate constructs `b_r^*` by projecting `K(0, .)` onto the
//! zero-trace subspace of the ball, evaluates `beta(r)`, and ships checks for
//! the scaling law `beta(r) ~ r^{d/2 - m}`, monotonicity, the Power Function
//! identity and optimality against perturbed competitors.
//!
//! ```
//! use sobolev_bumps::{BumpProblem, KernelSpec, QuadratureConfig, solve_bump};
//!
//! let spec = KernelSpec::new(1, 1.0)?;
//! let bump = solve_bump(&BumpProblem::new(spec, 1.0, QuadratureConfig::default())?)?;
//! let exact = (1.0f64 - 0.25).sinh() / 1.0f64.sinh();
//! assert!((bump.eval(0.25)? - exact).abs() < 1e-12);
//! # Ok::<(), sobolev_bumps::Error>(())
//! ```

pub mod analysis;
pub mod bump;
pub mod cli;
pub mod error;
pub mod kernels;
pub mod quadrature;

pub use bump::{
    assemble_trace_system, beta_of_r, g_j_r, kernel_kr_1d, solve_bump, translate_1d, BumpProblem,
    OptimalBump, TraceSystem, TranslateRepresenter,
};
pub use error::{Error, Result};
pub use kernels::{
    kernel_eval, matern_profile, matern_profile_deriv, wendland_phi31, KernelSpec, MaternOrder,
    ProfileLabel, RadialProfile,
};
pub use quadrature::{boundary_sum_1d, integrate_circle, BoundaryIntegrand, QuadratureConfig};
