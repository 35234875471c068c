use thiserror::Error;

/// Errors produced while building kernels, integrating traces or solving for
/// bump functions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid kernel parameters: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("derivative of order {order} is not available at t = {t} (smoothness limit {max})")]
    DerivativeOrder { order: usize, t: f64, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("quadrature did not converge: last two estimates {last} and {previous}")]
    NonConvergence { last: f64, previous: f64 },

    #[error("integrand returned a non-finite value at {at}")]
    NonFinite { at: f64 },

    #[error("trace system is not positive definite")]
    SingularSystem,

    #[error("linear solve residual {residual:e} exceeds {limit:e}")]
    ResidualCheck { residual: f64, limit: f64 },

    #[error("boundary condition {order} violated: |lambda(g_r)| = {value:e} > {limit:e}")]
    BoundaryCheck { order: usize, value: f64, limit: f64 },

    #[error("g_r(0) = {0:e} is not positive")]
    NonPositiveG0(f64),

    #[error("argument outside domain: {0}")]
    OutOfDomain(String),

    #[error("Gram matrix is singular")]
    SingularGram,
}

pub type Result<T> = std::result::Result<T, Error>;
