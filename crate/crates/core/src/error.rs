use thiserror::Error;

/// Errors raised by configuration checks and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("radius must be strictly positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("inner radius {r1} exceeds outer radius {r2}")]
    InnerExceedsOuter { r1: f64, r2: f64 },
    #[error("non-finite input: {0}")]
    NonFiniteInput(&'static str),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("quadrature did not converge on [{a}, {b}] (estimated error {error:e})")]
    NoConvergence { a: f64, b: f64, error: f64 },
    #[error("invalid beta parameters alpha={alpha}, beta={beta}")]
    InvalidParams { alpha: f64, beta: f64 },
    #[error("infeasible moments: variance {variance} must lie in (0, {bound})")]
    InfeasibleMoments { variance: f64, bound: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
