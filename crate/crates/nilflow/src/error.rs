//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by geometric constructions and flow integration.
#[derive(Debug, Clone, Error)]
pub enum GeometryError {
    /// The coefficient set does not define a positive-definite metric.
    #[error("metric is not positive definite: {0}")]
    NotPositiveDefinite(String),

    /// A coframe matrix could not be inverted.
    #[error("singular coframe: {0}")]
    SingularFrame(String),

    /// Parameters outside the range an operation supports.
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    /// Invalid step size, horizon or other scalar argument.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two computation routes that must agree did not.
    #[error("independent computation routes disagree: {0}")]
    RouteMismatch(String),
}
