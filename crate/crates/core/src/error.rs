//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Precondition violation: bad parameter, empty profile, out-of-range order.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A profile was used with a plan built on a different grid.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A quadrature or transform self-check failed to reach its tolerance.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    /// An iterative search could not converge or bracket its target.
    #[error("search failure: {0}")]
    SearchFailure(String),

    /// Unsupported dimension/scheme combination.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
