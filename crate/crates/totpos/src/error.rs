use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Shape or representation problems: non-square input, non-Hankel matrix, ...
    #[error("structural error: {0}")]
    Structural(String),
    /// Inputs outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Numeric failures: NaN inputs, non-convergent iterations.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// Configuration / CLI usage problems.
    #[error("usage error: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
