use thiserror::Error;

/// Errors reported by the numeric layers.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A precondition on an argument was violated (wrong range, zero digit
    /// count, non-positive series parameter, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input lies outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
