use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Input violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A guard rail refused the computation (see [`crate::limits`]).
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// A theorem-backed internal assertion failed; this indicates a bug.
    #[error("internal consistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
