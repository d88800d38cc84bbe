//! Error type shared by all modules of the crate.

/// Errors reported by the evaluation routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument was outside the documented domain of the operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A series or product evaluation hit its term budget before the
    /// requested tail bound was reached.
    #[error("tolerance not reached within {max_terms} terms: {detail}")]
    MaxTermsExceeded { max_terms: usize, detail: String },

    /// An arbitrary-precision operation produced a non-finite value.
    #[error("numeric evaluation failed: {0}")]
    Numeric(String),
}

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
