//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("resource guard tripped: {0}")]
    ResourceGuard(String),

    #[error("rank-deficient matrix: {0}")]
    RankDeficient(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("only a conjecture: {0}")]
    ConjectureOnly(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 usage, 2 invariant violation, 3 resource guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParam(_) | Error::ConjectureOnly(_) => 1,
            Error::ResourceGuard(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
