use thiserror::Error;

/// Errors produced by the constraint engine.
///
/// All cell, row and component indices carried here are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition at cell {cell}: {reason}")]
    InvalidPartition { cell: usize, reason: String },

    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    /// A vector handed to the sign function had a zero component.
    #[error("sign function not applicable: zero component at index {index}")]
    NotApplicable { index: usize },

    #[error("odd reconstruction component {value} at cell {cell}")]
    ParityViolation { cell: usize, value: i64 },

    #[error("instance too large for brute force: {size} candidates exceeds the bound of {bound}")]
    TooLarge { size: u128, bound: u128 },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("self-check failed: {0}")]
    SelfCheck(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
