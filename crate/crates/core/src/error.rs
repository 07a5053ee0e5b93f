use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A size or order parameter is outside the supported range.
    #[error("{what} = {requested} is outside the supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        requested: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid set partition: {0}")]
    InvalidPartition(String),

    /// A joint table is missing an entry that is required by downward closure.
    #[error("table is not downward closed: missing entry {0}")]
    NotClosed(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The variance of a variable that must be nondegenerate is zero.
    #[error("nondegeneracy violated: Var({0}) = 0")]
    Degenerate(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid generator parameters: {0}")]
    InvalidParameter(String),

    #[error("insufficient sample: {0}")]
    InsufficientSample(String),

    #[error("invalid angle grid: {0}")]
    InvalidGrid(String),

    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
