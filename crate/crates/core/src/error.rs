use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("arrow matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, expected: usize, found: usize },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid dimension vector: {0}")]
    InvalidDimensionVector(String),

    #[error("invariants need at least two vertices, got {0}")]
    TooFewVertices(usize),

    #[error("index is undefined: {{d, i}} vanishes at every vertex")]
    ZeroIndex,

    #[error("internal consistency: {0}")]
    Inconsistent(String),

    #[error("invalid partial-sum instance: {0}")]
    InvalidInstance(String),

    #[error("instance budget exceeded: {estimated} > {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
