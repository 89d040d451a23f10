use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not skew-symmetrizable: {reason}")]
    NonSkewSymmetrizable { reason: String },

    #[error("mutation index {k} out of range for rank {n}")]
    IndexOutOfRange { k: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("budget of {budget} exceeded before the search terminated")]
    BudgetExceeded { budget: usize },

    #[error("cone rays are linearly dependent")]
    RaysDependent,

    #[error("cone {cone} straddles the wall x_{k} = 0", k = .k + 1)]
    ConeStraddlesWall { cone: usize, k: usize },

    #[error("rank-2 parameters with bc = {product} are of finite type and have no limiting rays")]
    FiniteTypeNoLimit { product: String },

    #[error("invalid rank-2 parameters: {0}")]
    InvalidRank2(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
