use std::fmt;

use thiserror::Error;

use crate::linalg::FieldTag;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax or shape error in a quiver or representation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("unknown field `{0}` (expected Q or F<p>)")]
    UnknownField(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldTag, FieldTag),

    #[error("{0} is not invertible in {1}")]
    NotInvertible(String, FieldTag),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("length mismatch: expected {expected} coordinates, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} out of range 1..={vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("representations live on different quivers")]
    QuiverMismatch,

    #[error("map for arrow {arrow} has shape {found_rows}x{found_cols}, expected {rows}x{cols}")]
    MapShape {
        arrow: String,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },

    #[error("{0} is not a positive real root")]
    NotPositiveRealRoot(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("formula/cokernel disagreement: dim Hom - <x,y> = {formula}, cokernel has dimension {cokernel}")]
    ExtDisagreement { formula: i64, cokernel: usize },

    #[error("{0} requires a prime field")]
    NeedsPrimeField(&'static str),

    #[error("undecided: {combinations} endomorphisms exceed the search budget of {budget}")]
    BudgetExceeded { combinations: u128, budget: u64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}
