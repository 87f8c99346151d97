use thiserror::Error;

use crate::verify::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the bound {bound}")]
    FieldTooLarge { p: u64, k: u32, bound: u64 },
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid field descriptor {0:?}: expected \"p\" or \"p^k\"")]
    BadDescriptor(String),

    #[error("index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("row {index} out of range ({len} rows)")]
    RowOutOfRange { index: usize, len: usize },
    #[error("column {index} out of range ({len} columns)")]
    ColOutOfRange { index: usize, len: usize },
    #[error("matrix of {rows}x{cols} exceeds the side bound {bound}")]
    MatrixTooLarge {
        rows: usize,
        cols: usize,
        bound: usize,
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not normalized (first row and column must be all +1)")]
    NotNormalized,
    #[error("{0}")]
    Shape(String),

    #[error("q = {0} is not congruent to 3 mod 4")]
    UnsupportedOrder(u64),
    #[error("input matrix has order {found}, expected {expected}")]
    WrongOrder { expected: usize, found: usize },
    #[error("input is not a Hadamard matrix: {0}")]
    NotHadamard(Violation),
    #[error("labeling is not a bijection onto the field: {0}")]
    BadLabeling(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
