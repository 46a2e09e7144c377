use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid point: symbol {symbol} at coordinate {coord} is not below q = {q}")]
    InvalidPoint { coord: usize, symbol: u8, q: usize },

    #[error("index {index} out of range for a cube of {size} points")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("unsupported alphabet size {0} (expected 2 or 4)")]
    UnsupportedAlphabet(usize),

    #[error("operation requires a binary truth table, got q = {0}")]
    NotBinary(usize),

    #[error("order {order} out of range for arity {n}")]
    OrderOutOfRange { order: usize, n: usize },

    #[error(
        "dimension mismatch: expected (q = {expected_q}, n = {expected_n}), got (q = {q}, n = {n})"
    )]
    DimensionMismatch {
        expected_q: usize,
        expected_n: usize,
        q: usize,
        n: usize,
    },

    #[error("truth table has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("invalid splitting: {0}")]
    InvalidSplitting(String),

    #[error("invalid direction code: {0}")]
    InvalidCode(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: {what} supports n <= {max}, got n = {n}")]
    Capacity {
        what: &'static str,
        max: usize,
        n: usize,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
