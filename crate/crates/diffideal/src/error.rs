//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by ring construction, arithmetic, and the analyses built on
/// top of them.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Two operands were built over different rings.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// Division by the zero polynomial or zero rational function.
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// An operation received an argument outside its domain
    /// (for example the zero polynomial where a nonzero one is required).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A rescaling factor was zero or involved main variables.
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),

    /// A derivation image or scalar lives outside the allowed subring.
    #[error("domain error: {0}")]
    Domain(String),

    /// An ideal is not zero-dimensional where the operation requires it.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// The differential-closure iteration cap was exceeded. In a Noetherian
    /// ring this cannot happen, so it is surfaced as an internal alarm.
    #[error("differential closure did not stabilize within {rounds} rounds")]
    ClosureCapExceeded { rounds: usize },

    /// Text input failed to parse.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A documented precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse_at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
