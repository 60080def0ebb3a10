use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic must be 0 or an odd prime, got {0}")]
    BadCharacteristic(u64),

    #[error("invalid variable list: {0}")]
    BadVariables(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    #[error("denominator {0} is not invertible modulo {1}")]
    NotInvertible(u64, u64),

    #[error("coordinate index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid elementary operation: {0}")]
    BadOperation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("certificate transport through operations of type {0} is verification-only")]
    UnsupportedTransport(u8),

    #[error("empty search budget")]
    EmptyBudget,

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
