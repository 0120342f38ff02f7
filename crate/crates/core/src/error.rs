use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate or reserved symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("order does not eliminate the requested variables")]
    NotElimination,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("inconsistent model: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}
