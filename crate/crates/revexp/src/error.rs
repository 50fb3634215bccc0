use thiserror::Error;

/// Errors surfaced by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("ill-formed process: {0}")]
    IllFormed(String),
    #[error("undefined synchronization: {left} vs {right}")]
    UndefinedSync { left: String, right: String },
    #[error("process is not reachable from its initial version: {0}")]
    NotReachable(String),
    #[error("state budget of {0} states exceeded")]
    StateBudget(usize),
    #[error("unknown state {0}")]
    UnknownState(usize),
    #[error("execution order does not serialize {0} and {1} consistently")]
    OrderIncomparable(String, String),
    #[error("term is not in {expected}: {term}")]
    NotNormal { expected: &'static str, term: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
