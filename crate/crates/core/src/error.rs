use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A resource cap was hit; the computation has no mathematical answer.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("not smooth: {0}")]
    NotSmooth(String),

    #[error("no witness found within bound {bound}: {what}")]
    NoWitness { what: String, bound: u32 },

    #[error("straightening failed: {0}")]
    Straighten(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
