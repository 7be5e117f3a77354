use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("{root} is not a root of {poly}")]
    NotARoot { root: String, poly: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration budget exceeded: search space {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("not constructible: {0}")]
    NotConstructible(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
