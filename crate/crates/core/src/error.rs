use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller supplied arguments that violate an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),
    /// Division by zero or a similar arithmetic impossibility.
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    /// An exhaustive enumeration would exceed its configured budget.
    #[error("capacity error: {what} needs {needed} items but the budget is {budget}")]
    Capacity {
        what: String,
        needed: u128,
        budget: u64,
    },
    /// A mathematical hypothesis required by the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Malformed input text.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn capacity(what: impl Into<String>, needed: u128, budget: u64) -> Self {
        Error::Capacity {
            what: what.into(),
            needed,
            budget,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
