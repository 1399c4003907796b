use thiserror::Error;

/// Errors raised by the happy-function library.
///
/// Domain errors (bad parameters or arguments) are kept distinct from
/// arithmetic overflow so callers can report them differently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HappyError {
    #[error("base must be ≥ 2 (got {0})")]
    InvalidBase(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("search bound {bound} exceeds the configured cap {cap}")]
    BoundExceeded { bound: u64, cap: u64 },

    #[error("orbit did not repeat within {0} steps")]
    BudgetExhausted(usize),

    #[error("internal error: {0}")]
    Internal(String),
}

impl HappyError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        HappyError::Domain(msg.into())
    }

    /// True for the overflow family (including a search bound over its cap).
    pub fn is_overflow(&self) -> bool {
        matches!(self, HappyError::Overflow(_) | HappyError::BoundExceeded { .. })
    }
}

pub type Result<T, E = HappyError> = std::result::Result<T, E>;
