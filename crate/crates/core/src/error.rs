use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A checked `i64` operation left the representable range.
    #[error("arithmetic range exceeded")]
    Overflow,

    #[error("invalid modulus {0}: expected {1}")]
    InvalidModulus(i64, &'static str),

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: i64, modulus: i64 },

    /// A search or enumeration hit one of its configured caps.
    #[error("budget exceeded: {what} limit {limit}")]
    BudgetExceeded { what: &'static str, limit: u64 },

    #[error("limit {limit} exceeds the configured memory cap {cap}")]
    MemoryCap { limit: u64, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable tag used in the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Overflow => "arithmetic_range",
            Error::InvalidModulus(..) => "invalid_modulus",
            Error::NotInvertible { .. } => "not_invertible",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::MemoryCap { .. } => "memory_cap",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}
