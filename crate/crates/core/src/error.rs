use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidType(String),

    #[error("invalid root: {0}")]
    InvalidRoot(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("order does not respect addition of positive roots: {0}")]
    OrderNotAdditive(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("basis scope mismatch")]
    ScopeMismatch,

    #[error("p-power operation undefined: {0}")]
    PPower(String),

    #[error("roots do not commute: {0}")]
    NotCommuting(String),

    #[error("budget exceeded: {needed} candidates needed (or processed), budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("input outside recipe hypotheses: {0}")]
    OutsideRecipe(String),

    #[error("generator action leaves the point set: {0}")]
    NotClosed(String),

    #[error("bad prime: {0}")]
    BadPrime(String),
}
