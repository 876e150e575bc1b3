use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational: '{0}'")]
    MalformedRational(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("slope undefined for rank 0")]
    ZeroRank,

    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(String),

    #[error("subobject {0} is not proper")]
    NotProper(String),

    #[error("empty interval ({lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },

    #[error("subspace basis has dependent columns")]
    DependentColumns,

    #[error("one-parameter subgroup weights sum to {0}, not 0")]
    NonzeroWeightSum(i64),

    #[error(
        "enumeration budget exceeded: {needed} > {budget}; reduce the dimensions or the field order"
    )]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("unknown {kind} '{name}' (known: {known})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        known: String,
    },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
