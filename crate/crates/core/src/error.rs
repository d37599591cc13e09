use thiserror::Error;

/// Errors raised by the algebra, lattice and Kummer layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input where a nonzero value is required ({0})")]
    ZeroInput(&'static str),

    #[error("operands live over different base fields")]
    BaseMismatch,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic {characteristic} divides {value}")]
    CharacteristicDivides { characteristic: u64, value: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("divisibility modulo constants is undefined for a constant element")]
    ConstantInput,

    #[error("generators are dependent modulo constants: rank {rank} < {count} generators")]
    RankDeficient { rank: usize, count: usize },

    #[error("search needs {needed} membership tests, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("no squarefree norm found for shifts up to {0}")]
    ShiftSearchFailed(i64),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroInput(_) => "E_ZERO_INPUT",
            Error::BaseMismatch => "E_BASE_MISMATCH",
            Error::NotPrime(_) => "E_NOT_PRIME",
            Error::CharacteristicDivides { .. } => "E_CHARACTERISTIC",
            Error::InvalidParameter(_) => "E_PARAMETER",
            Error::ConstantInput => "E_CONSTANT_INPUT",
            Error::RankDeficient { .. } => "E_RANK_DEFICIENT",
            Error::BudgetExceeded { .. } => "E_BUDGET",
            Error::ShiftSearchFailed(_) => "E_SHIFT_SEARCH",
            Error::Inconsistent(_) => "E_INCONSISTENT",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
