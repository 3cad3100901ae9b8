use thiserror::Error;

/// Errors raised by field arithmetic, linear algebra, enumeration and the
/// code searches.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("unsupported field size {p}^{e} (need 1 <= e and q <= 65536)")]
    FieldOutOfRange { p: u32, e: u32 },

    #[error("element {value} does not belong to GF({q})")]
    ElementOutOfRange { value: u32, q: u32 },

    #[error("zero has no multiplicative inverse")]
    InverseOfZero,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("invalid index tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} requires {needed} steps but the budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        budget: u64,
    },

    #[error("projective system has no points")]
    EmptySystem,

    #[error("vector is not the Plücker vector of a subspace")]
    NotOnGrassmannian,

    #[error("membership tests disagree on point {0}")]
    MembershipDisagreement(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn budget(what: &'static str, needed: impl ToString, budget: u64) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            budget,
        }
    }
}
