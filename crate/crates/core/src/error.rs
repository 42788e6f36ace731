use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Mutation needs a pairing of at least 2; with pairing 1 the formal
    /// result may have rank 0.
    #[error("mutation undefined: pairing {pairing} must be at least 2")]
    MutationUndefined { pairing: BigInt },

    #[error("index {index} outside window [{lo}, {hi}]")]
    Range { index: i64, lo: i64, hi: i64 },

    #[error("table is not 1-periodic: dims({i}, {j}) differs from dims({}, {})", i + 1, j + 1)]
    PeriodicityViolation { i: i64, j: i64 },

    #[error(
        "inconclusive rank in degree {degree}: primes disagree ({rank_a} vs {rank_b}); rerun in exact mode"
    )]
    InconclusiveRank {
        degree: usize,
        rank_a: usize,
        rank_b: usize,
    },

    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    SingularCurve,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("non-integral dimension {0}")]
    NonIntegral(String),

    #[error("parse error: {0}")]
    Parse(String),
}
