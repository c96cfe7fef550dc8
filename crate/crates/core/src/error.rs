use thiserror::Error;

use crate::words::Index;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("word {0:?} does not encode an index (must be nonempty and end with B)")]
    NotIndexEncoding(String),
    #[error("weight {weight} exceeds the configured maximum {max}")]
    WeightLimit { weight: u32, max: u32 },
    #[error("index ({0}) is not admissible (last part must exceed 1)")]
    NotAdmissible(Index),
    #[error("arity mismatch: surjection expects ({expected_k}, {expected_l}), got ({k}, {l})")]
    ArityMismatch {
        expected_k: usize,
        expected_l: usize,
        k: usize,
        l: usize,
    },
    #[error("truncation caps differ: {0} vs {1}")]
    CapMismatch(u32, u32),
    #[error("series has a nonzero term of degree 0 in {0}; division by the monomial diverges")]
    NotDivisible(char),
    #[error("truncation cap exhausted")]
    CapExhausted,
    #[error("differential equation branch {case} does not apply to {function}")]
    OdeCaseMismatch { case: String, function: String },
    #[error("weight must be at least 4 for convergent double shuffle relations, got {0}")]
    WeightTooSmall(u32),
    #[error("one-form lives on chart U{found}, expected U{expected}")]
    ChartMismatch { expected: u8, found: u8 },
    #[error("chart index must be in 1..=5, got {0}")]
    InvalidChart(u8),
    #[error("form has a non-logarithmic pole along the divisor")]
    NonLogarithmicPole,
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function denominator vanishes identically after substitution")]
    DegenerateSubstitution,
    #[error("p-adic operands have different primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("point lies outside the open unit disc (valuation {0} < 1)")]
    OutsideDisc(i64),
    #[error("tracked precision {available} is below the requested {requested}")]
    InsufficientPrecision { available: i64, requested: i64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
