//! Error type shared by the whole library.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic mismatch: needs p = {expected}, field has p = {found}")]
    CharacteristicMismatch { expected: u64, found: u64 },
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("not a square: {0}")]
    NotASquare(String),
    #[error("element is not separating (derivative vanishes)")]
    NotSeparating,
    #[error("degenerate projective transformation (determinant zero)")]
    DegenerateGamma,
    #[error("precision exhausted (cap {cap} terms)")]
    PrecisionExhausted { cap: i64 },
    #[error("element is not pseudotame at {place}")]
    NotPseudotame { place: String },
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("sieve requires odd characteristic")]
    OddCharacteristicOnly,
    #[error("section space dimension too small")]
    DimensionTooSmall,
    #[error("even ramification index blocks the half-ramification divisor")]
    OddIndexRequired,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
