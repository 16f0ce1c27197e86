use alloc::string::String;

use crate::algebra::Rat;
use crate::engine::ModelKind;

/// Failures raised by the algebra, the genus recursion, the count
/// extraction and the brute-force oracle.
///
/// Every variant except [`Error::MissingGenus`] and the precondition
/// variants indicates that an exact identity which must hold did not,
/// i.e. a bug somewhere in the pipeline rather than bad user input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("partial fractions need at most two distinct poles, got {0}")]
    TooManyPoles(usize),

    #[error("negative power of t ({0}) where a pole-free value at t = 0 is required")]
    NegativeTPower(i64),

    #[error("simple pole coefficient {coefficient} at 1 - {k}t would integrate to a logarithm")]
    SimplePole { k: u32, coefficient: Rat },

    #[error("{model} genus {genus} is not in the table")]
    MissingGenus { model: ModelKind, genus: usize },

    #[error("{model} genus {genus}: coefficient of t^{degree} is {value}, not an integer")]
    NonIntegerCoefficient {
        model: ModelKind,
        genus: usize,
        degree: usize,
        value: Rat,
    },

    #[error("{model} genus {genus}: support [{low}, {high}] outside [{min}, {max}]")]
    DegreeBoundViolation {
        model: ModelKind,
        genus: usize,
        low: usize,
        high: usize,
        min: usize,
        max: usize,
    },

    #[error("{model} genus {genus}: {what} is not divisible by {by}")]
    Indivisible {
        model: ModelKind,
        genus: usize,
        what: &'static str,
        by: &'static str,
    },

    #[error("{model} genus {genus}: invariant violated: {detail}")]
    Invariant {
        model: ModelKind,
        genus: usize,
        detail: String,
    },

    #[error("{model} genus {genus}: count at n = {n} is {value}, not an integer")]
    NonIntegerCount {
        model: ModelKind,
        genus: usize,
        n: usize,
        value: Rat,
    },

    #[error("{model} genus {genus}: count at n = {n} is negative")]
    NegativeCount {
        model: ModelKind,
        genus: usize,
        n: usize,
    },

    #[error("reversion series has order {have}, {need} required")]
    ReversionTooShort { have: usize, need: usize },

    #[error("inexact division in {context}")]
    InexactDivision { context: String },

    #[error("Euler characteristic gives non-integral or negative genus ({context})")]
    BadGenus { context: String },

    #[error("oracle size {size} outside 1..={max}")]
    OracleBound { size: usize, max: usize },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
