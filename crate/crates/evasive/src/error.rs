//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Variants carry enough
//! context to act on: budget errors report the work that would have been
//! required, parse errors name the offending line.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The modulus passed where a prime was required is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Division or inversion by zero in a prime field.
    #[error("zero has no inverse in F_{p}")]
    ZeroInverse { p: u64 },

    /// Two objects that must share a modulus do not.
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    /// Two objects that must share a dimension (or shape) do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation that needs at least one element got none.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// Parameters are outside the operation's admissible range.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The requested computation exceeds the enumeration budget.
    #[error("budget exceeded: {needed} units needed, cap {cap}")]
    BudgetExceeded { needed: String, cap: u64 },

    /// No prime exists in the requested interval.
    #[error("no prime in ({lo}, {hi}]")]
    NoPrimeInRange { lo: u64, hi: u64 },

    /// No multiplier yields a representative within the requested box.
    #[error("no scalar multiple of the class of {point:?} fits in [-{bound}, {bound}]^d")]
    NoShortRepresentative { point: Vec<i64>, bound: i64 },

    /// A search that is allowed to fail (box finder, greedy witness) failed.
    #[error("witness search failed: {0}")]
    WitnessNotFound(String),

    /// A point set over the wrong domain was passed.
    #[error("domain mismatch: operation requires {required} points")]
    DomainMismatch { required: &'static str },

    /// Exact integer arithmetic overflowed the fixed-width fast path and no
    /// fallback applies.
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    /// A text-format input failed to parse.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default work budget for enumerations and searches (in elementary units:
/// flats visited, subsets extended, codewords listed).
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Checks `needed <= cap`, returning a budget error otherwise.
///
/// `needed` is a `u128` because counts are often products that overflow
/// `u64` long before they are affordable.
pub fn charge(needed: u128, cap: u64) -> Result<()> {
    if needed > cap as u128 {
        Err(Error::BudgetExceeded { needed: needed.to_string(), cap })
    } else {
        Ok(())
    }
}
