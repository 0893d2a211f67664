//! Crate-wide error type.
//!
//! Failures are deliberately loud: bad parameters, out-of-range coordinates,
//! and blown enumeration budgets all surface as distinct variants instead of
//! silently clamped results.

/// Errors produced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The requested field order is not a prime number.
    #[error("{0} is not prime; only prime field orders are supported")]
    NotPrime(u64),

    /// An entry buffer does not match the requested matrix shape.
    #[error("expected {rows}x{cols} = {} entries, got {got}", rows * cols)]
    ShapeMismatch { rows: usize, cols: usize, got: usize },

    /// Two operands have incompatible shapes or fields.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A 1-based coordinate lies outside `1..=max`.
    #[error("coordinate {coord} out of range 1..={max}")]
    CoordOutOfRange { coord: usize, max: usize },

    /// A generator matrix was rejected because its rows are dependent.
    #[error("generator rows are linearly dependent (rank {rank} < {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },

    /// Parameters lie outside the documented domain of an operation.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// An exhaustive enumeration would exceed its configured budget.
    #[error("{what} needs {needed} but the configured limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    /// The zero code has no minimum distance.
    #[error("the zero code has no minimum distance")]
    ZeroCode,

    /// Randomized search gave up after the allotted number of attempts.
    #[error("no acceptable completion found after {attempts} attempts; try a larger field, another seed, or more attempts")]
    RetryExhausted { attempts: u32 },

    /// An internal postcondition failed; this indicates a bug.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    /// A matrix file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
