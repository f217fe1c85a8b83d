//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by library operations.
///
/// The variants map onto the CLI exit-code contract: `Domain` and
/// `Degenerate` inputs exit with 2, `Refused` preconditions with 3,
/// everything else with 1.
#[derive(Debug, Error)]
pub enum Error {
    /// Input shape is wrong (non-square matrix, mismatched lengths).
    #[error("shape error: {0}")]
    Shape(String),

    /// Input values violate a domain requirement (empty set, negative
    /// weight, index out of support, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Degenerate input that the operation explicitly rejects (a == b).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A stated precondition does not hold; the operation refuses to run
    /// rather than produce an unwarranted answer.
    #[error("precondition refused: {0}")]
    Refused(String),

    /// The input representation cannot support the operation
    /// (e.g. a distance-matrix-only space where coordinates are required).
    #[error("unsupported representation: {0}")]
    Unsupported(String),

    /// Internal solver failure with diagnostics.
    #[error("solver failure: {0}")]
    Solver(String),

    /// File parsing failure.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code for the CLI: 2 for domain errors, 3 for refused
    /// preconditions, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Shape(_)
            | Error::Domain(_)
            | Error::Degenerate(_)
            | Error::Unsupported(_)
            | Error::Parse(_) => 2,
            Error::Refused(_) => 3,
            Error::Solver(_) | Error::Io(_) => 1,
        }
    }
}
