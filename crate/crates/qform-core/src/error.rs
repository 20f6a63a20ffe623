//! Error type shared by every module of the crate.
//!
//! All arithmetic is exact; anything that could silently wrap instead
//! surfaces as [`Error::Overflow`]. Data-level problems (malformed sextuple
//! text, a corpus record whose discriminant disagrees with its id, a core
//! sublattice that cannot be located) each get their own variant so that
//! callers — in particular the CLI, which maps them to distinct exit codes —
//! can tell them apart.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual input (sextuple or form identifier).
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally invalid form data (odd cross coefficient, not positive
    /// definite, bad rank, ...).
    #[error("invalid form: {0}")]
    InvalidForm(String),

    /// A corpus stream failed validation; the message names the first
    /// offending record.
    #[error("corpus error: {0}")]
    Corpus(String),

    /// Exact integer arithmetic would exceed the supported width.
    #[error("integer overflow during {0}")]
    Overflow(&'static str),

    /// No sublattice of the form matches the labeled core lattice.
    #[error("core sublattice not found: {0}")]
    CoreNotFound(String),

    /// A branch table is inconsistent (guards fail to cover, or overlap, or
    /// reference an unusable multiplier).
    #[error("recipe error: {0}")]
    Recipe(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
