//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by parameter validation and truncated series evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structurally invalid parameter: wrong sign, dimension mismatch, a
    /// lower hypergeometric parameter at a non-positive integer, or an
    /// enumeration too large to compute exactly.
    #[error("bad parameter: {0}")]
    BadParameter(String),

    /// A truncated series failed the stopping rule within the term budget.
    #[error("series did not converge within {terms} terms (last |term/sum| = {last_rel:e})")]
    NonConvergent { terms: usize, last_rel: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
