//! Crate-wide error type: input validation, numerical breakdown, and
//! root-bracketing failures are the only ways library calls can fail.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("validation: {0}")]
    Validation(String),
    /// An iterative routine failed to meet its convergence contract.
    #[error("numeric: {0}")]
    Numeric(String),
    /// A search (e.g. root bracketing) found nothing in its domain.
    #[error("not found: {0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
