//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by construction, diagonalization, propagation, and analysis.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    /// A physical parameter violates its domain (non-positive energy, bad cutoff, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A numerical routine failed or did not meet its accuracy contract.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Two dressed states claimed the same bare label (near-degenerate spectrum).
    #[error("ambiguous dressed-state labeling: {0}")]
    Labeling(String),

    /// The requested operation is not defined for this schedule (e.g. two-tone
    /// input to a one-tone analysis).
    #[error("unsupported schedule: {0}")]
    UnsupportedSchedule(String),

    /// Requested quantity is outside the implemented analytic order.
    #[error("out of scope: {0}")]
    OutOfScope(String),

    /// A phase is undefined because its reference matrix element vanishes.
    #[error("undefined phase: {0}")]
    UndefinedPhase(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
