use thiserror::Error;

use crate::media::PotentialKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the physical domain (non-real index, bad angle, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("operation requires a {expected:?} potential, got {found:?}")]
    KindMismatch {
        expected: PotentialKind,
        found: PotentialKind,
    },

    #[error("matching system is singular (pivot magnitude {pivot:e})")]
    SingularMatching { pivot: f64 },

    #[error("closed-form denominator degenerate (|den| = {magnitude:e})")]
    DegenerateDenominator { magnitude: f64 },

    #[error("{0}")]
    Regime(String),

    #[error("incidence within critical band at theta = {theta}: shift diverges")]
    CriticalDivergence { theta: f64 },

    #[error("analytic derivative not available for {0:?} potentials")]
    UnsupportedMethod(PotentialKind),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
