use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("negative radius: {0}")]
    NegativeRadius(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tolerance not met: refinement disagreement {disagreement:e} exceeds {tolerance:e} (estimate {estimate})")]
    ToleranceNotMet {
        estimate: f64,
        disagreement: f64,
        tolerance: f64,
    },
    #[error("boundary system is singular (condition number {condition:e})")]
    SingularBoundarySystem { condition: f64 },
    #[error("grid too coarse: Richardson error estimate {estimate:e} exceeds {limit:e}")]
    GridTooCoarse { estimate: f64, limit: f64 },
    #[error("failed to bracket root {index} of the frequency equation")]
    RootBracketFailure { index: usize },
    #[error("energy grew by {growth:e} (relative) over the last check window ending at step {step}")]
    StabilityViolation { growth: f64, step: usize },
}

impl Error {
    /// Variant name, stable for use in CLI messages.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidDimension(_) => "InvalidDimension",
            Error::DomainError(_) => "DomainError",
            Error::NegativeRadius(_) => "NegativeRadius",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::ToleranceNotMet { .. } => "ToleranceNotMet",
            Error::SingularBoundarySystem { .. } => "SingularBoundarySystem",
            Error::GridTooCoarse { .. } => "GridTooCoarse",
            Error::RootBracketFailure { .. } => "RootBracketFailure",
            Error::StabilityViolation { .. } => "StabilityViolation",
        }
    }

    /// True for errors caused by invalid inputs rather than numerical failure.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidDimension(_)
                | Error::DomainError(_)
                | Error::NegativeRadius(_)
                | Error::InvalidArgument(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
