use thiserror::Error;

/// Errors produced by the class, moment, bound, oracle and mean routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("modulus evaluation failed at t = {t}: h(t) = {value}")]
    Evaluation { t: f64, value: f64 },

    #[error("not integrable: {0}")]
    NotIntegrable(String),

    #[error("conjugate exponent p is required but absent")]
    ConjugateMissing,

    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),

    #[error("degenerate modulus: h(1/2) = 0")]
    DegenerateModulus,

    #[error("class mismatch: {0}")]
    ClassMismatch(String),

    #[error(
        "tolerance not reached after {subdivisions} subdivisions \
         (estimate {error_estimate:e}, requested {tolerance:e})"
    )]
    ToleranceNotReached {
        subdivisions: usize,
        error_estimate: f64,
        tolerance: f64,
    },

    #[error("integrand returned a non-finite value at x = {x}")]
    NonFiniteSample { x: f64 },
}

impl Error {
    /// True for failures of the numerical integrator rather than of the inputs.
    pub fn is_oracle_failure(&self) -> bool {
        matches!(
            self,
            Error::ToleranceNotReached { .. } | Error::NonFiniteSample { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
