use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("precision must be at least {min} digits, got {digits}")]
    InvalidPrecision { digits: u32, min: u32 },

    #[error("working precision already fixed at {current} digits, cannot switch to {requested}")]
    PrecisionAlreadySet { current: u32, requested: u32 },

    #[error("cannot parse {0:?} as a decimal number")]
    Parse(String),

    #[error("argument outside the supported domain: {0}")]
    Domain(String),

    #[error("series is not invertible: {0}")]
    NotInvertible(String),

    #[error("grading bound violated at eps^{i} L^{j} (bound {bound})")]
    GradingViolation { i: i32, j: u32, bound: u32 },

    #[error("quadrature did not converge after {levels} levels (estimate {estimate}, last difference {difference})")]
    QuadratureNonConvergence {
        levels: usize,
        estimate: String,
        difference: String,
    },

    #[error("accelerated summation did not stabilise: estimates differ by {difference}, tolerance {tolerance}")]
    AccelerationNonConvergence { difference: String, tolerance: String },

    #[error("internal cross-check failed: {0}")]
    RouteMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
