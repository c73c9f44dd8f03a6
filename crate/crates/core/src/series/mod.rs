//! Truncated power series and the `(eps, L)` Laurent algebra.

mod bivariate;
mod power;

pub use bivariate::{BivariatePoly, MIN_EPS_DEGREE};
pub use power::PowerSeries;
