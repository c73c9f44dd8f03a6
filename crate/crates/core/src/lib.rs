//! High-precision verification toolkit for two asymptotic problems: the
//! large-`n` expansion of `I(n) = ∫_0^1 (x^n + (1-x)^n)^{1/n} dx`, and the
//! coefficient asymptotics of `Li_m(1) / (Li_m(1) - Li_m(z))`.
//!
//! Every quantity is computed at a process-wide decimal precision (60 digits
//! by default, see [`numeric::precision`]) and cross-checked against an
//! independent route: quadrature against closed forms, accelerated direct
//! summation against Euler-sum identities, exact series division against
//! singularity analysis.

pub mod checks;
pub mod coeffs;
pub mod error;
pub mod euler_sums;
pub mod integral;
pub mod numeric;
pub mod polylog;
pub mod quadrature;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::{ComplexPair, ExtReal};
