//! Process-wide working precision.
//!
//! The precision is chosen once, before the first high-precision value is
//! created, and stays fixed for the lifetime of the process. Every cache in
//! the crate (constants, quadrature nodes, memoised sums) relies on this.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_DIGITS: u32 = 60;
pub const MIN_DIGITS: u32 = 30;

/// Extra binary digits carried beyond the requested decimal precision.
pub const GUARD_BITS: u32 = 32;

static DIGITS: OnceLock<u32> = OnceLock::new();

/// Fix the working precision in significant decimal digits.
///
/// Succeeds if the precision is not yet fixed or already equals `digits`.
pub fn set_precision_digits(digits: u32) -> Result<()> {
    if digits < MIN_DIGITS {
        return Err(Error::InvalidPrecision {
            digits,
            min: MIN_DIGITS,
        });
    }
    let current = *DIGITS.get_or_init(|| digits);
    if current != digits {
        return Err(Error::PrecisionAlreadySet {
            current,
            requested: digits,
        });
    }
    Ok(())
}

/// Working precision in decimal digits (defaults to 60 on first use).
pub fn digits() -> u32 {
    *DIGITS.get_or_init(|| DEFAULT_DIGITS)
}

/// Binary precision handed to MPFR.
pub fn bits() -> u32 {
    digits_to_bits(digits()) + GUARD_BITS
}

fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32
}
