//! Working-precision real arithmetic, a minimal complex type, and the
//! constants every other module is built from.

mod bernoulli;
mod complex;
mod constants;
mod harmonic;
pub(crate) mod memo;
pub mod precision;
mod real;

pub use bernoulli::bernoulli;
pub use complex::ComplexPair;
pub use constants::{
    constants, eta_int, eta_with_budget, euler_gamma, zeta_hi, zeta_int, ConstantTable,
    GAMMA_EM_CUTOFF,
};
pub(crate) use constants::li_half_series;
pub use harmonic::{harmonic, polygamma_int};
pub use real::ExtReal;
