//! Singularity analysis for `S_0(z) = Li_m(1) / (Li_m(1) - Li_m(z))`.

mod asymptotic;
pub mod pipeline;
pub mod transfer;

pub use asymptotic::AsymptoticExpansion;
pub use pipeline::{
    asym_sn, compare_table, derive_d, derive_s, exact_sn, CoeffPipelineResult, CompareRow,
};
pub use transfer::{asym_lkn, compute_g, exact_g, exact_lkn, exact_lkn_table};
