//! `polyasym`: evaluate and cross-check the library's quantities from the
//! command line. Every number is printed as a decimal string.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "polyasym", version, about = "High-precision asymptotics and their cross-checks")]
pub struct Cli {
    /// Working precision in significant decimal digits (at least 30).
    #[arg(long, global = true, env = "POLYASYM_PRECISION", default_value_t = 60)]
    pub precision: u32,

    /// Tolerance override, as a decimal string (e.g. 1e-30).
    #[arg(long, global = true)]
    pub tol: Option<String>,

    /// Write the table to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump pi, gamma, ln 2, zeta and eta values, Li_m(1/2).
    Constants,
    /// Li_m(z) on [0, 1], or its expansion at z = 1.
    Polylog {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        z: Option<String>,
        /// Print the expansion in w = -ln z through w^K instead.
        #[arg(long)]
        expansion_order: Option<u32>,
    },
    /// Alternating Euler sum closed form, optionally against direct summation.
    Eulersum {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Sum the series directly over this many terms as well.
        #[arg(long)]
        direct: Option<usize>,
        /// Use the squared harmonic numbers (T_3 for p = 1, q = 3).
        #[arg(long)]
        quadratic: bool,
    },
    /// I(n) with its partial sums and scaled residuals.
    Integral {
        /// Comma-separated list of n values.
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
    },
    /// Closed-form integrals against quadrature.
    Corollary,
    /// Exact S_n against the truncations C_{n,k}.
    Coeffs {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 3)]
        k_max: u32,
    },
    /// The D_{i,j} table and the assembled expansion T.
    Derive {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = polyasym::coeffs::pipeline::DEFAULT_MAX_ORDER)]
        max_order: u32,
    },
    /// Every cross-check; exits 1 if any record fails.
    VerifyAll,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
