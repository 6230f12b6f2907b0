//! `cuspkernel`: exact kernel inner products, identity checks, period tables
//! and numeric cross-checks from the command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a verification failed,
//! 3 a numeric tolerance was missed.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cuspkernel::Exec;

use table::Format;

#[derive(Debug, Parser)]
#[command(name = "cuspkernel", version, about = "Exact inner products of L-function kernels for level-one cusp forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Psi(s, w; l), the inner product <T_l D(., s), D(., w)> and Psi(l)/Psi(1).
    Psi(RunConfig),
    /// Divisor-sum identities of Ramanujan type and Niebur's formula.
    Identities(RunConfig),
    /// Exact invariant suites over a range of weights.
    Verify(RunConfig),
    /// Normalized period tables and the period-ratio consistency report.
    Periods(RunConfig),
    /// Functional equation, exact-vs-numeric and Cohen-series checks.
    Numeric(RunConfig),
}

/// Options shared by every subcommand. Each subcommand reads the ones it needs.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Weight k (even, at least 4).
    #[arg(long)]
    pub k: Option<i64>,
    /// Largest weight; selects every even k from 4 (or --k) to this value.
    #[arg(long)]
    pub kmax: Option<i64>,
    /// First kernel argument (for `numeric`: a real evaluation point).
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<f64>,
    /// Second kernel argument.
    #[arg(long)]
    pub w: Option<i64>,
    /// Use every valid (s, w) at the given weight.
    #[arg(long)]
    pub all_valid: bool,
    /// A single Hecke index l instead of 1..=lmax.
    #[arg(long)]
    pub l: Option<usize>,
    /// Largest Hecke index.
    #[arg(long, default_value_t = 50)]
    pub lmax: usize,
    /// q-expansion precision (coefficients) and number of L-series terms.
    #[arg(long, default_value_t = 60)]
    pub prec: usize,
    /// Tolerance override for the numeric checks.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn exec(&self) -> Exec {
        match self.threads {
            Some(1) => Exec::Sequential,
            _ => Exec::default(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (name, config) = match &cli.command {
        Command::Psi(c) => ("psi", c),
        Command::Identities(c) => ("identities", c),
        Command::Verify(c) => ("verify", c),
        Command::Periods(c) => ("periods", c),
        Command::Numeric(c) => ("numeric", c),
    };
    ExitCode::from(commands::run(name, config))
}
