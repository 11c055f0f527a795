//! `supervar` command-line interface.
//!
//! Every command writes sorted-key JSON, to `--out` or stdout. Exit codes:
//! 0 success, 2 a computed value disagrees with the reference tables, 1 any
//! other failure.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "supervar",
    version,
    about = "Invariants, detecting subalgebras and support varieties of Lie superalgebras"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Modular prime used for dimension counts.
    #[arg(long, global = true, env = "SUPERVAR_PRIME")]
    pub prime: Option<u64>,
    /// Output file (directory for `tables` and `pipeline`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Selects an algebra either by reference (`GL(2,2)`, `E[GL(1,1)]`) or by
/// family and parameters.
#[derive(Args, Debug, Clone, Default)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pair {
    G,
    F,
    E,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Trivial,
    Natural,
    Adjoint,
    Regular,
    Plambda,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure constants as JSON.
    Build(AlgebraArgs),
    /// Exhaustive super Jacobi and antisymmetry check.
    Validate(AlgebraArgs),
    /// Dimensions of `S^d(g₁*)^{G₀}` against the predicted series.
    Invariants {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        /// Exact rational elimination instead of two primes.
        #[arg(long)]
        exact: bool,
    },
    /// Generic point, centralizer and the detecting subalgebras.
    Detect {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Comma-separated coefficients of the generic point.
        #[arg(long)]
        coefficients: Option<String>,
    },
    /// Relative cohomology of a pair.
    Cohom {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_enum, default_value_t = Pair::G)]
        pair: Pair,
        /// `trivial` or a module JSON file.
        #[arg(long, default_value = "trivial")]
        coeff: String,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Module files.
    Module {
        #[command(subcommand)]
        command: ModuleCommand,
    },
    /// Sampled rank variety over `𝔢₁`.
    Rankvar {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Module JSON file; otherwise `--kind` over `𝔢` of the algebra.
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModuleKind::Trivial)]
        kind: ModuleKind,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Atypicality and defect.
    Atyp {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Comma-separated weight; defaults to the natural highest weight.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Reproduce a reference table, marking each row MATCH or MISMATCH.
    Tables {
        #[arg(long)]
        table: u8,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        max_degree: Option<u32>,
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// build, validate, invariants, detect, cohom and rankvar in sequence.
    Pipeline {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModuleCommand {
    /// Check the module axioms for a module file.
    Validate {
        #[arg(long)]
        file: PathBuf,
    },
    /// Write a standard module as JSON.
    Make {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_enum)]
        kind: ModuleKind,
        #[arg(long, value_enum, default_value_t = Pair::G)]
        pair: Pair,
        /// `λ` for `plambda`.
        #[arg(long)]
        lambda: Option<String>,
    },
}

/// Outcome of a command that ran to completion.
pub enum Status {
    Ok,
    Mismatch,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(2),
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
