//! `tlh`: colored HOMFLY Poincaré series of positive torus links.

mod cache;
mod commands;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "tlh", version, about = "Colored HOMFLY Poincaré series of torus links T(m,n)")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Memo cache file, read before and written after the command.
    #[arg(long, global = true, env = "TLH_CACHE")]
    pub cache: Option<PathBuf>,
    /// Worker threads for multi-instance checks.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: u32,
    /// Print series as computed, without shifting to minimal exponents zero.
    #[arg(long, global = true)]
    pub raw: bool,
    /// Memo statistics on stderr.
    #[arg(long, global = true)]
    pub stats: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Poincaré series of T(m,n) colored (k,1,...,1).
    Poincare {
        m: usize,
        n: usize,
        k: usize,
        /// Also print the unknot factor that turns the reduced series into the unreduced one.
        #[arg(long, conflicts_with = "q1")]
        unreduced: bool,
        /// Specialize to Q = 1 (knots only).
        #[arg(long)]
        q1: bool,
    },
    /// Total dimension of reduced homology of a torus knot.
    Dim { m: usize, n: usize, k: usize },
    /// Checks that the Q = 1 series of T(m,n) colored k is the k-th power of the uncolored one.
    GrowthCheck { m: usize, n: usize, kmax: usize },
    /// Checks a closed form in Q^k against computed series.
    ColorshiftCheck {
        #[command(subcommand)]
        family: FamilyArg,
    },
    /// Summary of the cache file.
    CacheStats,
}

#[derive(Debug, Subcommand)]
pub enum FamilyArg {
    /// T(2,2n) colored (k,1).
    T2even {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        kmin: usize,
        #[arg(long)]
        kmax: usize,
    },
    /// T(3,3) colored (k,1,1).
    T33 {
        #[arg(long, default_value_t = 1)]
        kmin: usize,
        #[arg(long)]
        kmax: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
