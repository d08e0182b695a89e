//! `cubic-hecke`: command-line front end for the verification harness.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::cache::Cache;

#[derive(Parser, Debug)]
#[command(
    name = "cubic-hecke",
    version,
    about = "Cubic Hecke characters over Q(w) and family averages of their L-functions"
)]
pub struct Cli {
    /// Cache directory; overrides the CACHE_DIR environment variable.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (0 or absent: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Family primes pi ≡ 1 (mod 9) of norm <= limit as CSV `a,b,norm,splitting`.
    Sieve {
        #[arg(long)]
        limit: String,
        #[arg(long)]
        split_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cubic residue symbol (a/n)_3, printed as 0, 1, w or w^2.
    Symbol {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Gauss sum g_K(k, n), printed as `re,im`.
    Gauss {
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// g_K(1, pi) for every family prime of norm <= limit as CSV `a,b,norm,re,im`.
    GaussBatch {
        #[arg(long)]
        limit: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// L(s, chi_pi), printed as `re,im`.
    Lvalue {
        #[arg(long, allow_hyphen_values = true)]
        pi: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Use the Dirichlet character n -> (n/pi)_3 over Q.
        #[arg(long)]
        q_side: bool,
    },
    /// Zeros of L(1/2 + it, chi_pi) with |t| <= T as CSV `ordinate,refined_error`.
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        pi: String,
        #[arg(long = "T")]
        t: f64,
        #[arg(long)]
        q_side: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A family moment as a JSON report.
    Moment {
        /// ratios, first, negative or logderiv
        #[arg(long)]
        kind: String,
        #[arg(long = "X")]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long)]
        q_side: bool,
        #[arg(long, default_value = "bump")]
        weight: String,
        /// Drop the inert family members on the Hecke side.
        #[arg(long)]
        split_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-prime contributions as CSV.
        #[arg(long)]
        dump_terms: Option<PathBuf>,
    },
    /// One-level density with the Fejér pair of support a, as a JSON report.
    Density {
        #[arg(long = "X")]
        x: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        q_side: bool,
        #[arg(long, default_value = "bump")]
        weight: String,
        #[arg(long)]
        split_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Acceptance battery with one PASS/FAIL line per criterion.
    Verify {
        /// core or all
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads.filter(|&n| n > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let dir = cli.cache_dir.clone().or_else(|| std::env::var_os("CACHE_DIR").map(PathBuf::from));
    let cache = Cache::new(dir);
    match commands::dispatch(cli.command, &cache) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
