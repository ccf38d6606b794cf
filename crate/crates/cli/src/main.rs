//! `semibound` command line: moment-bound constants, randomized verification
//! suites, bounds for user-supplied pairs, and the Schrödinger experiments.
//!
//! Exit status: 0 all checks passed, 1 configuration or domain error,
//! 2 an inequality/identity violation was detected.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::verify::VerifyMode;

#[derive(Parser)]
#[command(
    name = "semibound",
    about = "Eigenvalue moment bounds from Schatten norms of semigroup differences",
    version
)]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output directory for JSON/CSV artifacts.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the gamma-dependent bound constants.
    Constants {
        /// Comma-separated list of moment orders.
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<f64>,
        /// Quadrature tolerance (default 1e-8).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Randomized identity / inequality-chain verification.
    Verify {
        /// identity-tr, identity-hs, chain-tr or chain-hs.
        #[arg(long)]
        mode: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<f64>,
        #[arg(long)]
        seed: u64,
        /// Override the per-evaluation quadrature tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Bounds for a pair of operators from matrix text files.
    Bound {
        /// Matrix file for A (text format: `dim n` then n rows).
        #[arg(long)]
        a: PathBuf,
        /// Matrix file for B.
        #[arg(long)]
        b: PathBuf,
        /// Semigroup time.
        #[arg(long)]
        t: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<f64>,
        /// Also bound the number of eigenvalues below -s.
        #[arg(long)]
        s: Option<f64>,
    },
    /// Full bound report for a potential configuration.
    Schrodinger {
        #[arg(long)]
        config: PathBuf,
    },
    /// Scaled-family comparison against the Lieb-Thirring baseline.
    ScalingScan {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated list of scale parameters.
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(jobs) = cli.jobs {
        // ignore failure: the pool can only be initialized once
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }

    let result = match &cli.command {
        Command::Constants { gamma, tol } => commands::constants::run(gamma, *tol, &cli.out),
        Command::Verify {
            mode,
            dim,
            trials,
            gamma,
            seed,
            tol,
        } => match VerifyMode::parse(mode) {
            Ok(m) => commands::verify::run(m, *dim, *trials, gamma, *seed, *tol, &cli.out),
            Err(e) => Err(e),
        },
        Command::Bound { a, b, t, gamma, s } => {
            commands::bound::run(a, b, *t, gamma, *s, &cli.out)
        }
        Command::Schrodinger { config } => commands::schrodinger::run(config, &cli.out),
        Command::ScalingScan { config, mu } => commands::scaling::run(config, mu, &cli.out),
    };

    match result {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
