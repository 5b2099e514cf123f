//! `entdyn` — two-qubit entanglement dynamics under random interactions.
//!
//! Subcommands produce CSV series (`quenched`, `temporal`, `analytic`),
//! a one-row CSV baseline (`haar-baseline`), or a JSON report
//! (`geometry-check`). Errors land on stderr as a single JSON line and map
//! to stable exit codes: 2 validation, 3 numeric, 4 I/O.

mod cli;
mod config;
mod curves;
mod error;
mod output;
mod runs;
mod spec;
mod svg;

use clap::Parser;

use crate::cli::{Cli, Command};
use crate::error::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(threads) = cli.threads {
        // 0 keeps rayon's automatic sizing, mirroring its own convention.
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Validation(format!("cannot configure thread pool: {e}")))?;
    }
    match cli.command {
        Command::Quenched(args) => runs::run_quenched(args),
        Command::Temporal(args) => runs::run_temporal(args),
        Command::HaarBaseline(args) => runs::run_haar_baseline(args),
        Command::GeometryCheck(args) => runs::run_geometry_check(args),
        Command::Analytic(args) => runs::run_analytic(args),
    }
}

fn main() {
    // clap renders its own usage errors and exits with code 2; --help and
    // --version exit 0.
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{}", e.json_line());
        std::process::exit(e.exit_code());
    }
}
