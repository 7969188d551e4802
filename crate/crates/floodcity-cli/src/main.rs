//! `floodcity` CLI: runs GA experiments, compares weight schemes, derives
//! weights from rating tables and verifies results against the exact
//! oracle.
//!
//! Exit codes: 0 success, 1 usage/config error, 2 runtime error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod error;
mod report;

use error::CliError;

#[derive(Parser)]
#[command(name = "floodcity", version, about = "Flood-risk city optimizer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the GA for each seed and write reports.
    Run(RunArgs),
    /// Run (or load) two configurations and compare their danger-zone
    /// patterns.
    Compare(CompareArgs),
    /// Derive component weights from a rating table.
    DeriveWeights(DeriveWeightsArgs),
    /// Print the exact optimum of a (possibly reduced) problem.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration; defaults apply if omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed(s) to run; overrides the config's seed list. Repeatable.
    #[arg(long = "seed")]
    seeds: Vec<u64>,
    /// Output directory; overrides the config's out_dir.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Built-in scheme name (aspect | einarsson); overrides the config.
    #[arg(long)]
    scheme: Option<String>,
    /// Omit timestamps so outputs are byte-reproducible.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// JSON configuration of side A.
    #[arg(long)]
    config_a: Option<PathBuf>,
    /// JSON configuration of side B.
    #[arg(long)]
    config_b: Option<PathBuf>,
    /// Built-in scheme for side A (default: aspect).
    #[arg(long, conflicts_with = "result_a")]
    scheme_a: Option<String>,
    /// Built-in scheme for side B (default: einarsson).
    #[arg(long, conflicts_with = "result_b")]
    scheme_b: Option<String>,
    /// Saved run directory for side A (from a prior `run`).
    #[arg(long, conflicts_with = "config_a")]
    result_a: Option<PathBuf>,
    /// Saved run directory for side B (from a prior `run`).
    #[arg(long, conflicts_with = "config_b")]
    result_b: Option<PathBuf>,
    /// Seed(s) to compare; overrides both configs' seed lists.
    #[arg(long = "seed")]
    seeds: Vec<u64>,
    /// Output directory (default: out_dir of config A, or "out").
    #[arg(long)]
    out: Option<PathBuf>,
    /// Mean-separation margin for Similar/Inverted/Mixed tags.
    #[arg(long)]
    margin: Option<f64>,
    /// Omit timestamps so outputs are byte-reproducible.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct DeriveWeightsArgs {
    /// Rating-table JSON; defaults to the built-in reference table.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// JSON run configuration; the optional "oracle" block selects active
    /// components, the fixed level and the mode.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Search mode: per-cell `separable` (any size) or `flat` full
    /// enumeration (capped).
    #[arg(long, value_parser = ["separable", "flat"])]
    mode: Option<String>,
    /// Also run the GA on the same problem and print the optimality gap.
    #[arg(long)]
    check_ga: bool,
    /// Seed for --check-ga (default: first config seed).
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version are not errors; everything else is usage (1)
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(args) => commands::run::execute(args),
        Command::Compare(args) => commands::compare::execute(args),
        Command::DeriveWeights(args) => commands::derive_weights::execute(args),
        Command::Oracle(args) => commands::oracle::execute(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
        Err(CliError::Runtime(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
