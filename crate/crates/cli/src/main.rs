//! Command-line driver for the graphlet-orbit link-prediction toolkit.
//!
//! Four subcommands cover the workflow end to end: `orbits` tabulates node
//! and pair orbit degrees, `run` trains and evaluates a model over repeated
//! protocol runs, `explain` attributes a finished run's predictions with
//! exact Shapley values, and `domains` analyses a corpus of networks into
//! signatures, a 2D embedding, clustering statistics, and winning rates.
//!
//! Every artifact-producing invocation writes a manifest, and identical
//! inputs reproduce identical data outputs byte for byte at any thread
//! count. Exit codes: 0 success, 1 usage, 2 data error, 3 validation or
//! oracle failure.

mod config;
mod domains;
mod error;
mod explain;
mod manifest;
mod orbits;
mod run;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use config::ConfigFile;
use error::{CliError, CliResult, EXIT_USAGE};

/// Environment variable supplying the default worker thread count.
const THREADS_ENV: &str = "ORBITLINK_THREADS";

#[derive(Parser)]
#[command(
    name = "orbitlink",
    version,
    about = "Graphlet-orbit link prediction: orbit tables, training runs, Shapley explanations, corpus analyses"
)]
struct Cli {
    /// Worker threads for parallel stages; defaults to ORBITLINK_THREADS or
    /// all cores. Results are identical at any thread count.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// JSON config file with flat keys mirroring the flags; flags override.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate node or pair orbit degrees as CSV.
    Orbits(orbits::OrbitsArgs),
    /// Train and evaluate a link predictor over repeated protocol runs.
    Run(run::RunArgs),
    /// Explain a finished run with exact Shapley attributions.
    Explain(explain::ExplainArgs),
    /// Analyse a corpus: signatures, 2D embedding, clustering, winning rates.
    Domains(domains::DomainsArgs),
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<()> {
    let config = ConfigFile::load(cli.config.as_deref())?;
    let threads = resolve_threads(cli.threads, &config)?;
    if let Some(count) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(count)
            .build_global()
            .map_err(|err| CliError::Usage(format!("cannot configure {count} threads: {err}")))?;
    }
    match cli.command {
        Command::Orbits(args) => orbits::execute(args, &config, threads),
        Command::Run(args) => run::execute(args, &config, threads),
        Command::Explain(args) => explain::execute(args, &config, threads),
        Command::Domains(args) => domains::execute(args, &config, threads),
    }
}

/// Thread count resolution: flag, then config, then environment.
fn resolve_threads(flag: Option<usize>, config: &ConfigFile) -> CliResult<Option<usize>> {
    let resolved = match flag.or(config.count("threads")?) {
        Some(count) => Some(count),
        None => match std::env::var(THREADS_ENV) {
            Ok(text) => Some(text.parse::<usize>().map_err(|_| {
                CliError::Usage(format!(
                    "{THREADS_ENV} must be a positive integer, got {text:?}"
                ))
            })?),
            Err(_) => None,
        },
    };
    if resolved == Some(0) {
        return Err(CliError::Usage(
            "thread count must be at least 1".to_string(),
        ));
    }
    Ok(resolved)
}
