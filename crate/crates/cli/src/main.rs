//! `ntopo`: compute n-norms and quotient norms, check the axioms, and run
//! the convergence suites from a JSON configuration.

mod commands;
mod config;
mod report;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ntopo::quotient::IndexSet;
use serde_json::json;

use crate::config::{RunConfig, Setup};
use crate::report::{digest, Format, Report};
use crate::verify::Suite;

const DEFAULT_TRIALS: usize = 1000;
/// Space used by `verify`, `cover` and `demo` when no config is given.
const DEFAULT_DIM: usize = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ntopo::Error),
}

#[derive(Parser)]
#[command(name = "ntopo", version, about, long_about = None)]
struct Cli {
    /// JSON run configuration: space, frame, seed, trials, output.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Random seed. Takes precedence over NTOPO_SEED, which takes precedence
    /// over the config file.
    #[arg(long, global = true, env = "NTOPO_SEED", value_name = "N")]
    seed: Option<u64>,

    /// Randomized cases per check. The sequence corpus uses a tenth of
    /// this, at least 50.
    #[arg(long, global = true, value_name = "N")]
    trials: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Standard n-norm of vectors given as `1,0,0`. Without a config the
    /// space is Euclidean, sized from the input.
    ///
    /// Write a vector starting with a minus sign as `[-1,0,0]`.
    Norm {
        #[arg(required = true)]
        vectors: Vec<String>,
    },
    /// Quotient norm of `u` for an index set such as `{1,2}`, with its
    /// class-1 breakdown. Without a config the frame is the standard basis
    /// of R^d with d taken from `u`.
    Quotient { u: String, subset: String },
    /// Minimal covering families of class-m index sets.
    Cover {
        /// Frame size, at most 64; defaults to the config arity.
        #[arg(long)]
        n: Option<usize>,
        /// Class level; all levels when omitted.
        #[arg(long)]
        m: Option<usize>,
        /// List every minimal cover.
        #[arg(long)]
        list: bool,
        /// Index set of a family to test for covering; repeatable.
        #[arg(long = "check", value_name = "SET")]
        check: Vec<String>,
    },
    /// Run a verification suite; exits 1 when any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Reproduce a worked example.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// `x_k = k e_5` in R^5 under {{1,2},{3,4}} and {{1,2},{3,4},{1,5}}.
    Counterexample {
        #[arg(long = "k", allow_negative_numbers = true)]
        k: i64,
    },
}

fn load_or(
    cli: &Cli,
    fallback: impl FnOnce() -> Result<RunConfig, CliError>,
) -> Result<Setup, CliError> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => fallback()?,
    };
    config.into_setup()
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let (setup, outcome) = match &cli.command {
        Command::Norm { vectors } => {
            let vectors = vectors
                .iter()
                .map(|v| commands::parse_vector(v))
                .collect::<Result<Vec<_>, _>>()?;
            let dim = vectors.first().map_or(0, |v| v.dim());
            let setup = load_or(&cli, || RunConfig::euclidean(dim, vectors.len()))?;
            let outcome = commands::norm(&setup, &vectors)?;
            (setup, outcome)
        }
        Command::Quotient { u, subset } => {
            let u = commands::parse_vector(u)?;
            let s: IndexSet = subset.parse()?;
            let setup = load_or(&cli, || RunConfig::euclidean(u.dim(), u.dim()))?;
            let outcome = commands::quotient(&setup, &u, &s)?;
            (setup, outcome)
        }
        Command::Cover { n, m, list, check } => {
            let setup = load_or(&cli, || RunConfig::euclidean(DEFAULT_DIM, DEFAULT_DIM))?;
            let n = n.unwrap_or(setup.frame.arity());
            let check = check
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<IndexSet>, _>>()?;
            let outcome = commands::cover(n, *m, *list, &check)?;
            (setup, outcome)
        }
        Command::Verify { suite } => {
            let setup = load_or(&cli, || RunConfig::euclidean(DEFAULT_DIM, DEFAULT_DIM))?;
            let (seed, trials) = resolve(&cli, &setup);
            let outcome = verify::verify(&setup, *suite, seed, trials)?;
            (setup, outcome)
        }
        Command::Demo {
            which: Demo::Counterexample { k },
        } => {
            let setup = load_or(&cli, || RunConfig::euclidean(5, 5))?;
            let outcome = commands::demo_counterexample(&setup, *k)?;
            (setup, outcome)
        }
    };
    let (seed, trials) = resolve(&cli, &setup);

    let inputs = json!({
        "command": outcome.command,
        "arguments": outcome.inputs,
        "config": setup.config,
        "seed": seed,
        "trials": trials,
    });
    let report = Report {
        command: outcome.command,
        inputs_digest: digest(&inputs),
        seed,
        results: outcome.results,
        failures: outcome.failures,
        trace: outcome.trace,
    };

    let configured = setup.config.output.clone().unwrap_or_default();
    let format = cli.format.or(configured.format).unwrap_or(Format::Text);
    let zero = setup.norm.config().tolerance().zero;
    let bytes = report.render(format, zero)?;
    match cli.output.as_ref().or(configured.path.as_ref()) {
        Some(path) => fs::write(path, &bytes)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| CliError::Usage(format!("cannot write report: {e}")))?,
    }

    Ok(if report.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Flag over environment over config, for the seed; flag over config for trials.
fn resolve(cli: &Cli, setup: &Setup) -> (u64, usize) {
    (
        cli.seed.or(setup.config.seed).unwrap_or(0),
        cli.trials.or(setup.config.trials).unwrap_or(DEFAULT_TRIALS),
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
