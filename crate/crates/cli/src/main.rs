use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eids::Limits;
use eids_cli::{render, run, Command, Failure, Mode, RunConfig, Status, VarietyDescriptor};

/// Determinantal singularities: EIDS checks, polar multiplicities, Milnor
/// numbers and hyperplane genericity.
///
/// Exit status: 0 success, 1 algebra failure, 2 unreadable input or usage,
/// 3 hypothesis violated (not determinantal, not EIDS, bad hyperplane),
/// 4 inconclusive, 5 resource limit (caps from EIDS_MAX_BASIS,
/// EIDS_MAX_DEGREE, EIDS_MAX_PAIRS).
#[derive(Parser)]
#[command(name = "eids", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Hyperplanes sampled by searches.
    #[arg(long, global = true, default_value_t = 8)]
    trials: usize,
    /// Attempts per random choice before giving up.
    #[arg(long, global = true, default_value_t = 16)]
    retries: usize,
    /// Random integer coefficients lie in [-B, B].
    #[arg(long, global = true, default_value_t = 7, value_name = "B")]
    coeff_bound: i64,
    /// Worker threads for trial parallelism; reports do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Rational)]
    mode: Mode,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Render the report as indented text instead of JSON.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Determinantal type, codimension, smoothability class and EIDS verdict.
    Check { descriptor: PathBuf },
    /// Multiplicity chain, Euler characteristics and Milnor numbers.
    Invariants {
        descriptor: PathBuf,
        /// Also verify the Le-Greuel identity with independent computations.
        #[arg(long)]
        le_greuel: bool,
        /// Cut the top level by this named hyperplane instead of a random one.
        #[arg(long, value_name = "NAME")]
        hyperplane: Option<String>,
    },
    /// Strong generality of a named hyperplane, or a search for the minimal section.
    Genericity {
        descriptor: PathBuf,
        #[arg(long, value_name = "NAME", required_unless_present = "search")]
        hyperplane: Option<String>,
        #[arg(long)]
        search: bool,
    },
    /// The swallowtail surface: tangent cone and plane sections.
    DemoSwallowtail,
}

fn execute(cli: Cli) -> Result<Status, Failure> {
    let limits = Limits::from_env().map_err(|e| Failure::new(Status::Usage, e))?;
    let o = &cli.opts;
    if let Some(jobs) = o.jobs {
        if jobs == 0 {
            return Err(Failure::new(Status::Usage, "--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::new(Status::Failure, format!("thread pool: {e}")))?;
    }
    let config = RunConfig {
        seed: o.seed,
        trials: o.trials,
        retries: o.retries,
        coeff_bound: o.coeff_bound,
        mode: o.mode,
        limits,
    };
    let (command, path) = match cli.command {
        Cmd::Check { descriptor } => (Command::Check, Some(descriptor)),
        Cmd::Invariants { descriptor, le_greuel, hyperplane } => {
            (Command::Invariants { le_greuel, hyperplane }, Some(descriptor))
        }
        Cmd::Genericity { descriptor, hyperplane, search } => {
            (Command::Genericity { hyperplane, search }, Some(descriptor))
        }
        Cmd::DemoSwallowtail => (Command::DemoSwallowtail, None),
    };
    let descriptor = path.as_deref().map(VarietyDescriptor::read).transpose()?;
    let outcome = run(&command, descriptor.as_ref(), &config)?;
    let body = if o.text {
        render::text(&serde_json::to_value(&outcome.report).expect("reports serialize"))
    } else {
        outcome.report.to_json()
    };
    match &o.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::new(Status::Failure, format!("{}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let status = match execute(Cli::parse()) {
        Ok(status) => status,
        Err(f) => {
            eprintln!("eids: {f}");
            f.status
        }
    };
    ExitCode::from(status.code())
}
