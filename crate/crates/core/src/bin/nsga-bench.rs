//! Command-line harness: `run` executes seeded trials into a CSV, `summarize` turns a
//! trial CSV into per-cell statistics with Mann–Whitney p-values.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use balanced_nsga::experiments::{summarize_file, sweep_to_file, TrialConfig};
use balanced_nsga::{BenchmarkSpec, Error, TieBreak};

#[derive(Debug, Parser)]
#[command(
    name = "nsga-bench",
    version,
    about = "Classic vs balanced NSGA-II experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run seeded trials of one configuration and write one CSV row per trial.
    #[command(group(ArgGroup::new("population").required(true).args(["pop_size", "pop_mult"])))]
    Run {
        /// omm, lotz, ojzj, omm-m, lotz-m, ojzj-m or omm3
        #[arg(long)]
        benchmark: String,
        #[arg(long)]
        n: usize,
        /// Gap parameter (OJZJ only).
        #[arg(long)]
        k: Option<usize>,
        /// Number of objectives (required for the -m benchmarks).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        algo: String,
        #[arg(long)]
        pop_size: Option<usize>,
        /// Population size as a multiple of the Pareto front size.
        #[arg(long)]
        pop_mult: Option<f64>,
        #[arg(long)]
        runs: usize,
        #[arg(long)]
        seed: u64,
        /// Evaluation budget per trial (default 10000 * N).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize a trial CSV.
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Run {
            benchmark,
            n,
            k,
            m,
            algo,
            pop_size,
            pop_mult,
            runs,
            seed,
            budget,
            parallelism,
            out,
        } => {
            let spec = BenchmarkSpec::from_name(&benchmark, n, m, k)?;
            let algo: TieBreak = algo.parse()?;
            let mut config = match (pop_size, pop_mult) {
                (Some(size), _) => TrialConfig::new(spec, algo, size),
                (None, Some(c)) => TrialConfig::with_multiplier(spec, algo, c)?,
                (None, None) => unreachable!("clap enforces one population argument"),
            };
            config.budget = budget;
            let records = sweep_to_file(&[config], runs, seed, parallelism, &out)?;
            let covered = records.iter().filter(|r| r.covered).count();
            eprintln!(
                "{spec}: {covered}/{} runs covered the front, written to {}",
                records.len(),
                out.display()
            );
        }
        Command::Summarize { input, out } => {
            let rows = summarize_file(&input, &out)?;
            eprintln!("{} summary rows written to {}", rows.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
