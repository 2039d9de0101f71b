use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use rayon::prelude::*;

use crate::benchmarks::{BenchmarkSpec, ObjectiveFunction};
use crate::error::{Error, Result};
use crate::nsga2::{GenerationObserver, Nsga2, RunOutcome, TieBreak};
use crate::rng::{derive_trial_seed, RngStream};

use super::record::{write_records, RunRecord};

/// Default evaluation budget per trial, as a multiple of the population size.
pub const DEFAULT_BUDGET_FACTOR: u64 = 10_000;

/// One point of an experiment plan.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub spec: BenchmarkSpec,
    pub algo: TieBreak,
    pub population_size: usize,
    /// Multiplier `c` when the population size was given as `c * M`.
    pub pop_mult: Option<f64>,
    /// Evaluation budget; defaults to `DEFAULT_BUDGET_FACTOR * N`.
    pub budget: Option<u64>,
}

impl TrialConfig {
    pub fn new(spec: BenchmarkSpec, algo: TieBreak, population_size: usize) -> Self {
        Self {
            spec,
            algo,
            population_size,
            pop_mult: None,
            budget: None,
        }
    }

    /// Population size `round(c * M)` for Pareto-front size `M`.
    pub fn with_multiplier(spec: BenchmarkSpec, algo: TieBreak, multiplier: f64) -> Result<Self> {
        if !(multiplier.is_finite() && multiplier > 0.0) {
            return Err(Error::config(format!(
                "invalid population multiplier {multiplier}"
            )));
        }
        let size = (multiplier * spec.front_size() as f64).round() as usize;
        if size == 0 {
            return Err(Error::config(format!(
                "multiplier {multiplier} gives an empty population"
            )));
        }
        Ok(Self {
            pop_mult: Some(multiplier),
            ..Self::new(spec, algo, size)
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
            .unwrap_or(DEFAULT_BUDGET_FACTOR * self.population_size as u64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size == 0 {
            return Err(Error::config("population size must be at least 1"));
        }
        if self.budget() < self.population_size as u64 {
            return Err(Error::config(format!(
                "budget {} is smaller than the population size {}",
                self.budget(),
                self.population_size
            )));
        }
        Ok(())
    }

    fn record(&self, seed: u64, outcome: &RunOutcome) -> RunRecord {
        RunRecord {
            benchmark: self.spec.name().to_string(),
            n: self.spec.n(),
            m: self.spec.m(),
            k: self.spec.k(),
            algo: self.algo.to_string(),
            population_size: self.population_size,
            pop_mult: self.pop_mult,
            seed,
            iterations: outcome.iterations,
            evaluations: outcome.evaluations,
            covered: outcome.covered,
        }
    }
}

/// One seeded run, with the observer seeing every generation.
pub fn run_trial_detailed(
    config: &TrialConfig,
    seed: u64,
    observer: &mut dyn GenerationObserver,
) -> Result<(RunRecord, RunOutcome)> {
    config.validate()?;
    let algo = Nsga2::new(&config.spec, config.population_size, config.algo)?;
    let outcome = algo.run(&mut RngStream::new(seed), config.budget(), observer)?;
    Ok((config.record(seed, &outcome), outcome))
}

pub fn run_trial(
    spec: &BenchmarkSpec,
    algo: TieBreak,
    population_size: usize,
    seed: u64,
    budget: u64,
) -> Result<RunRecord> {
    let config = TrialConfig::new(*spec, algo, population_size).with_budget(budget);
    Ok(run_trial_detailed(&config, seed, &mut ())?.0)
}

/// Runs `runs` trials of every configuration and returns the records sorted by
/// configuration, then seed. Trial `t` of configuration `c` uses seed
/// `derive_trial_seed(base_seed, c, t)`, so results do not depend on scheduling.
pub fn sweep(
    plan: &[TrialConfig],
    runs: usize,
    base_seed: u64,
    parallelism: usize,
) -> Result<Vec<RunRecord>> {
    if plan.is_empty() {
        return Err(Error::config("empty experiment plan"));
    }
    for c in plan {
        c.validate()?;
    }
    let jobs: Vec<(usize, u64)> = (0..plan.len())
        .flat_map(|c| (0..runs).map(move |t| (c, derive_trial_seed(base_seed, c as u64, t as u64))))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
    let mut results: Vec<(usize, RunRecord)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(c, seed)| run_trial_detailed(&plan[c], seed, &mut ()).map(|(r, _)| (c, r)))
            .collect::<Result<_>>()
    })?;
    results.sort_by_key(|(c, r)| (*c, r.seed));
    Ok(results.into_iter().map(|(_, r)| r).collect())
}

/// [`sweep`] followed by writing the CSV to `out`.
pub fn sweep_to_file(
    plan: &[TrialConfig],
    runs: usize,
    base_seed: u64,
    parallelism: usize,
    out: &Path,
) -> Result<Vec<RunRecord>> {
    let records = sweep(plan, runs, base_seed, parallelism)?;
    let io_err = |source| Error::Io {
        path: out.to_path_buf(),
        source,
    };
    let file = File::create(out).map_err(io_err)?;
    write_records(BufWriter::new(file), &records).map_err(|e| Error::Io {
        path: out.to_path_buf(),
        source: e.into(),
    })?;
    Ok(records)
}
