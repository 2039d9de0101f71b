//! Pareto-front coverage and the incomparable-set bound.

use std::collections::HashSet;

use crate::benchmarks::{BenchmarkSpec, Family, ObjectiveFunction, ParetoFront};
use crate::domain::{Individual, ObjectiveVector};

/// Which Pareto-front values have been seen in any population so far.
#[derive(Debug, Clone)]
pub struct CoverageTracker {
    target: ParetoFront,
    covered: HashSet<ObjectiveVector>,
}

impl CoverageTracker {
    pub fn new(target: ParetoFront) -> Self {
        Self {
            target,
            covered: HashSet::new(),
        }
    }

    /// Adds every front value present in `population`. Values off the front are ignored.
    pub fn update_coverage(&mut self, population: &[Individual]) {
        for x in population {
            if self.target.contains(x.objective()) && !self.covered.contains(x.objective()) {
                self.covered.insert(x.objective().clone());
            }
        }
    }

    pub fn target(&self) -> &ParetoFront {
        &self.target
    }

    pub fn covered(&self) -> &HashSet<ObjectiveVector> {
        &self.covered
    }

    pub fn covered_count(&self) -> usize {
        self.covered.len()
    }

    pub fn is_complete(&self) -> bool {
        self.covered.len() == self.target.len()
    }
}

/// Number of distinct front values present in `population` right now.
pub fn population_coverage(front: &ParetoFront, population: &[Individual]) -> usize {
    let mut seen = vec![false; front.len()];
    for x in population {
        if let Some(i) = front.position(x.objective()) {
            seen[i] = true;
        }
    }
    seen.into_iter().filter(|&b| b).count()
}

/// Upper bound `S` on the size of a set of pairwise incomparable objective values.
///
/// `(n'+1)^(m/2)` for OneMinMax and OJZJ blocks, `(n'+1)^(m-1)` for LOTZ blocks,
/// the front size for the bi- and three-objective forms.
pub fn incomparable_set_bound(spec: &BenchmarkSpec) -> u128 {
    let m = spec.m();
    if m <= 3 {
        return spec.front_size() as u128;
    }
    let base = spec.block_len() as u128 + 1;
    match spec.family() {
        Family::OneMinMax | Family::Ojzj => base.pow((m / 2) as u32),
        Family::Lotz => base.pow((m - 1) as u32),
    }
}

/// Smallest population size `S + 4n + 2m` for which the many-objective runtime
/// guarantees of the balanced algorithm apply.
pub fn min_population_size(spec: &BenchmarkSpec) -> u128 {
    incomparable_set_bound(spec) + 4 * spec.n() as u128 + 2 * spec.m() as u128
}
