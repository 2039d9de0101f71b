//! The NSGA-II generational loop with a pluggable final tie-breaker.
//!
//! One generation: `N` offspring by standard bit mutation of uniformly chosen parents,
//! non-dominated sorting of the `2N` combined individuals, crowding distance on the
//! critical front, and selection of the last slots from the critical crowding-distance
//! group with either the classic or the balanced tie-breaker.

mod crowding;
mod lemmas;
mod sorting;
mod tiebreak;

use std::collections::BTreeMap;

pub use crowding::{critical_cd_index, crowding_distance, group_by_distance, CrowdingDistance};
pub use lemmas::{LemmaChecker, Violation};
pub use sorting::{critical_rank, nondominated_sort, RankedPopulation};
pub use tiebreak::{select_balanced, select_random, TieBreak};

use crate::benchmarks::ObjectiveFunction;
use crate::domain::{uniform_bitstring, Individual, ObjectiveVector, StandardBitMutation};
use crate::error::{Error, Result};
use crate::oracle::population_coverage;
use crate::rng::RngStream;

/// What happened to one objective value of the critical front during selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueAudit {
    pub value: ObjectiveVector,
    /// Members of the critical front with this value.
    pub in_front: usize,
    /// Of those, members with positive crowding distance.
    pub positive_cd: usize,
    /// Of those, members in the critical crowding-distance group.
    pub in_critical_group: usize,
    /// Members with this value taken from the critical front into the next population.
    pub kept: usize,
    /// Of `kept`, members taken by the tie-breaker from the critical group.
    pub kept_from_group: usize,
}

/// Bookkeeping of one selection, enough to check the retention guarantees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionAudit {
    /// Rank of the critical front, starting at 1.
    pub critical_rank: usize,
    /// Survivors taken from fronts of smaller rank.
    pub earlier: usize,
    /// Survivors taken from the critical front.
    pub slots: usize,
    /// Size of the critical crowding-distance group.
    pub critical_group_size: usize,
    /// Survivors chosen by the tie-breaker; 0 when the critical front fits entirely.
    pub tie_slots: usize,
    /// One entry per distinct value of the critical front, ascending by value.
    pub values: Vec<ValueAudit>,
}

#[derive(Debug, Clone)]
pub struct SelectionOutcome {
    pub next_population: Vec<Individual>,
    pub audit: SelectionAudit,
}

/// Receives every generation's ranked combined population and selection result.
pub trait GenerationObserver {
    fn observe(&mut self, ranked: &RankedPopulation, outcome: &SelectionOutcome);
}

impl GenerationObserver for () {
    fn observe(&mut self, _: &RankedPopulation, _: &SelectionOutcome) {}
}

/// Result of a run of the generational loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    /// The population covered the whole Pareto front before the budget ran out.
    pub covered: bool,
    /// Generations after initialization.
    pub iterations: u64,
    pub evaluations: u64,
    /// Largest number of Pareto-front values present in any single population.
    pub best_coverage: usize,
    pub front_size: usize,
}

impl RunOutcome {
    pub fn best_coverage_fraction(&self) -> f64 {
        self.best_coverage as f64 / self.front_size as f64
    }
}

pub struct Nsga2<'a, F: ObjectiveFunction> {
    problem: &'a F,
    population_size: usize,
    tiebreak: TieBreak,
    mutation: StandardBitMutation,
}

impl<'a, F: ObjectiveFunction> Nsga2<'a, F> {
    pub fn new(problem: &'a F, population_size: usize, tiebreak: TieBreak) -> Result<Self> {
        if population_size == 0 {
            return Err(Error::config("population size must be at least 1"));
        }
        Ok(Self {
            problem,
            population_size,
            tiebreak,
            mutation: StandardBitMutation::new(problem.n())?,
        })
    }

    pub fn population_size(&self) -> usize {
        self.population_size
    }

    pub fn tiebreak(&self) -> TieBreak {
        self.tiebreak
    }

    fn individual(&self, genotype: crate::domain::BitString) -> Individual {
        let objective = self.problem.evaluate_unchecked(&genotype);
        Individual::new(genotype, objective)
    }

    /// `N` uniform random individuals.
    pub fn initial_population(&self, rng: &mut RngStream) -> Vec<Individual> {
        (0..self.population_size)
            .map(|_| self.individual(uniform_bitstring(self.problem.n(), rng).expect("n >= 1")))
            .collect()
    }

    /// `N` offspring; each draws a parent index, then mutates it bit by bit.
    pub fn offspring(&self, parents: &[Individual], rng: &mut RngStream) -> Vec<Individual> {
        (0..self.population_size)
            .map(|_| {
                let parent = &parents[rng.index(parents.len())];
                self.individual(self.mutation.apply(parent.genotype(), rng))
            })
            .collect()
    }

    /// Reduces a combined population to `N` survivors.
    pub fn select(
        &self,
        combined: Vec<Individual>,
        rng: &mut RngStream,
    ) -> Result<(RankedPopulation, SelectionOutcome)> {
        let n = self.population_size;
        debug_assert!(combined
            .iter()
            .all(|x| self.problem.evaluate_unchecked(x.genotype()) == *x.objective()));

        let ranked = nondominated_sort(combined)?;
        let sizes = ranked.front_sizes();
        let jstar = critical_rank(&sizes, n)?;
        let earlier: usize = sizes[..jstar].iter().sum();
        let slots = n - earlier;

        let members = ranked.members();
        let front = &ranked.fronts()[jstar];
        let values: Vec<&ObjectiveVector> = front.iter().map(|&i| members[i].objective()).collect();
        let cd = crowding_distance(&values);
        let groups = group_by_distance(&cd);
        let group_sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
        let cstar = critical_cd_index(&group_sizes, slots)?;
        let before: usize = group_sizes[..cstar].iter().sum();
        let s = slots - before;
        let critical_group = &groups[cstar];

        let (picks, tie_slots) = if s == critical_group.len() {
            (critical_group.clone(), 0)
        } else {
            let group_values: Vec<_> = critical_group.iter().map(|&p| values[p]).collect();
            let picks = tiebreak::positions(self.tiebreak, &group_values, s, rng)?
                .into_iter()
                .map(|q| critical_group[q])
                .collect();
            (picks, s)
        };

        let mut next = Vec::with_capacity(n);
        for f in &ranked.fronts()[..jstar] {
            next.extend(f.iter().map(|&i| members[i].clone()));
        }
        let mut kept = vec![false; front.len()];
        let mut from_group = vec![false; front.len()];
        for &p in groups[..cstar].iter().flatten() {
            kept[p] = true;
        }
        for &p in &picks {
            kept[p] = true;
            from_group[p] = true;
        }
        for &p in groups[..cstar].iter().flatten().chain(&picks) {
            next.push(members[front[p]].clone());
        }
        debug_assert_eq!(next.len(), n);

        let mut in_group = vec![false; front.len()];
        for &p in critical_group {
            in_group[p] = true;
        }
        let mut per_value: BTreeMap<&ObjectiveVector, ValueAudit> = BTreeMap::new();
        for (p, v) in values.iter().enumerate() {
            let entry = per_value.entry(v).or_insert_with(|| ValueAudit {
                value: (*v).clone(),
                in_front: 0,
                positive_cd: 0,
                in_critical_group: 0,
                kept: 0,
                kept_from_group: 0,
            });
            entry.in_front += 1;
            entry.positive_cd += cd[p].is_positive() as usize;
            entry.in_critical_group += in_group[p] as usize;
            entry.kept += kept[p] as usize;
            entry.kept_from_group += from_group[p] as usize;
        }

        let audit = SelectionAudit {
            critical_rank: jstar + 1,
            earlier,
            slots,
            critical_group_size: critical_group.len(),
            tie_slots,
            values: per_value.into_values().collect(),
        };
        Ok((
            ranked,
            SelectionOutcome {
                next_population: next,
                audit,
            },
        ))
    }

    pub fn step(&self, population: &[Individual], rng: &mut RngStream) -> Result<SelectionOutcome> {
        self.step_observed(population, rng, &mut ())
    }

    pub fn step_observed(
        &self,
        population: &[Individual],
        rng: &mut RngStream,
        observer: &mut dyn GenerationObserver,
    ) -> Result<SelectionOutcome> {
        if population.len() != self.population_size {
            return Err(Error::contract(format!(
                "population has {} members, expected {}",
                population.len(),
                self.population_size
            )));
        }
        let mut combined = population.to_vec();
        combined.extend(self.offspring(population, rng));
        let (ranked, outcome) = self.select(combined, rng)?;
        observer.observe(&ranked, &outcome);
        Ok(outcome)
    }

    /// Runs until the population covers the Pareto front or the next generation would
    /// exceed `budget` evaluations. Initialization costs `N` evaluations, every
    /// generation another `N`.
    pub fn run(
        &self,
        rng: &mut RngStream,
        budget: u64,
        observer: &mut dyn GenerationObserver,
    ) -> Result<RunOutcome> {
        let n = self.population_size as u64;
        if budget < n {
            return Err(Error::config(format!(
                "budget of {budget} evaluations cannot initialize a population of {n}"
            )));
        }
        let front = self.problem.pareto_front();
        let mut population = self.initial_population(rng);
        let mut evaluations = n;
        let mut iterations = 0;
        let mut best = population_coverage(&front, &population);
        while best < front.len() && evaluations + n <= budget {
            population = self
                .step_observed(&population, rng, observer)?
                .next_population;
            evaluations += n;
            iterations += 1;
            let now = population_coverage(&front, &population);
            best = best.max(now);
            if now == front.len() {
                break;
            }
        }
        Ok(RunOutcome {
            covered: best == front.len(),
            iterations,
            evaluations,
            best_coverage: best,
            front_size: front.len(),
        })
    }
}
