//! Runtime checks of the selection guarantees, run as a [`GenerationObserver`].
//!
//! * at most `2m` members per objective value of the critical front have positive
//!   crowding distance;
//! * balanced tie-breaking keeps at least `min(max(floor(C/S) - 2m, 0), count(A))`
//!   members of every value `A` of the critical front, where `C` survivors come from a
//!   critical front with `S` distinct values;
//! * optionally, every value of the first front (restricted to a given Pareto front)
//!   is still present in the next population;
//! * optionally, the population maximum of one objective never decreases.

use std::collections::HashSet;

use crate::benchmarks::ParetoFront;
use crate::domain::ObjectiveVector;

use super::{GenerationObserver, RankedPopulation, SelectionOutcome, TieBreak};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    PositiveCrowding {
        generation: usize,
        value: ObjectiveVector,
        count: usize,
        bound: usize,
    },
    Retention {
        generation: usize,
        value: ObjectiveVector,
        kept: usize,
        bound: usize,
    },
    LostValue {
        generation: usize,
        value: ObjectiveVector,
    },
    Regression {
        generation: usize,
        objective: usize,
        before: i64,
        after: i64,
    },
}

#[derive(Debug, Clone)]
pub struct LemmaChecker {
    m: usize,
    tiebreak: TieBreak,
    survival: Option<Option<ParetoFront>>,
    monotone: Option<usize>,
    last_max: Option<i64>,
    generation: usize,
    violations: Vec<Violation>,
}

impl LemmaChecker {
    pub fn new(m: usize, tiebreak: TieBreak) -> Self {
        Self {
            m,
            tiebreak,
            survival: None,
            monotone: None,
            last_max: None,
            generation: 0,
            violations: Vec::new(),
        }
    }

    /// Also require every first-front value to survive.
    pub fn with_survival(mut self) -> Self {
        self.survival = Some(None);
        self
    }

    /// Also require every first-front value lying on `front` to survive.
    pub fn with_front_survival(mut self, front: ParetoFront) -> Self {
        self.survival = Some(Some(front));
        self
    }

    /// Also require the population maximum of `objective` to be non-decreasing.
    pub fn with_monotone_objective(mut self, objective: usize) -> Self {
        self.monotone = Some(objective);
        self
    }

    pub fn generations(&self) -> usize {
        self.generation
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl GenerationObserver for LemmaChecker {
    fn observe(&mut self, ranked: &RankedPopulation, outcome: &SelectionOutcome) {
        let generation = self.generation;
        self.generation += 1;
        let audit = &outcome.audit;
        let cap = 2 * self.m;

        for v in &audit.values {
            if v.positive_cd > cap {
                self.violations.push(Violation::PositiveCrowding {
                    generation,
                    value: v.value.clone(),
                    count: v.positive_cd,
                    bound: cap,
                });
            }
        }

        if self.tiebreak == TieBreak::Balanced {
            let share = audit.slots / audit.values.len();
            for v in &audit.values {
                let bound = share.saturating_sub(cap).min(v.in_front);
                if v.kept < bound {
                    self.violations.push(Violation::Retention {
                        generation,
                        value: v.value.clone(),
                        kept: v.kept,
                        bound,
                    });
                }
            }
        }

        if let Some(filter) = &self.survival {
            let next: HashSet<&ObjectiveVector> = outcome
                .next_population
                .iter()
                .map(|x| x.objective())
                .collect();
            let first: HashSet<&ObjectiveVector> = ranked.fronts()[0]
                .iter()
                .map(|&i| ranked.members()[i].objective())
                .collect();
            for v in first {
                let relevant = filter.as_ref().is_none_or(|f| f.contains(v));
                if relevant && !next.contains(v) {
                    self.violations.push(Violation::LostValue {
                        generation,
                        value: v.clone(),
                    });
                }
            }
        }

        if let Some(j) = self.monotone {
            let now = outcome
                .next_population
                .iter()
                .map(|x| x.objective().get(j))
                .max()
                .expect("population is never empty");
            if let Some(before) = self.last_max.filter(|&b| now < b) {
                self.violations.push(Violation::Regression {
                    generation,
                    objective: j,
                    before,
                    after: now,
                });
            }
            self.last_max = Some(now);
        }
    }
}
