//! Final tie-breakers for the critical crowding-distance group.
//!
//! Randomness consumption is fixed so seeded runs replay exactly:
//!
//! * classic: a partial Fisher–Yates shuffle of `s` steps over the group, step `i`
//!   drawing one index uniformly from `i..len`;
//! * balanced: the group is split by objective value, the value classes are visited in
//!   ascending lexicographic order of their value, and each class larger than its quota
//!   `min(|class|, floor(s/a))` gets a partial Fisher–Yates shuffle of that many steps.
//!   The unpicked members of all classes are concatenated in class order and the missing
//!   slots are filled from them with one more partial shuffle.

use std::fmt;
use std::str::FromStr;

use crate::domain::{Individual, ObjectiveVector};
use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TieBreak {
    /// Uniform sample from the critical group.
    Classic,
    /// Even per-objective-value quota, then uniform remainder fill.
    Balanced,
}

impl TieBreak {
    pub fn as_str(&self) -> &'static str {
        match self {
            TieBreak::Classic => "classic",
            TieBreak::Balanced => "balanced",
        }
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classic" => Ok(TieBreak::Classic),
            "balanced" => Ok(TieBreak::Balanced),
            other => Err(Error::config(format!(
                "unknown algorithm {other:?} (expected classic or balanced)"
            ))),
        }
    }
}

fn check_slots(s: usize, len: usize) -> Result<()> {
    if s > len {
        return Err(Error::contract(format!(
            "cannot pick {s} survivors from a group of {len}"
        )));
    }
    Ok(())
}

/// First `s` entries of `items` after `s` Fisher–Yates steps.
fn partial_shuffle(items: &mut [usize], s: usize, rng: &mut RngStream) {
    let len = items.len();
    for i in 0..s.min(len) {
        let j = rng.index_in(i, len);
        items.swap(i, j);
    }
}

/// Positions (into a group of `len`) picked by the classic tie-breaker.
pub(crate) fn random_positions(len: usize, s: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
    check_slots(s, len)?;
    let mut items: Vec<usize> = (0..len).collect();
    partial_shuffle(&mut items, s, rng);
    items.truncate(s);
    Ok(items)
}

/// Positions picked by the balanced tie-breaker from a group with the given values.
pub(crate) fn balanced_positions(
    values: &[&ObjectiveVector],
    s: usize,
    rng: &mut RngStream,
) -> Result<Vec<usize>> {
    check_slots(s, values.len())?;
    if s == 0 {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(values[b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match classes.last_mut() {
            Some(c) if values[c[0]] == values[i] => c.push(i),
            _ => classes.push(vec![i]),
        }
    }

    let quota = s / classes.len();
    let mut picked = Vec::with_capacity(s);
    let mut leftovers = Vec::new();
    for mut class in classes {
        let take = class.len().min(quota);
        if take < class.len() {
            partial_shuffle(&mut class, take, rng);
        }
        picked.extend_from_slice(&class[..take]);
        leftovers.extend_from_slice(&class[take..]);
    }
    let missing = s - picked.len();
    partial_shuffle(&mut leftovers, missing, rng);
    picked.extend_from_slice(&leftovers[..missing]);
    Ok(picked)
}

/// Uniform sample of `s` members of `group`, without replacement.
pub fn select_random(
    group: &[Individual],
    s: usize,
    rng: &mut RngStream,
) -> Result<Vec<Individual>> {
    Ok(random_positions(group.len(), s, rng)?
        .into_iter()
        .map(|i| group[i].clone())
        .collect())
}

/// Balanced sample of `s` members of `group`: up to `floor(s/a)` per objective value
/// (`a` distinct values), the rest uniformly from what is left.
pub fn select_balanced(
    group: &[Individual],
    s: usize,
    rng: &mut RngStream,
) -> Result<Vec<Individual>> {
    let values: Vec<_> = group.iter().map(Individual::objective).collect();
    Ok(balanced_positions(&values, s, rng)?
        .into_iter()
        .map(|i| group[i].clone())
        .collect())
}

pub(crate) fn positions(
    tiebreak: TieBreak,
    values: &[&ObjectiveVector],
    s: usize,
    rng: &mut RngStream,
) -> Result<Vec<usize>> {
    match tiebreak {
        TieBreak::Classic => random_positions(values.len(), s, rng),
        TieBreak::Balanced => balanced_positions(values, s, rng),
    }
}
