//! Non-dominated sorting and the critical rank.

use crate::domain::{Individual, ObjectiveVector};
use crate::error::{Error, Result};

/// A combined population annotated with non-dominated ranks.
///
/// `fronts[j]` holds the member indices of rank `j + 1` in increasing index order;
/// the fronts partition `0..members.len()`.
#[derive(Debug, Clone)]
pub struct RankedPopulation {
    members: Vec<Individual>,
    rank_of: Vec<usize>,
    fronts: Vec<Vec<usize>>,
}

impl RankedPopulation {
    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    /// Rank of member `i`, starting at 1.
    pub fn rank_of(&self, i: usize) -> usize {
        self.rank_of[i]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank_of
    }

    pub fn fronts(&self) -> &[Vec<usize>] {
        &self.fronts
    }

    pub fn front_sizes(&self) -> Vec<usize> {
        self.fronts.iter().map(Vec::len).collect()
    }

    /// Index into [`fronts`](Self::fronts) of the critical front for target size `n`.
    pub fn critical_rank(&self, n: usize) -> Result<usize> {
        critical_rank(&self.front_sizes(), n)
    }
}

pub fn nondominated_sort(members: Vec<Individual>) -> Result<RankedPopulation> {
    if members.is_empty() {
        return Err(Error::contract("cannot sort an empty population"));
    }
    let values: Vec<&ObjectiveVector> = members.iter().map(Individual::objective).collect();
    let m = values[0].len();
    if values.iter().any(|v| v.len() != m) {
        return Err(Error::contract("objective vectors of differing lengths"));
    }
    let rank_of = rank_values(&values);
    let depth = rank_of.iter().copied().max().unwrap_or(0);
    let mut fronts = vec![Vec::new(); depth];
    for (i, &r) in rank_of.iter().enumerate() {
        fronts[r - 1].push(i);
    }
    Ok(RankedPopulation {
        members,
        rank_of,
        fronts,
    })
}

/// Ranks (starting at 1) of the given objective values.
///
/// Members sharing an objective value always share a rank, so the peeling runs over the
/// distinct values only.
pub(crate) fn rank_values(values: &[&ObjectiveVector]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(values[b]));
    let mut distinct: Vec<&ObjectiveVector> = Vec::new();
    let mut class_of = vec![0usize; values.len()];
    for &i in &order {
        if distinct.last() != Some(&values[i]) {
            distinct.push(values[i]);
        }
        class_of[i] = distinct.len() - 1;
    }

    let d = distinct.len();
    let mut dominators = vec![0usize; d];
    let mut dominated: Vec<Vec<usize>> = vec![Vec::new(); d];
    for a in 0..d {
        for b in a + 1..d {
            if distinct[a].strictly_dominates(distinct[b]) {
                dominated[a].push(b);
                dominators[b] += 1;
            } else if distinct[b].strictly_dominates(distinct[a]) {
                dominated[b].push(a);
                dominators[a] += 1;
            }
        }
    }

    let mut class_rank = vec![0usize; d];
    let mut current: Vec<usize> = (0..d).filter(|&c| dominators[c] == 0).collect();
    let mut rank = 1;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &c in &current {
            class_rank[c] = rank;
            for &e in &dominated[c] {
                dominators[e] -= 1;
                if dominators[e] == 0 {
                    next.push(e);
                }
            }
        }
        current = next;
        rank += 1;
    }
    class_of.iter().map(|&c| class_rank[c]).collect()
}

/// Smallest index `j` with `sizes[..j]` summing below `n` and `sizes[..=j]` reaching it.
pub fn critical_rank(front_sizes: &[usize], n: usize) -> Result<usize> {
    first_reaching(front_sizes, n).ok_or_else(|| {
        Error::contract(format!(
            "population of {} cannot supply {n} survivors",
            front_sizes.iter().sum::<usize>()
        ))
    })
}

/// Shared by the critical rank and the critical crowding-distance index.
pub(crate) fn first_reaching(sizes: &[usize], target: usize) -> Option<usize> {
    if target == 0 {
        return None;
    }
    let mut total = 0;
    for (j, &s) in sizes.iter().enumerate() {
        total += s;
        if total >= target {
            return Some(j);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::BitString;

    fn pop(values: &[&[i64]]) -> Vec<Individual> {
        values
            .iter()
            .map(|v| {
                Individual::new(
                    BitString::zeros(1).unwrap(),
                    ObjectiveVector::new(v.to_vec()),
                )
            })
            .collect()
    }

    #[test]
    fn small_examples() {
        let r = nondominated_sort(pop(&[&[2, 1], &[1, 2], &[1, 1]])).unwrap();
        assert_eq!(r.ranks(), [1, 1, 2]);
        let r = nondominated_sort(pop(&[&[4, 4], &[4, 4], &[4, 4]])).unwrap();
        assert_eq!(r.ranks(), [1, 1, 1]);
        let r = nondominated_sort(pop(&[&[1, 1], &[3, 3], &[2, 2]])).unwrap();
        assert_eq!(r.ranks(), [3, 1, 2]);
        assert_eq!(r.fronts(), [vec![1], vec![2], vec![0]]);
    }

    #[test]
    fn empty_population_is_rejected() {
        assert!(nondominated_sort(Vec::new()).is_err());
    }

    #[test]
    fn critical_rank_examples() {
        assert_eq!(critical_rank(&[5, 3], 5).unwrap(), 0);
        assert_eq!(critical_rank(&[3, 3], 5).unwrap(), 1);
        assert_eq!(critical_rank(&[6], 5).unwrap(), 0);
        assert!(critical_rank(&[2, 2], 5).is_err());
    }
}
