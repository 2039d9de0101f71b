//! Exact crowding distance and the critical crowding-distance index.
//!
//! Per objective, the front is sorted ascending by that objective with ties broken by
//! position in the front. The two ends get an infinite contribution; an interior member
//! gets the gap between its neighbours divided by the objective's range over the front,
//! or 0 when that range is 0. Contributions are summed as exact rationals over the
//! least common multiple of the non-zero ranges, so equal distances compare equal.

use std::cmp::Ordering;

use num_rational::Ratio;

use crate::domain::ObjectiveVector;
use crate::error::{Error, Result};

use super::sorting::first_reaching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrowdingDistance {
    Finite(Ratio<u128>),
    Infinite,
}

impl CrowdingDistance {
    pub const ZERO: Self = CrowdingDistance::Finite(Ratio::new_raw(0, 1));

    pub fn is_positive(&self) -> bool {
        match self {
            CrowdingDistance::Infinite => true,
            CrowdingDistance::Finite(r) => *r.numer() > 0,
        }
    }

    pub fn finite(numer: u128, denom: u128) -> Self {
        CrowdingDistance::Finite(Ratio::new(numer, denom))
    }

    /// Lossy view for reporting.
    pub fn to_f64(&self) -> f64 {
        match self {
            CrowdingDistance::Infinite => f64::INFINITY,
            CrowdingDistance::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
        }
    }
}

impl Ord for CrowdingDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        use CrowdingDistance::*;
        match (self, other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinite) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for CrowdingDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Crowding distance of each member of `front`, in the order given.
pub fn crowding_distance(front: &[&ObjectiveVector]) -> Vec<CrowdingDistance> {
    let a = front.len();
    if a == 0 {
        return Vec::new();
    }
    let m = front[0].len();
    let mut infinite = vec![false; a];
    if a <= 2 {
        return vec![CrowdingDistance::Infinite; a];
    }

    let mut sorted: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut ranges = Vec::with_capacity(m);
    for j in 0..m {
        let mut order: Vec<usize> = (0..a).collect();
        // stable: equal values keep their front order
        order.sort_by_key(|&i| front[i].get(j));
        let range = (front[order[a - 1]].get(j) - front[order[0]].get(j)) as u128;
        infinite[order[0]] = true;
        infinite[order[a - 1]] = true;
        sorted.push(order);
        ranges.push(range);
    }

    let denom = ranges.iter().filter(|&&r| r > 0).fold(1u128, |l, &r| {
        (l / gcd(l, r))
            .checked_mul(r)
            .expect("common denominator of objective ranges overflows u128")
    });

    let mut numer = vec![0u128; a];
    for (j, (order, &range)) in sorted.iter().zip(&ranges).enumerate() {
        if range == 0 {
            continue;
        }
        let scale = denom / range;
        for w in order.windows(3) {
            let gap = (front[w[2]].get(j) - front[w[0]].get(j)) as u128;
            numer[w[1]] += gap * scale;
        }
    }

    (0..a)
        .map(|i| {
            if infinite[i] {
                CrowdingDistance::Infinite
            } else {
                // unreduced on purpose: a shared denominator keeps comparisons cheap
                CrowdingDistance::Finite(Ratio::new_raw(numer[i], denom))
            }
        })
        .collect()
}

/// Partition of front positions into groups of equal crowding distance, ordered by
/// strictly decreasing distance. Positions inside a group stay in increasing order.
pub fn group_by_distance(distances: &[CrowdingDistance]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..distances.len()).collect();
    order.sort_by(|&a, &b| distances[b].cmp(&distances[a]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some(g) if distances[g[0]] == distances[i] => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

/// Index of the first group at which the cumulative size reaches `d`.
pub fn critical_cd_index(group_sizes: &[usize], d: usize) -> Result<usize> {
    let total: usize = group_sizes.iter().sum();
    if d == 0 || d > total {
        return Err(Error::contract(format!(
            "slot count {d} outside [1..{total}]"
        )));
    }
    Ok(first_reaching(group_sizes, d).expect("d within range"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ovs(values: &[&[i64]]) -> Vec<ObjectiveVector> {
        values
            .iter()
            .map(|v| ObjectiveVector::new(v.to_vec()))
            .collect()
    }

    fn cd(values: &[&[i64]]) -> Vec<CrowdingDistance> {
        let owned = ovs(values);
        let refs: Vec<_> = owned.iter().collect();
        crowding_distance(&refs)
    }

    #[test]
    fn singleton_is_infinite() {
        assert_eq!(cd(&[&[1, 2]]), [CrowdingDistance::Infinite]);
    }

    #[test]
    fn omm_line_example() {
        let d = cd(&[&[0, 3], &[1, 2], &[2, 1], &[3, 0]]);
        assert_eq!(d[0], CrowdingDistance::Infinite);
        assert_eq!(d[3], CrowdingDistance::Infinite);
        assert_eq!(d[1], CrowdingDistance::finite(4, 3));
        assert_eq!(d[2], CrowdingDistance::finite(4, 3));
    }

    #[test]
    fn zero_range_objective_contributes_nothing() {
        // objective 0 is constant; objective 1 spans 0..4
        let d = cd(&[&[5, 0], &[5, 1], &[5, 2], &[5, 4]]);
        // ends of the constant objective are positions 0 and 3, which are also the
        // ends of objective 1
        assert_eq!(d[0], CrowdingDistance::Infinite);
        assert_eq!(d[3], CrowdingDistance::Infinite);
        assert_eq!(d[1], CrowdingDistance::finite(2, 4));
        assert_eq!(d[2], CrowdingDistance::finite(3, 4));
    }

    #[test]
    fn duplicates_inside_a_block_get_zero() {
        let d = cd(&[&[0, 2], &[1, 1], &[1, 1], &[1, 1], &[2, 0]]);
        // sorted by f0: 0,1,2,3,4 ; the middle copy 2 has equal neighbours in both objectives
        assert_eq!(d[2], CrowdingDistance::ZERO);
        assert!(d[1].is_positive());
        assert!(d[3].is_positive());
    }

    #[test]
    fn mixed_denominators_are_exact() {
        // ranges 3 and 2: contributions over lcm 6
        let d = cd(&[&[0, 0], &[1, 2], &[3, 1]]);
        // member 1: f0 neighbours 0 and 3 -> 3/3; f1 order 0,2,1 so member 1 is an end
        assert_eq!(d[1], CrowdingDistance::Infinite);
        let d = cd(&[&[0, 2], &[1, 1], &[3, 0], &[2, 1]]);
        // f0 order: 0,1,3,2 ; f1 order: 2,1,3,0
        // member 1: f0 gap 2-0=2 over 3; f1 gap between pos of 2 (0) and 3 (1) -> 1 over 2
        assert_eq!(d[1], CrowdingDistance::finite(2 * 2 + 3, 6));
    }

    #[test]
    fn ordering_and_grouping() {
        let d = vec![
            CrowdingDistance::finite(1, 2),
            CrowdingDistance::Infinite,
            CrowdingDistance::ZERO,
            CrowdingDistance::finite(2, 4),
            CrowdingDistance::Infinite,
        ];
        assert_eq!(group_by_distance(&d), vec![vec![1, 4], vec![0, 3], vec![2]]);
        assert!(CrowdingDistance::Infinite > CrowdingDistance::finite(1_000_000, 1));
        assert!(CrowdingDistance::finite(2, 3) > CrowdingDistance::finite(3, 5));
    }

    #[test]
    fn critical_cd_index_examples() {
        assert_eq!(critical_cd_index(&[4, 2], 4).unwrap(), 0);
        assert_eq!(critical_cd_index(&[4, 2], 5).unwrap(), 1);
        assert_eq!(critical_cd_index(&[7], 1).unwrap(), 0);
        assert_eq!(critical_cd_index(&[7], 7).unwrap(), 0);
        assert!(critical_cd_index(&[4, 2], 0).is_err());
        assert!(critical_cd_index(&[4, 2], 7).is_err());
    }
}
