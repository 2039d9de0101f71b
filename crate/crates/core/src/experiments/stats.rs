//! One-sided Mann–Whitney U test.
//!
//! `U` counts the pairs `(x in a, y in b)` with `x > y`, ties counting one half
//! (equivalently `R_a - |a|(|a|+1)/2` with midranks). Small tie-free samples use the
//! exact null distribution of `U`; everything else uses the normal approximation with
//! tie-corrected variance and a continuity correction of 1/2.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Exact p-values are used when `|a| + |b|` is at most this and there are no ties.
pub const EXACT_MAX_TOTAL: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alternative {
    /// `a` tends to take smaller values than `b`.
    Less,
    /// `a` tends to take larger values than `b`.
    Greater,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    NormalApprox,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::NormalApprox => "normal_approx",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatResult {
    /// `U` of sample `a`.
    pub u_statistic: f64,
    pub p_value: f64,
    pub method: Method,
}

/// Midranks of the pooled sample, with the tie-group sizes.
fn midranks(pooled: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut ties = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]] == pooled[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        ties.push(end - start);
        start = end;
    }
    (ranks, ties)
}

/// Number of orderings of `na` a's and `nb` b's giving each value of `U`, for `U` in
/// `0..=na*nb`.
fn exact_u_counts(na: usize, nb: usize) -> Vec<f64> {
    // table[i][j] = counts for i a's and j b's; placing the largest element last:
    // an a there beats all j b's, a b there beats nothing.
    let mut table: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); nb + 1]; na + 1];
    for i in 0..=na {
        for j in 0..=nb {
            let mut counts = vec![0.0; i * j + 1];
            if i == 0 || j == 0 {
                counts[0] = 1.0;
            } else {
                for (u, c) in table[i - 1][j].iter().enumerate() {
                    counts[u + j] += c;
                }
                for (u, c) in table[i][j - 1].iter().enumerate() {
                    counts[u] += c;
                }
            }
            table[i][j] = counts;
        }
    }
    std::mem::take(&mut table[na][nb])
}

pub fn mann_whitney_one_sided(
    a: &[f64],
    b: &[f64],
    alternative: Alternative,
) -> Result<StatResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::contract(
            "Mann-Whitney U needs two non-empty samples",
        ));
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::contract(
            "Mann-Whitney U samples must not contain NaN",
        ));
    }
    let (na, nb) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let rank_sum: f64 = ranks[..na].iter().sum();
    let u = rank_sum - (na * (na + 1)) as f64 / 2.0;
    let tie_free = ties.iter().all(|&t| t == 1);

    if tie_free && na + nb <= EXACT_MAX_TOTAL {
        let counts = exact_u_counts(na, nb);
        let total: f64 = counts.iter().sum();
        let observed = u.round() as usize;
        let tail: f64 = match alternative {
            Alternative::Less => counts[..=observed].iter().sum(),
            Alternative::Greater => counts[observed..].iter().sum(),
        };
        return Ok(StatResult {
            u_statistic: u,
            p_value: (tail / total).clamp(0.0, 1.0),
            method: Method::Exact,
        });
    }

    let (fa, fb) = (na as f64, nb as f64);
    let total = fa + fb;
    let tie_term: f64 =
        ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / (total * (total - 1.0));
    let variance = fa * fb / 12.0 * ((total + 1.0) - tie_term);
    let mean = fa * fb / 2.0;
    let p_value = if variance <= 0.0 {
        1.0
    } else {
        let sd = variance.sqrt();
        let normal = Normal::standard();
        match alternative {
            Alternative::Less => normal.cdf((u + 0.5 - mean) / sd),
            Alternative::Greater => normal.sf((u - 0.5 - mean) / sd),
        }
    };
    Ok(StatResult {
        u_statistic: u,
        p_value: p_value.clamp(0.0, 1.0),
        method: Method::NormalApprox,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Enumerates every split of the pooled ranks into a group of |a| and a group of |b|.
    fn permutation_p(a: &[f64], b: &[f64], alternative: Alternative) -> f64 {
        let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
        let n = pooled.len();
        let u_of = |mask: u32| -> f64 {
            let mut u = 0.0;
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    for j in 0..n {
                        if mask >> j & 1 == 0 && pooled[i] > pooled[j] {
                            u += 1.0;
                        }
                    }
                }
            }
            u
        };
        let observed = u_of((1u32 << a.len()) - 1);
        let (mut hits, mut total) = (0u64, 0u64);
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != a.len() {
                continue;
            }
            total += 1;
            let u = u_of(mask);
            let hit = match alternative {
                Alternative::Less => u <= observed,
                Alternative::Greater => u >= observed,
            };
            hits += hit as u64;
        }
        hits as f64 / total as f64
    }

    #[test]
    fn separated_samples() {
        let r =
            mann_whitney_one_sided(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], Alternative::Less).unwrap();
        assert_eq!(r.method, Method::Exact);
        assert_eq!(r.u_statistic, 0.0);
        assert!((r.p_value - 1.0 / 20.0).abs() < 1e-15);
        let r =
            mann_whitney_one_sided(&[4.0, 5.0, 6.0], &[1.0, 2.0, 3.0], Alternative::Less).unwrap();
        assert!(r.p_value > 0.9);
    }

    #[test]
    fn identical_samples_give_no_evidence() {
        let a = [3.0, 1.0, 4.0, 1.0, 5.0];
        let r = mann_whitney_one_sided(&a, &a, Alternative::Less).unwrap();
        assert!(r.p_value >= 0.5);
        let r = mann_whitney_one_sided(&[2.0, 2.0], &[2.0, 2.0], Alternative::Less).unwrap();
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn large_separated_samples_are_significant() {
        // 50 vs 50 with every a below every b: U = 0,
        // z = (0.5 - 1250) / sqrt(2500 * 101 / 12) = -8.61...
        let a: Vec<f64> = (0..50).map(f64::from).collect();
        let b: Vec<f64> = (100..150).map(f64::from).collect();
        let r = mann_whitney_one_sided(&a, &b, Alternative::Less).unwrap();
        assert_eq!(r.method, Method::NormalApprox);
        assert!(r.p_value < 1e-15);
    }

    #[test]
    fn normal_approximation_reference_value() {
        // 11 vs 11 with three tied pairs (9, 10, 11): U = 3 + 3/2, mean 60.5,
        // tie term 3 * (2^3 - 2) / (22 * 21), var = 121/12 * (23 - 18/462)
        let a = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0];
        let b = [
            9.0, 10.0, 11.0, 12.0, 13.0, 14.0, 15.0, 16.0, 17.0, 18.0, 19.0,
        ];
        let r = mann_whitney_one_sided(&a, &b, Alternative::Less).unwrap();
        assert_eq!(r.u_statistic, 4.5);
        let var: f64 = 121.0 / 12.0 * (23.0 - 18.0 / 462.0);
        let z = (4.5 + 0.5 - 60.5) / var.sqrt();
        let expected = Normal::standard().cdf(z);
        assert!((r.p_value - expected).abs() < 1e-15);
    }

    #[test]
    fn empty_samples_are_rejected() {
        assert!(mann_whitney_one_sided(&[], &[1.0], Alternative::Less).is_err());
        assert!(mann_whitney_one_sided(&[1.0], &[], Alternative::Greater).is_err());
    }

    #[test]
    fn exact_counts_sum_to_binomial() {
        let c = exact_u_counts(3, 3);
        assert_eq!(c, vec![1.0, 1.0, 2.0, 3.0, 3.0, 3.0, 3.0, 2.0, 1.0, 1.0]);
        assert_eq!(exact_u_counts(10, 10).iter().sum::<f64>(), 184_756.0);
    }

    proptest! {
        #[test]
        fn exact_matches_permutation_oracle(
            na in 1usize..=5,
            nb in 1usize..=5,
            seed in any::<u64>(),
            less in any::<bool>(),
        ) {
            // distinct values by shuffling 0..na+nb
            let mut rng = crate::rng::RngStream::new(seed);
            let mut values: Vec<f64> = (0..na + nb).map(|v| v as f64).collect();
            for i in (1..values.len()).rev() {
                let j = rng.index(i + 1);
                values.swap(i, j);
            }
            let (a, b) = values.split_at(na);
            let alt = if less { Alternative::Less } else { Alternative::Greater };
            let r = mann_whitney_one_sided(a, b, alt).unwrap();
            prop_assert_eq!(r.method, Method::Exact);
            prop_assert!((r.p_value - permutation_p(a, b, alt)).abs() < 1e-12);
        }
    }
}
