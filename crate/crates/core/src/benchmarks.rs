//! OneMinMax, LeadingOnesTrailingZeros and OneJumpZeroJump.
//!
//! Each family exists in its bi-objective form, in the block form for an even number
//! `m >= 4` of objectives (the string is cut into `m/2` equal blocks and objectives
//! `2i-1, 2i` are the bi-objective function on block `i`), and, for OneMinMax only, a
//! three-objective form `(#zeros, #ones in first half, #ones in second half)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::domain::{BitString, ObjectiveVector};
use crate::error::{Error, Result};

/// Anything the optimizer can evaluate.
pub trait ObjectiveFunction: Sync {
    fn n(&self) -> usize;
    fn m(&self) -> usize;
    fn evaluate_unchecked(&self, x: &BitString) -> ObjectiveVector;
    fn pareto_front(&self) -> ParetoFront;

    fn evaluate(&self, x: &BitString) -> Result<ObjectiveVector> {
        if x.len() != self.n() {
            return Err(Error::contract(format!(
                "genotype has length {}, benchmark expects {}",
                x.len(),
                self.n()
            )));
        }
        Ok(self.evaluate_unchecked(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    OneMinMax,
    Lotz,
    Ojzj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Layout {
    Bi,
    Blocks(usize),
    ThreeObjective,
}

/// A validated benchmark instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BenchmarkSpec {
    family: Family,
    n: usize,
    m: usize,
    k: Option<usize>,
    layout: Layout,
}

impl BenchmarkSpec {
    /// Validates the instance. `m = 2` is the bi-objective form, even `m >= 4` the block
    /// form, `m = 3` the three-objective OneMinMax. `k` is required for OJZJ and
    /// rejected otherwise.
    pub fn new(family: Family, n: usize, m: usize, k: Option<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::config("n must be at least 1"));
        }
        let layout = match m {
            2 => Layout::Bi,
            3 => {
                if family != Family::OneMinMax {
                    return Err(Error::config(
                        "three objectives are only defined for OneMinMax",
                    ));
                }
                if !n.is_multiple_of(2) {
                    return Err(Error::config("three-objective OneMinMax needs an even n"));
                }
                Layout::ThreeObjective
            }
            m if m >= 4 && m % 2 == 0 => {
                let blocks = m / 2;
                if !n.is_multiple_of(blocks) {
                    return Err(Error::config(format!(
                        "m/2 = {blocks} blocks must divide n = {n}"
                    )));
                }
                Layout::Blocks(blocks)
            }
            m => {
                return Err(Error::config(format!(
                    "unsupported number of objectives m = {m}"
                )))
            }
        };
        match (family, k) {
            (Family::Ojzj, None) => return Err(Error::config("OneJumpZeroJump needs a gap k")),
            (Family::Ojzj, Some(k)) => {
                let block = match layout {
                    Layout::Blocks(b) => n / b,
                    _ => n,
                };
                if k < 2 || k > block / 2 {
                    return Err(Error::config(format!(
                        "gap k = {k} must lie in [2..{}]",
                        block / 2
                    )));
                }
            }
            (_, Some(_)) => return Err(Error::config("gap k only applies to OneJumpZeroJump")),
            (_, None) => {}
        }
        Ok(Self {
            family,
            n,
            m,
            k,
            layout,
        })
    }

    pub fn omm(n: usize) -> Result<Self> {
        Self::new(Family::OneMinMax, n, 2, None)
    }

    pub fn lotz(n: usize) -> Result<Self> {
        Self::new(Family::Lotz, n, 2, None)
    }

    pub fn ojzj(n: usize, k: usize) -> Result<Self> {
        Self::new(Family::Ojzj, n, 2, Some(k))
    }

    /// Parses the CLI/CSV names `omm`, `lotz`, `ojzj`, `omm-m`, `lotz-m`, `ojzj-m`, `omm3`.
    pub fn from_name(name: &str, n: usize, m: Option<usize>, k: Option<usize>) -> Result<Self> {
        let (family, m) = match name {
            "omm" | "lotz" | "ojzj" => {
                if let Some(m) = m.filter(|&m| m != 2) {
                    return Err(Error::config(format!(
                        "benchmark {name} is bi-objective, got m = {m}; use {name}-m"
                    )));
                }
                (name, 2)
            }
            "omm-m" | "lotz-m" | "ojzj-m" => {
                let m = m.ok_or_else(|| Error::config(format!("benchmark {name} needs --m")))?;
                if m < 4 || m % 2 != 0 {
                    return Err(Error::config(format!(
                        "benchmark {name} needs an even m >= 4, got {m}"
                    )));
                }
                (&name[..name.len() - 2], m)
            }
            "omm3" => {
                if let Some(m) = m.filter(|&m| m != 3) {
                    return Err(Error::config(format!(
                        "omm3 has three objectives, got m = {m}"
                    )));
                }
                ("omm", 3)
            }
            other => return Err(Error::config(format!("unknown benchmark {other:?}"))),
        };
        let family = match family {
            "omm" => Family::OneMinMax,
            "lotz" => Family::Lotz,
            _ => Family::Ojzj,
        };
        Self::new(family, n, m, k)
    }

    pub fn name(&self) -> &'static str {
        match (self.family, self.layout) {
            (Family::OneMinMax, Layout::Bi) => "omm",
            (Family::Lotz, Layout::Bi) => "lotz",
            (Family::Ojzj, Layout::Bi) => "ojzj",
            (Family::OneMinMax, Layout::Blocks(_)) => "omm-m",
            (Family::Lotz, Layout::Blocks(_)) => "lotz-m",
            (Family::Ojzj, Layout::Blocks(_)) => "ojzj-m",
            (_, Layout::ThreeObjective) => "omm3",
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    /// Number of blocks `m' = m/2`; 1 for the bi-objective form.
    pub fn blocks(&self) -> usize {
        match self.layout {
            Layout::Blocks(b) => b,
            _ => 1,
        }
    }

    /// Block length `n' = n/m'`; `n/2` for the three-objective form.
    pub fn block_len(&self) -> usize {
        match self.layout {
            Layout::Bi => self.n,
            Layout::Blocks(b) => self.n / b,
            Layout::ThreeObjective => self.n / 2,
        }
    }

    /// Size `M` of the Pareto front, from the closed form.
    pub fn front_size(&self) -> usize {
        let per_block = match self.family {
            Family::Ojzj => self.block_len() - 2 * self.k.unwrap_or(0) + 3,
            _ => self.block_len() + 1,
        };
        match self.layout {
            Layout::Bi => per_block,
            Layout::Blocks(b) => per_block.pow(b as u32),
            Layout::ThreeObjective => per_block * per_block,
        }
    }

    fn bi(&self, bits: &[bool]) -> (i64, i64) {
        let len = bits.len();
        match self.family {
            Family::OneMinMax => {
                let ones = bits.iter().filter(|&&b| b).count();
                ((len - ones) as i64, ones as i64)
            }
            Family::Lotz => {
                let leading = bits.iter().take_while(|&&b| b).count();
                let trailing = bits.iter().rev().take_while(|&&b| !b).count();
                (leading as i64, trailing as i64)
            }
            Family::Ojzj => {
                let k = self.k.expect("validated");
                let ones = bits.iter().filter(|&&b| b).count();
                (jump(ones, len, k) as i64, jump(len - ones, len, k) as i64)
            }
        }
    }

    pub fn pareto_front(&self) -> ParetoFront {
        let base: Vec<(i64, i64)> = match self.family {
            Family::OneMinMax | Family::Lotz => {
                let n = self.block_len() as i64;
                (0..=n).map(|i| (i, n - i)).collect()
            }
            Family::Ojzj => {
                let n = self.block_len() as i64;
                let k = self.k.expect("validated") as i64;
                std::iter::once(k)
                    .chain(2 * k..=n)
                    .chain(std::iter::once(n + k))
                    .map(|i| (i, n + 2 * k - i))
                    .collect()
            }
        };
        let points = match self.layout {
            Layout::Bi => base.iter().map(|&(a, b)| vec![a, b]).collect(),
            Layout::Blocks(blocks) => {
                let mut acc: Vec<Vec<i64>> = vec![Vec::new()];
                for _ in 0..blocks {
                    acc = acc
                        .iter()
                        .flat_map(|prefix| {
                            base.iter().map(move |&(a, b)| {
                                let mut v = prefix.clone();
                                v.extend([a, b]);
                                v
                            })
                        })
                        .collect();
                }
                acc
            }
            Layout::ThreeObjective => {
                let half = self.block_len() as i64;
                let n = self.n as i64;
                (0..=half)
                    .flat_map(|v2| (0..=half).map(move |v3| vec![n - v2 - v3, v2, v3]))
                    .collect()
            }
        };
        ParetoFront::new(points.into_iter().map(ObjectiveVector::new))
    }
}

/// `J^(i)` of OneJumpZeroJump with `count = |x|_i`.
fn jump(count: usize, n: usize, k: usize) -> usize {
    if count <= n - k || count == n {
        k + count
    } else {
        n - count
    }
}

impl ObjectiveFunction for BenchmarkSpec {
    fn pareto_front(&self) -> ParetoFront {
        BenchmarkSpec::pareto_front(self)
    }

    fn n(&self) -> usize {
        self.n
    }

    fn m(&self) -> usize {
        self.m
    }

    fn evaluate_unchecked(&self, x: &BitString) -> ObjectiveVector {
        let bits = x.bits();
        match self.layout {
            Layout::Bi => {
                let (a, b) = self.bi(bits);
                ObjectiveVector::new(vec![a, b])
            }
            Layout::Blocks(_) => {
                let mut values = Vec::with_capacity(self.m);
                for block in bits.chunks(self.block_len()) {
                    let (a, b) = self.bi(block);
                    values.extend([a, b]);
                }
                ObjectiveVector::new(values)
            }
            Layout::ThreeObjective => {
                let half = self.n / 2;
                let ones = |s: &[bool]| s.iter().filter(|&&b| b).count() as i64;
                let zeros = (self.n as i64) - ones(bits);
                ObjectiveVector::new(vec![zeros, ones(&bits[..half]), ones(&bits[half..])])
            }
        }
    }
}

impl fmt::Display for BenchmarkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} m={}", self.name(), self.n, self.m)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        Ok(())
    }
}

/// A Pareto front as a sorted, duplicate-free sequence of objective values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoFront {
    points: Vec<ObjectiveVector>,
}

impl ParetoFront {
    pub fn new(points: impl IntoIterator<Item = ObjectiveVector>) -> Self {
        let sorted: BTreeSet<ObjectiveVector> = points.into_iter().collect();
        Self {
            points: sorted.into_iter().collect(),
        }
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, v: &ObjectiveVector) -> bool {
        self.position(v).is_some()
    }

    /// Index of `v` in [`points`](Self::points).
    pub fn position(&self, v: &ObjectiveVector) -> Option<usize> {
        self.points.binary_search(v).ok()
    }
}

/// Largest `n` accepted by [`pareto_front_bruteforce`].
pub const MAX_ENUMERATION_BITS: usize = 24;

/// Pareto front obtained by evaluating every string of `{0,1}^n` and discarding
/// strictly dominated values.
pub fn pareto_front_bruteforce(spec: &impl ObjectiveFunction) -> Result<ParetoFront> {
    let n = spec.n();
    if n > MAX_ENUMERATION_BITS {
        return Err(Error::EnumerationBudget {
            n,
            max: MAX_ENUMERATION_BITS,
        });
    }
    let values: BTreeSet<ObjectiveVector> = (0..1u64 << n)
        .map(|i| spec.evaluate_unchecked(&BitString::from_index(i, n).expect("n >= 1")))
        .collect();
    let values: Vec<_> = values.into_iter().collect();
    let front = values
        .iter()
        .filter(|v| !values.iter().any(|w| w.strictly_dominates(v)))
        .cloned();
    Ok(ParetoFront::new(front))
}
