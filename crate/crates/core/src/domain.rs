//! Genotypes, objective vectors and the domination order.
//!
//! All objectives are maximized and integer-valued.

use std::fmt;
use std::sync::Arc;

use rand::distributions::Bernoulli;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Fixed-length bit string, the search-space element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::contract("bit strings must have length >= 1"));
        }
        Ok(Self { bits })
    }

    /// All-zeros string of length `n`.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_bits(vec![false; n])
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::from_bits(vec![true; n])
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn count_zeros(&self) -> usize {
        self.len() - self.count_ones()
    }

    pub fn hamming(&self, other: &BitString) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// The string whose `i`-th bit is the `i`-th bit of `value` (least significant first).
    pub fn from_index(value: u64, n: usize) -> Result<Self> {
        Self::from_bits((0..n).map(|i| (value >> i) & 1 == 1).collect())
    }
}

impl std::str::FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::contract(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(bits)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// Tuple of `m` integer objective values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectiveVector(Vec<i64>);

impl ObjectiveVector {
    pub fn new(values: Vec<i64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> i64 {
        self.0[j]
    }

    /// `self` weakly dominates `other` (componentwise `>=`). Lengths must match.
    pub fn weakly_dominates(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// `self` strictly dominates `other`: weakly dominates with one strict inequality.
    pub fn strictly_dominates(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len(), other.len());
        let mut strict = false;
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return false;
            }
            strict |= a > b;
        }
        strict
    }
}

impl From<Vec<i64>> for ObjectiveVector {
    fn from(values: Vec<i64>) -> Self {
        Self(values)
    }
}

impl<const M: usize> From<[i64; M]> for ObjectiveVector {
    fn from(values: [i64; M]) -> Self {
        Self(values.to_vec())
    }
}

impl fmt::Debug for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Outcome of comparing `u` against `v` under the weak domination order.
///
/// `WeaklyDominatesProperly` and `IsWeaklyDominatedProperly` are never produced for
/// vectors: weak domination of unequal vectors is always strict. They exist so the
/// enumeration mirrors the full set of order relations and stays antisymmetric
/// under [`Dominance::mirror`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominance {
    StrictlyDominates,
    Equal,
    WeaklyDominatesProperly,
    IsStrictlyDominated,
    IsWeaklyDominatedProperly,
    Incomparable,
}

impl Dominance {
    /// The relation of `v` to `u` given the relation of `u` to `v`.
    pub fn mirror(self) -> Self {
        use Dominance::*;
        match self {
            StrictlyDominates => IsStrictlyDominated,
            IsStrictlyDominated => StrictlyDominates,
            WeaklyDominatesProperly => IsWeaklyDominatedProperly,
            IsWeaklyDominatedProperly => WeaklyDominatesProperly,
            Equal => Equal,
            Incomparable => Incomparable,
        }
    }

    /// `u ⪰ v`.
    pub fn weakly_dominates(self) -> bool {
        matches!(
            self,
            Dominance::StrictlyDominates | Dominance::Equal | Dominance::WeaklyDominatesProperly
        )
    }

    /// `u ≻ v`.
    pub fn strictly_dominates(self) -> bool {
        matches!(
            self,
            Dominance::StrictlyDominates | Dominance::WeaklyDominatesProperly
        )
    }
}

pub fn compare(u: &ObjectiveVector, v: &ObjectiveVector) -> Result<Dominance> {
    if u.len() != v.len() {
        return Err(Error::contract(format!(
            "cannot compare objective vectors of lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    let (mut greater, mut less) = (false, false);
    for (a, b) in u.values().iter().zip(v.values()) {
        greater |= a > b;
        less |= a < b;
    }
    Ok(match (greater, less) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::StrictlyDominates,
        (false, true) => Dominance::IsStrictlyDominated,
        (true, true) => Dominance::Incomparable,
    })
}

/// A genotype together with its objective value, evaluated once at creation.
///
/// Immutable and cheap to clone; copies share storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual(Arc<(BitString, ObjectiveVector)>);

impl Individual {
    pub fn new(genotype: BitString, objective: ObjectiveVector) -> Self {
        Self(Arc::new((genotype, objective)))
    }

    pub fn genotype(&self) -> &BitString {
        &self.0 .0
    }

    pub fn objective(&self) -> &ObjectiveVector {
        &self.0 .1
    }
}

/// Bit string of length `n` with every bit an independent fair coin flip.
pub fn uniform_bitstring(n: usize, rng: &mut RngStream) -> Result<BitString> {
    if n == 0 {
        return Err(Error::contract("bit strings must have length >= 1"));
    }
    BitString::from_bits((0..n).map(|_| rng.fair_bit()).collect())
}

/// Standard bit mutation: each bit flips independently with probability `1/n`.
///
/// Consumes exactly `n` Bernoulli draws, in bit order.
#[derive(Debug, Clone)]
pub struct StandardBitMutation {
    n: usize,
    flip: Bernoulli,
}

impl StandardBitMutation {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::contract("mutation needs n >= 1"));
        }
        let flip = Bernoulli::from_ratio(1, n as u32)
            .map_err(|e| Error::contract(format!("mutation rate 1/{n}: {e}")))?;
        Ok(Self { n, flip })
    }

    pub fn apply(&self, x: &BitString, rng: &mut RngStream) -> BitString {
        debug_assert_eq!(x.len(), self.n);
        let bits = x
            .bits()
            .iter()
            .map(|&b| b ^ rng.bernoulli(&self.flip))
            .collect();
        BitString { bits }
    }
}

pub fn mutate(x: &BitString, rng: &mut RngStream) -> BitString {
    StandardBitMutation::new(x.len())
        .expect("bit strings are never empty")
        .apply(x, rng)
}
