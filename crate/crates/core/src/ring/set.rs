use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

/// A subset of the elements `0..n` of a finite ring.
///
/// Ordering compares the ascending element lists lexicographically, so `{0}`
/// sorts before every other set containing zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_elements(universe: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for x in elements {
            set.insert(x);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, x: usize) -> bool {
        !self.bits.put(x)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_strict_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    /// True if the intersection with `other` is exactly `{0}` or empty.
    pub fn meets_only_in_zero(&self, other: &Self) -> bool {
        self.bits
            .intersection(&other.bits)
            .all(|x| x == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then_with(|| self.universe().cmp(&other.universe()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order_puts_zero_ideal_first() {
        let zero = ElementSet::from_elements(6, [0]);
        let evens = ElementSet::from_elements(6, [0, 2, 4]);
        let threes = ElementSet::from_elements(6, [0, 3]);
        assert!(zero < evens);
        assert!(evens < threes);
        assert!(ElementSet::from_elements(6, [0, 2, 3]) < evens);
    }

    #[test]
    fn zero_meeting() {
        let a = ElementSet::from_elements(6, [0, 3]);
        let b = ElementSet::from_elements(6, [0, 2, 4]);
        assert!(a.meets_only_in_zero(&b));
        assert!(!a.meets_only_in_zero(&ElementSet::from_elements(6, [0, 3, 5])));
    }
}
