//! Packed subsets of a finite carrier.
//!
//! Every algebraic object in this crate identifies its elements with indices
//! `0..n` into an ordered carrier. Subsets (ideals, submodules, mult-closed
//! sets) are bitmasks over that range. The ordering on sets is the canonical
//! reporting order used everywhere: first by cardinality, then by the
//! lexicographic order of the sorted member lists.

use std::cmp::Ordering;
use std::fmt;

const BITS: usize = 64;

/// A subset of `{0, .., universe-1}`, stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            universe,
            blocks: vec![0; universe.div_ceil(BITS)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for e in 0..universe {
            s.insert(e);
        }
        s
    }

    pub fn singleton(universe: usize, e: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(e);
        s
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(universe: usize, elems: I) -> Self {
        let mut s = Self::empty(universe);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, e: usize) {
        assert!(
            e < self.universe,
            "element {e} outside universe {}",
            self.universe
        );
        self.blocks[e / BITS] |= 1 << (e % BITS);
    }

    pub fn remove(&mut self, e: usize) {
        assert!(e < self.universe);
        self.blocks[e / BITS] &= !(1 << (e % BITS));
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.universe && self.blocks[e / BITS] >> (e % BITS) & 1 == 1
    }

    pub fn card(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.card() == self.universe
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & b == 0)
    }

    pub fn intersect(&self, other: &ElemSet) -> ElemSet {
        debug_assert_eq!(self.universe, other.universe);
        ElemSet {
            universe: self.universe,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        debug_assert_eq!(self.universe, other.universe);
        ElemSet {
            universe: self.universe,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn complement(&self) -> ElemSet {
        ElemSet::from_elems(
            self.universe,
            (0..self.universe).filter(|&e| !self.contains(e)),
        )
    }

    /// Least member of the intersection, if any. Handy for reporting the
    /// element witnessing a failed disjointness requirement.
    pub fn first_common(&self, other: &ElemSet) -> Option<usize> {
        self.iter().find(|&e| other.contains(e))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&e| self.contains(e))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.card()
            .cmp(&other.card())
            .then_with(|| self.to_vec().cmp(&other.to_vec()))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
