//! Subsets of a fixed finite ground set `{0, 1, ..., n-1}`, stored as bitsets.
//!
//! Every [`GroundSubset`] remembers the size of the universe it lives in.
//! Binary operations require both operands to share that universe and panic
//! otherwise: mixing subsets of different ground sets is always a logic bug,
//! not a recoverable condition.

use std::fmt;

const WORD_BITS: usize = 64;

/// A subset of the ground set `{0, ..., universe-1}`, backed by a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSubset {
    universe: usize,
    words: Vec<u64>,
}

fn word_count(universe: usize) -> usize {
    universe.div_ceil(WORD_BITS)
}

impl GroundSubset {
    /// The empty subset of a ground set with `universe` elements.
    pub fn empty(universe: usize) -> Self {
        GroundSubset {
            universe,
            words: vec![0; word_count(universe)],
        }
    }

    /// The full ground set `{0, ..., universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for e in 0..universe {
            set.insert(e);
        }
        set
    }

    /// The singleton `{element}`.
    pub fn singleton(universe: usize, element: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(element);
        set
    }

    /// Builds a subset from an iterator of element indices.
    pub fn from_elements(universe: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for e in elements {
            set.insert(e);
        }
        set
    }

    /// Size of the ground set this subset lives in.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of elements in the subset.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Whether the subset is empty.
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Membership test. Panics if `element` is outside the universe.
    pub fn contains(&self, element: usize) -> bool {
        assert!(
            element < self.universe,
            "element {element} outside universe of size {}",
            self.universe
        );
        self.words[element / WORD_BITS] >> (element % WORD_BITS) & 1 == 1
    }

    /// Adds an element in place. Panics if outside the universe.
    pub fn insert(&mut self, element: usize) {
        assert!(
            element < self.universe,
            "element {element} outside universe of size {}",
            self.universe
        );
        self.words[element / WORD_BITS] |= 1 << (element % WORD_BITS);
    }

    /// Removes an element in place. Panics if outside the universe.
    pub fn remove(&mut self, element: usize) {
        assert!(
            element < self.universe,
            "element {element} outside universe of size {}",
            self.universe
        );
        self.words[element / WORD_BITS] &= !(1 << (element % WORD_BITS));
    }

    /// Returns a copy with `element` added.
    pub fn plus(&self, element: usize) -> Self {
        let mut out = self.clone();
        out.insert(element);
        out
    }

    /// Returns a copy with `element` removed.
    pub fn minus(&self, element: usize) -> Self {
        let mut out = self.clone();
        out.remove(element);
        out
    }

    fn check_same_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "subsets of different universes ({} vs {})",
            self.universe, other.universe
        );
    }

    /// Set union.
    pub fn union(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        GroundSubset {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Set intersection.
    pub fn intersection(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        GroundSubset {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        GroundSubset {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    /// Symmetric difference.
    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.check_same_universe(other);
        GroundSubset {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    /// Complement within the universe.
    pub fn complement(&self) -> Self {
        Self::full(self.universe).difference(self)
    }

    /// Whether `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check_same_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Whether the two subsets share no element.
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_same_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Iterates over the elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&e| self.contains(e))
    }

    /// Smallest element, if any.
    pub fn min_element(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a GroundSubset {
    type Item = usize;
    type IntoIter = Box<dyn Iterator<Item = usize> + 'a>;

    fn into_iter(self) -> Self::IntoIter {
        Box::new(self.iter())
    }
}

/// Iterates over all subsets of `pool`, calling `visit` for each.
///
/// Intended for the brute-force oracles; callers are responsible for keeping
/// `pool` small enough that `2^|pool|` iterations are acceptable.
pub fn for_each_subset(pool: &GroundSubset, mut visit: impl FnMut(&GroundSubset)) {
    let elements: Vec<usize> = pool.iter().collect();
    let n = elements.len();
    for mask in 0u64..(1u64 << n) {
        let subset = GroundSubset::from_elements(
            pool.universe(),
            elements
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        );
        visit(&subset);
    }
}
