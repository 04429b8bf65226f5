//! Fixed-universe vertex sets packed into 64-bit words.
//!
//! Every set symbol in the crate (neighbourhoods, intervals, hulls, closures)
//! is a [`VertexSet`] over the universe `0..n`. Bits at positions `>= n` are
//! always zero, so word-wise popcounts give the cardinality directly.

use std::fmt;

use serde::{Serialize, Serializer};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    /// The empty set over `0..universe`.
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    /// The set `{0, .., universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut s = VertexSet {
            universe,
            words: vec![u64::MAX; words_for(universe)],
        };
        s.trim();
        s
    }

    pub fn singleton(universe: usize, v: usize) -> Self {
        let mut s = Self::new(universe);
        s.insert(v);
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(universe: usize, vertices: I) -> Self {
        let mut s = Self::new(universe);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Inserts `v`; returns `true` if it was not present.
    ///
    /// Panics if `v` is outside the universe.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let (w, b) = (v / WORD_BITS, v % WORD_BITS);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / WORD_BITS, v % WORD_BITS);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    #[inline]
    fn check_universe(&self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe, "vertex sets over different universes");
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Writes `a ∩ b ∩ c` into `self`, reusing its storage.
    pub fn assign_intersection3(&mut self, a: &VertexSet, b: &VertexSet, c: &VertexSet) {
        debug_assert!(a.universe == b.universe && b.universe == c.universe);
        self.universe = a.universe;
        self.words.resize(a.words.len(), 0);
        for (i, out) in self.words.iter_mut().enumerate() {
            *out = a.words[i] & b.words[i] & c.words[i];
        }
    }
}

/// `|a ∩ b ∩ c|`, stopping early once the count exceeds `limit`.
pub fn intersection3_len_capped(a: &VertexSet, b: &VertexSet, c: &VertexSet, limit: usize) -> usize {
    let mut count = 0;
    for i in 0..a.words.len() {
        count += (a.words[i] & b.words[i] & c.words[i]).count_ones() as usize;
        if count > limit {
            break;
        }
    }
    count
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
