//! Fixed-universe bit-sets over vertex indices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

#[inline]
pub(crate) fn test_bit(words: &[u64], i: usize) -> bool {
    words[i / WORD] >> (i % WORD) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], i: usize) {
    words[i / WORD] |= 1 << (i % WORD);
}

#[inline]
pub(crate) fn clear_bit(words: &mut [u64], i: usize) {
    words[i / WORD] &= !(1 << (i % WORD));
}

#[inline]
pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub(crate) fn popcount_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
pub(crate) fn and_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= s;
    }
}

/// Iterator over the set bits of a word slice, ascending.
#[derive(Clone)]
pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> Ones<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        Ones {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }

    /// Bits strictly greater than `after`.
    pub(crate) fn after(words: &'a [u64], after: usize) -> Self {
        let start = after + 1;
        let idx = start / WORD;
        if idx >= words.len() {
            return Ones { words, idx: words.len(), cur: 0 };
        }
        let shift = start % WORD;
        let cur = words[idx] & (u64::MAX << shift);
        Ones { words, idx, cur }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + t);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// A subset of `{0, ..., universe-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    /// Builds a set from indices; indices `>= universe` are rejected with `None`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, it: I) -> Option<Self> {
        let mut s = Self::empty(universe);
        for i in it {
            if i >= universe {
                return None;
            }
            s.insert(i);
        }
        Some(s)
    }

    pub(crate) fn from_words(universe: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(universe));
        VertexSet { universe, words }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "vertex {i} outside universe {}", self.universe);
        set_bit(&mut self.words, i);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            clear_bit(&mut self.words, i);
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && test_bit(&self.words, i)
    }

    pub fn len(&self) -> usize {
        popcount(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones::new(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersect_with(&mut self, other: &[u64]) {
        and_assign(&mut self.words, other);
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        popcount_and(&self.words, &other.words)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_after_crosses_words() {
        let mut s = VertexSet::empty(200);
        for i in [0, 5, 63, 64, 130, 199] {
            s.insert(i);
        }
        let got: Vec<_> = Ones::after(s.words(), 5).collect();
        assert_eq!(got, vec![63, 64, 130, 199]);
        let got: Vec<_> = Ones::after(s.words(), 63).collect();
        assert_eq!(got, vec![64, 130, 199]);
        assert_eq!(Ones::after(s.words(), 199).count(), 0);
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn from_indices_rejects_out_of_range() {
        assert!(VertexSet::from_indices(4, [0, 4]).is_none());
        let s = VertexSet::from_indices(4, [3, 1]).unwrap();
        assert_eq!(s.to_vec(), vec![1, 3]);
    }
}
