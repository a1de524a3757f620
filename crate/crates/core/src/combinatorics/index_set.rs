use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{QsymError, Result};

/// A subset of `[n-1] = {1, ..., n-1}` with its ambient size `n`.
///
/// Stored as a bit-vector: element `i` is bit `i-1`. Within a fixed `n`,
/// ascending bit-vector value is the reverse-lexicographic order on subsets
/// (compare the elements written in decreasing order lexicographically).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    ambient_n: usize,
    bits: u64,
}

pub const MAX_AMBIENT: usize = 64;

impl IndexSet {
    pub fn empty(ambient_n: usize) -> Self {
        assert!(ambient_n <= MAX_AMBIENT, "ambient size {ambient_n} exceeds {MAX_AMBIENT}");
        IndexSet { ambient_n, bits: 0 }
    }

    /// `[n-1]` itself.
    pub fn full(ambient_n: usize) -> Self {
        IndexSet { ambient_n, bits: Self::universe_mask(ambient_n) }
    }

    fn universe_mask(ambient_n: usize) -> u64 {
        match ambient_n {
            0 | 1 => 0,
            n => u64::MAX >> (65 - n),
        }
    }

    pub fn new(ambient_n: usize, members: &[usize]) -> Result<Self> {
        if ambient_n > MAX_AMBIENT {
            return Err(QsymError::NotASubset { set: format!("{members:?}"), bound: ambient_n.saturating_sub(1) });
        }
        let mut bits = 0u64;
        for &m in members {
            if m == 0 || m >= ambient_n {
                return Err(QsymError::NotASubset {
                    set: format!("{members:?}"),
                    bound: ambient_n.saturating_sub(1),
                });
            }
            bits |= 1 << (m - 1);
        }
        Ok(IndexSet { ambient_n, bits })
    }

    pub fn from_bits(ambient_n: usize, bits: u64) -> Result<Self> {
        if ambient_n > MAX_AMBIENT || bits & !Self::universe_mask(ambient_n) != 0 {
            return Err(QsymError::NotASubset { set: format!("bits {bits:#b}"), bound: ambient_n.saturating_sub(1) });
        }
        Ok(IndexSet { ambient_n, bits })
    }

    pub(crate) fn from_bits_unchecked(ambient_n: usize, bits: u64) -> Self {
        debug_assert!(bits & !Self::universe_mask(ambient_n) == 0);
        IndexSet { ambient_n, bits }
    }

    /// All subsets of `[n-1]` in reverse-lexicographic order.
    pub fn all(ambient_n: usize) -> impl Iterator<Item = IndexSet> {
        let count = 1u64 << ambient_n.saturating_sub(1);
        (0..count).map(move |bits| IndexSet { ambient_n, bits })
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.ambient_n && self.bits >> (i - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(&self) -> usize {
        64 - self.bits.leading_zeros() as usize
    }

    /// Members in increasing order.
    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (1..self.ambient_n).filter(move |i| bits >> (i - 1) & 1 == 1)
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        debug_assert_eq!(self.ambient_n, other.ambient_n);
        IndexSet { ambient_n: self.ambient_n, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet { ambient_n: self.ambient_n, bits: self.bits & other.bits }
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet { ambient_n: self.ambient_n, bits: self.bits & !other.bits }
    }

    /// `{i - 1 : i ∈ self}` with 0 dropped.
    pub fn shift_down(&self) -> IndexSet {
        IndexSet { ambient_n: self.ambient_n, bits: self.bits >> 1 }
    }

    /// Subsets of `self`, including `∅` and `self`, in ascending bit order.
    pub fn subsets(&self) -> impl Iterator<Item = IndexSet> {
        let (ambient_n, mask) = (self.ambient_n, self.bits);
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
            Some(IndexSet { ambient_n, bits: cur })
        })
    }

    /// The interval `[lo, hi]` (empty when `lo > hi`) inside `[n-1]`.
    pub fn interval(ambient_n: usize, lo: usize, hi: usize) -> Result<IndexSet> {
        let members: Vec<usize> = (lo..=hi).collect();
        IndexSet::new(ambient_n, &members)
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}⊆[{}]", self.ambient_n.saturating_sub(1))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
