use std::fmt;

use serde::Serialize;

use super::IndexSet;
use crate::error::{QsymError, Result};

/// A sequence of positive integers. The empty composition is the unique
/// composition of weight 0 and indexes the unit of QSym.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(QsymError::InvalidComposition(parts));
        }
        Ok(Composition(parts))
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(!parts.contains(&0));
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// `(1, 1, ..., 1)` with `n` parts.
    pub fn ones(n: usize) -> Self {
        Composition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `I = {d_1 < ... < d_k} ⊆ [s-1]` maps to `(d_1, d_2 - d_1, ..., s - d_k)`.
    pub fn from_subset(s: usize, set: &IndexSet) -> Result<Self> {
        if set.ambient_n() != s {
            return Err(QsymError::NotASubset { set: set.to_string(), bound: s.saturating_sub(1) });
        }
        if s == 0 {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0;
        for d in set.iter() {
            parts.push((d - prev) as u32);
            prev = d;
        }
        parts.push((s - prev) as u32);
        Ok(Composition(parts))
    }

    /// The set of proper partial sums, a subset of `[weight-1]`.
    pub fn to_subset(&self) -> IndexSet {
        let s = self.weight() as usize;
        let mut bits = 0u64;
        let mut acc = 0usize;
        for &part in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += part as usize;
            bits |= 1 << (acc - 1);
        }
        IndexSet::from_bits_unchecked(s, bits)
    }

    /// Merges consecutive parts `j` and `j+1` for every `j ∈ merge`, where
    /// `merge` is a bit-mask over positions `1..len-1` (bit `j-1` for `j`).
    pub fn collapse(&self, merge: u64) -> Composition {
        let mut out = Vec::with_capacity(self.0.len());
        for (idx, &part) in self.0.iter().enumerate() {
            if idx > 0 && merge >> (idx - 1) & 1 == 1 {
                *out.last_mut().expect("merge after a first part") += part;
            } else {
                out.push(part);
            }
        }
        Composition(out)
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        Composition([self.0.as_slice(), other.0.as_slice()].concat())
    }

    /// All compositions of `s`, in reverse-lex order of their subsets.
    pub fn all_of_weight(s: usize) -> Vec<Composition> {
        IndexSet::all(s)
            .map(|set| Composition::from_subset(s, &set).expect("ambient matches"))
            .collect()
    }

    /// All compositions with exactly `len` parts and weight at most `max_weight`.
    pub fn with_length_up_to_weight(len: usize, max_weight: u32) -> Vec<Composition> {
        fn rec(len: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if prefix.len() == len {
                out.push(Composition(prefix.clone()));
                return;
            }
            let remaining = (len - prefix.len() - 1) as u32;
            if budget < remaining + 1 {
                return;
            }
            for part in 1..=budget - remaining {
                prefix.push(part);
                rec(len, budget - part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(len, max_weight, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn subset_to_composition_examples() {
        let c = |s, m: &[usize]| Composition::from_subset(s, &IndexSet::new(s, m).unwrap()).unwrap();
        assert_eq!(c(4, &[1, 3]).parts(), &[1, 2, 1]);
        assert_eq!(c(4, &[]).parts(), &[4]);
        assert_eq!(c(3, &[1, 2]).parts(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_foreign_ambient() {
        let set = IndexSet::new(5, &[4]).unwrap();
        assert!(Composition::from_subset(4, &set).is_err());
        assert!(Composition::new(vec![1, 0]).is_err());
    }

    #[test]
    fn bijection_round_trips_exhaustively() {
        for s in 1..=10 {
            let comps = Composition::all_of_weight(s);
            assert_eq!(comps.len(), 1 << (s - 1));
            for (set, comp) in IndexSet::all(s).zip(&comps) {
                assert_eq!(comp.weight() as usize, s);
                assert_eq!(comp.to_subset(), set);
            }
        }
    }

    #[test]
    fn collapse_merges_runs() {
        let alpha = Composition::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(alpha.collapse(0b000), alpha);
        assert_eq!(alpha.collapse(0b011).parts(), &[6, 4]);
        assert_eq!(alpha.collapse(0b101).parts(), &[3, 7]);
        assert_eq!(alpha.collapse(0b111).parts(), &[10]);
    }

    #[test]
    fn bounded_weight_enumeration() {
        let all = Composition::with_length_up_to_weight(2, 4);
        // weight 2: 1; weight 3: 2; weight 4: 3
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|c| c.len() == 2 && c.weight() <= 4));
        assert_eq!(Composition::with_length_up_to_weight(0, 3), vec![Composition::empty()]);
    }

    proptest! {
        #[test]
        fn composition_to_subset_round_trip(parts in prop::collection::vec(1u32..5, 1..8)) {
            let c = Composition::new(parts).unwrap();
            let s = c.weight() as usize;
            prop_assert_eq!(Composition::from_subset(s, &c.to_subset()).unwrap(), c);
        }
    }
}
