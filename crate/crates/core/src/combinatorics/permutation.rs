use std::fmt;

use serde::Serialize;

use super::{Composition, IndexSet};
use crate::error::{QsymError, Result};

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(QsymError::InvalidPermutation(word));
            }
            seen[v] = true;
        }
        Ok(Permutation(word))
    }

    /// Parses a one-line word of single digits such as `"54163287"`.
    pub fn from_digits(s: &str) -> Result<Self> {
        let word = s
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| QsymError::Parse(format!("not a digit word: {s:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        Permutation::new(word)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    /// `n n-1 ... 1`.
    pub fn reversed_identity(n: usize) -> Self {
        Permutation((1..=n as u32).rev().collect())
    }

    pub fn word(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(n: u32, used: &mut Vec<bool>, prefix: &mut Vec<u32>, out: &mut Vec<Permutation>) {
            if prefix.len() == n as usize {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for v in 1..=n {
                if !used[v as usize] {
                    used[v as usize] = true;
                    prefix.push(v);
                    rec(n, used, prefix, out);
                    prefix.pop();
                    used[v as usize] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n as u32, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&v| v < 10) {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "[{}]", parts.join(" "))
        }
    }
}

/// `{i ∈ [n-1] : π(i) > π(i+1)}`.
pub fn descent_set(pi: &Permutation) -> IndexSet {
    let w = pi.word();
    let bits = (1..w.len())
        .filter(|&i| w[i - 1] > w[i])
        .fold(0u64, |acc, i| acc | 1 << (i - 1));
    IndexSet::from_bits_unchecked(w.len(), bits)
}

/// `{2 <= i <= n-1 : π(i-1) < π(i) > π(i+1)}`.
pub fn peak_set(pi: &Permutation) -> IndexSet {
    let w = pi.word();
    let bits = (2..w.len())
        .filter(|&i| w[i - 2] < w[i - 1] && w[i - 1] > w[i])
        .fold(0u64, |acc, i| acc | 1 << (i - 1));
    IndexSet::from_bits_unchecked(w.len(), bits)
}

/// The permutation whose entries are in the same relative order as `word`.
pub fn standardize(word: &[i64]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(QsymError::Parse(format!("repeated entries in {word:?}")));
    }
    let mut out = vec![0u32; word.len()];
    for (rank, &pos) in order.iter().enumerate() {
        out[pos] = rank as u32 + 1;
    }
    Ok(Permutation(out))
}

/// A permutation with descent set exactly `set`: positions are cut into
/// blocks after each descent, and blocks receive decreasing ranges of values,
/// each block filled in increasing order.
pub fn canonical_permutation_with_descents(n: usize, set: &IndexSet) -> Result<Permutation> {
    if set.ambient_n() != n {
        return Err(QsymError::NotASubset { set: set.to_string(), bound: n.saturating_sub(1) });
    }
    let mut cuts: Vec<usize> = set.members();
    cuts.push(n);
    let mut word = Vec::with_capacity(n);
    let mut start = 0usize;
    let mut top = n as u32;
    for &end in &cuts {
        let block = (end - start) as u32;
        word.extend(top - block + 1..=top);
        top -= block;
        start = end;
    }
    Ok(Permutation(word))
}

/// The coshuffle `(π, α) ⧢ (σ, β)`: every shuffle `τ` of `π` with
/// `(n+σ_1, ..., n+σ_m)`, paired with the shuffle `γ` of `α` and `β` that
/// uses the same positions.
pub fn coshuffles(
    pi: &Permutation,
    alpha: &Composition,
    sigma: &Permutation,
    beta: &Composition,
) -> Result<Vec<(Permutation, Composition)>> {
    if pi.len() != alpha.len() || sigma.len() != beta.len() {
        return Err(QsymError::LengthMismatch(format!(
            "({pi}, {alpha}) and ({sigma}, {beta})"
        )));
    }
    let (n, m) = (pi.len(), sigma.len());
    let total = n + m;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << total) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut tau = Vec::with_capacity(total);
        let mut gamma = Vec::with_capacity(total);
        for pos in 0..total {
            if mask >> pos & 1 == 1 {
                tau.push(pi.word()[i]);
                gamma.push(alpha.parts()[i]);
                i += 1;
            } else {
                tau.push(n as u32 + sigma.word()[j]);
                gamma.push(beta.parts()[j]);
                j += 1;
            }
        }
        out.push((Permutation(tau), Composition::from_parts_unchecked(gamma)));
    }
    out.sort();
    Ok(out)
}
