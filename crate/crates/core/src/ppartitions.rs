//! Brute-force enriched P-partitions on labelled weighted posets and their
//! q-weighted generating functions, truncated to finitely many variables.
//!
//! This module is an oracle: it enumerates assignments directly from the
//! definition and shares no code with the closed-form expansions in
//! [`crate::qsym`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Composition, Permutation};
use crate::error::{QsymError, Result};
use crate::qsym::TruncatedPolynomial;
use crate::scalars::Scalar;

/// A partial order on the labels `1..=n` with a positive weight per label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledWeightedPoset {
    n: usize,
    covers: Vec<(u32, u32)>,
    weights: Vec<u32>,
    /// `less[i][j]` iff `i+1 <_P j+1`, transitively closed.
    less: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    covers: Vec<(u32, u32)>,
    weights: Vec<u32>,
}

impl LabelledWeightedPoset {
    /// `covers` lists pairs `(i, j)` meaning `i <_P j`; `weights[i-1] = ε(i)`.
    pub fn new(n: usize, covers: Vec<(u32, u32)>, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != n {
            return Err(QsymError::InvalidPoset(format!("{} weights for {n} vertices", weights.len())));
        }
        if weights.contains(&0) {
            return Err(QsymError::InvalidPoset("weights must be positive".into()));
        }
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in &covers {
            if a == 0 || b == 0 || a as usize > n || b as usize > n {
                return Err(QsymError::InvalidPoset(format!("cover ({a}, {b}) outside [{n}]")));
            }
            less[a as usize - 1][b as usize - 1] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if (0..n).any(|i| less[i][i]) {
            return Err(QsymError::InvalidPoset("cover relations contain a cycle".into()));
        }
        Ok(LabelledWeightedPoset { n, covers, weights, less })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PosetJson =
            serde_json::from_str(text).map_err(|e| QsymError::Parse(format!("poset JSON: {e}")))?;
        LabelledWeightedPoset::new(raw.n, raw.covers, raw.weights)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PosetJson { n: self.n, covers: self.covers.clone(), weights: self.weights.clone() })
            .expect("plain data serialises")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn weight(&self, label: usize) -> u32 {
        self.weights[label - 1]
    }

    /// `a <_P b` in the transitive closure.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a - 1][b - 1]
    }

    /// Disjoint union; the labels of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &LabelledWeightedPoset) -> LabelledWeightedPoset {
        let shift = self.n as u32;
        let covers = self
            .covers
            .iter()
            .copied()
            .chain(other.covers.iter().map(|&(a, b)| (a + shift, b + shift)))
            .collect();
        let weights = [self.weights.as_slice(), other.weights.as_slice()].concat();
        LabelledWeightedPoset::new(self.n + other.n, covers, weights).expect("union of posets is a poset")
    }
}

/// The chain `P_{π,α}`: `π_1 <_P π_2 <_P ... <_P π_n`, with vertex `π_i` of weight `α_i`.
pub fn chain_poset(pi: &Permutation, alpha: &Composition) -> Result<LabelledWeightedPoset> {
    if pi.len() != alpha.len() {
        return Err(QsymError::LengthMismatch(format!("permutation {pi} vs composition {alpha}")));
    }
    let w = pi.word();
    let covers = w.windows(2).map(|p| (p[0], p[1])).collect();
    let mut weights = vec![0; w.len()];
    for (&label, &part) in w.iter().zip(alpha.parts()) {
        weights[label as usize - 1] = part;
    }
    LabelledWeightedPoset::new(w.len(), covers, weights)
}

/// The 5-vertex poset of the worked figure, with cover arrows
/// 3→2, 1→2, 1→4, 5→3, 5→1 and weights ε = (1, 5, 2, 2, 2).
pub fn figure_one_poset() -> LabelledWeightedPoset {
    LabelledWeightedPoset::new(5, vec![(3, 2), (1, 2), (1, 4), (5, 3), (5, 1)], vec![1, 5, 2, 2, 2])
        .expect("fixture is a poset")
}

/// An element of `±P` ordered `-1 < 1 < -2 < 2 < ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignedValue {
    magnitude: u32,
    negative: bool,
}

impl SignedValue {
    pub fn new(value: i64) -> Self {
        assert!(value != 0, "signed values are nonzero");
        SignedValue { magnitude: value.unsigned_abs() as u32, negative: value < 0 }
    }

    pub fn magnitude(&self) -> u32 {
        self.magnitude
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }
}

impl Ord for SignedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.magnitude
            .cmp(&other.magnitude)
            .then_with(|| other.negative.cmp(&self.negative))
    }
}

impl PartialOrd for SignedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-{}", self.magnitude)
        } else {
            write!(f, "{}", self.magnitude)
        }
    }
}

/// Whether the pair `(i <_P j)` admits values `(fi, fj)`.
fn pair_ok(i: usize, j: usize, fi: SignedValue, fj: SignedValue) -> bool {
    match fi.cmp(&fj) {
        Ordering::Less => true,
        Ordering::Equal => (i < j) != fi.negative,
        Ordering::Greater => false,
    }
}

/// `f[i-1]` is the value at label `i`. Every related pair `i <_P j` must
/// satisfy `f(i) < f(j)`, or equality in `P` when `i < j` and in `-P` when `i > j`.
pub fn is_enriched_ppartition(poset: &LabelledWeightedPoset, f: &[SignedValue]) -> bool {
    assert_eq!(f.len(), poset.n, "assignment must be total");
    (1..=poset.n).all(|i| {
        (1..=poset.n).all(|j| !poset.less(i, j) || pair_ok(i, j, f[i - 1], f[j - 1]))
    })
}

/// All orderings of the labels compatible with `<_P`.
pub fn linear_extensions(poset: &LabelledWeightedPoset) -> Vec<Permutation> {
    fn rec(poset: &LabelledWeightedPoset, placed: &mut Vec<bool>, prefix: &mut Vec<u32>, out: &mut Vec<Permutation>) {
        let n = poset.n;
        if prefix.len() == n {
            out.push(Permutation::new(prefix.clone()).expect("labels are a permutation"));
            return;
        }
        for v in 1..=n {
            if placed[v - 1] || (1..=n).any(|u| !placed[u - 1] && poset.less(u, v)) {
                continue;
            }
            placed[v - 1] = true;
            prefix.push(v as u32);
            rec(poset, placed, prefix, out);
            prefix.pop();
            placed[v - 1] = false;
        }
    }
    let mut out = Vec::new();
    rec(poset, &mut vec![false; poset.n], &mut Vec::new(), &mut out);
    out
}

/// Exponent vector over `x_1..x_N` and number of negative values.
type Tally = BTreeMap<(Vec<u32>, u32), u64>;

struct Enumeration<'a> {
    poset: &'a LabelledWeightedPoset,
    order: Vec<usize>,
    alphabet: Vec<SignedValue>,
    num_vars: usize,
}

impl Enumeration<'_> {
    fn extend(&self, depth: usize, values: &mut Vec<SignedValue>, exps: &mut Vec<u32>, negatives: u32, tally: &mut Tally) {
        if depth == self.order.len() {
            *tally.entry((exps.clone(), negatives)).or_insert(0) += 1;
            return;
        }
        let v = self.order[depth];
        for &value in &self.alphabet {
            if self.consistent(depth, v, value, values) {
                self.place(depth, v, value, values, exps, negatives, tally);
            }
        }
    }

    fn consistent(&self, depth: usize, v: usize, value: SignedValue, values: &[SignedValue]) -> bool {
        self.order[..depth].iter().zip(values).all(|(&u, &fu)| {
            (!self.poset.less(u, v) || pair_ok(u, v, fu, value))
                && (!self.poset.less(v, u) || pair_ok(v, u, value, fu))
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn place(
        &self,
        depth: usize,
        v: usize,
        value: SignedValue,
        values: &mut Vec<SignedValue>,
        exps: &mut Vec<u32>,
        negatives: u32,
        tally: &mut Tally,
    ) {
        let slot = value.magnitude as usize - 1;
        values.push(value);
        exps[slot] += self.poset.weight(v);
        self.extend(depth + 1, values, exps, negatives + value.negative as u32, tally);
        exps[slot] -= self.poset.weight(v);
        values.pop();
    }
}

/// `Γ^{(q)}(P)` restricted to `x_1, ..., x_N`: the sum over enriched
/// P-partitions with values in `{±1, ..., ±N}` of `Π_i q^{[f(i)<0]} x_{|f(i)|}^{ε(i)}`.
pub fn gamma_q<S: Scalar>(poset: &LabelledWeightedPoset, num_vars: usize, q: &S) -> TruncatedPolynomial<S> {
    let mut out = TruncatedPolynomial::zero(num_vars);
    if poset.n == 0 {
        out.add_term(vec![0; num_vars], q.one_like());
        return out;
    }
    let order: Vec<usize> = linear_extensions_first(poset);
    let alphabet: Vec<SignedValue> = (1..=num_vars as i64).flat_map(|m| [SignedValue::new(-m), SignedValue::new(m)]).collect();
    let job = Enumeration { poset, order, alphabet, num_vars };
    // split on the value of the first vertex
    let tallies: Vec<Tally> = job
        .alphabet
        .par_iter()
        .map(|&first| {
            let mut tally = Tally::new();
            let mut exps = vec![0u32; job.num_vars];
            job.place(0, job.order[0], first, &mut Vec::new(), &mut exps, 0, &mut tally);
            tally
        })
        .collect();
    let mut merged = Tally::new();
    for tally in tallies {
        for (key, count) in tally {
            *merged.entry(key).or_insert(0) += count;
        }
    }
    for ((exps, negatives), count) in merged {
        out.add_term(exps, q.pow(negatives).mul(&q.from_int(count as i64)));
    }
    out
}

/// One linear extension, used as the assignment order.
fn linear_extensions_first(poset: &LabelledWeightedPoset) -> Vec<usize> {
    let n = poset.n;
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = (1..=n)
            .find(|&v| !placed[v - 1] && (1..=n).all(|u| placed[u - 1] || !poset.less(u, v)))
            .expect("posets have minimal elements");
        placed[v - 1] = true;
        order.push(v);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::descent_set;
    use crate::qsym::{realize, universal_u};
    use crate::scalars::{QPoly, Rational};

    fn perm(s: &str) -> Permutation {
        Permutation::from_digits(s).unwrap()
    }

    #[test]
    fn signed_order() {
        let vals: Vec<SignedValue> = [-1, 1, -2, 2, -3, 3].iter().map(|&v| SignedValue::new(v)).collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enriched_conditions() {
        let chain = chain_poset(&perm("12"), &Composition::ones(2)).unwrap();
        let plus = SignedValue::new(1);
        let minus = SignedValue::new(-1);
        assert!(is_enriched_ppartition(&chain, &[plus, plus]));
        assert!(!is_enriched_ppartition(&chain, &[minus, minus]));

        let down = chain_poset(&perm("21"), &Composition::ones(2)).unwrap();
        assert!(!is_enriched_ppartition(&down, &[plus, plus]));
        assert!(is_enriched_ppartition(&down, &[minus, minus]));

        let single = LabelledWeightedPoset::new(1, vec![], vec![1]).unwrap();
        for v in [-2, -1, 1, 2] {
            assert!(is_enriched_ppartition(&single, &[SignedValue::new(v)]));
        }
    }

    #[test]
    fn poset_validation() {
        assert!(LabelledWeightedPoset::new(2, vec![(1, 2), (2, 1)], vec![1, 1]).is_err());
        assert!(LabelledWeightedPoset::new(2, vec![(1, 3)], vec![1, 1]).is_err());
        assert!(LabelledWeightedPoset::new(2, vec![], vec![1]).is_err());
        assert!(LabelledWeightedPoset::new(1, vec![], vec![0]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"n":5, "covers":[[3,2],[5,3],[5,1],[1,2],[1,4]], "weights":[1,5,2,2,2]}"#;
        let p = LabelledWeightedPoset::from_json(text).unwrap();
        assert_eq!(linear_extensions(&p).len(), linear_extensions(&figure_one_poset()).len());
        assert_eq!(LabelledWeightedPoset::from_json(&p.to_json().to_string()).unwrap(), p);
    }

    #[test]
    fn chain_poset_shape() {
        let c = chain_poset(&perm("21"), &Composition::new(vec![3, 1]).unwrap()).unwrap();
        assert!(c.less(2, 1));
        assert_eq!(c.weight(2), 3);
        assert_eq!(c.weight(1), 1);
        assert_eq!(linear_extensions(&c), vec![perm("21")]);
    }

    #[test]
    fn linear_extension_counts() {
        let antichain = LabelledWeightedPoset::new(3, vec![], vec![1, 1, 1]).unwrap();
        assert_eq!(linear_extensions(&antichain).len(), 6);
        // 5 is the unique minimum; then 1 and 3 in either order, 4 after 1, 2 after 1 and 3
        let exts = linear_extensions(&figure_one_poset());
        assert_eq!(exts.len(), 5);
        assert!(exts.iter().all(|t| t.word()[0] == 5));
    }

    #[test]
    fn single_vertex_gamma() {
        let single = LabelledWeightedPoset::new(1, vec![], vec![1]).unwrap();
        let g = gamma_q(&single, 1, &QPoly::q());
        let mut expected = TruncatedPolynomial::zero(1);
        expected.add_term(vec![1], QPoly::from_ints(&[1, 1]));
        assert_eq!(g, expected);
    }

    #[test]
    fn brute_force_matches_definition_filter() {
        // gamma_q's pruned search agrees with filtering all assignments
        let p = figure_one_poset();
        let q = Rational::from(3);
        let n_vars = 2;
        let alphabet: Vec<SignedValue> = [-1, 1, -2, 2].iter().map(|&v| SignedValue::new(v)).collect();
        let mut expected = TruncatedPolynomial::zero(n_vars);
        for code in 0..4usize.pow(5) {
            let f: Vec<SignedValue> = (0..5).map(|i| alphabet[code / 4usize.pow(i) % 4]).collect();
            if is_enriched_ppartition(&p, &f) {
                let mut exps = vec![0u32; n_vars];
                let mut c = Rational::one();
                for (i, v) in f.iter().enumerate() {
                    exps[v.magnitude() as usize - 1] += p.weight(i + 1);
                    if v.is_negative() {
                        c = c * q.clone();
                    }
                }
                expected.add_term(exps, c);
            }
        }
        assert_eq!(gamma_q(&p, n_vars, &q), expected);
    }

    #[test]
    fn chain_gamma_equals_realized_u() {
        let q = QPoly::q();
        let pi = perm("12");
        let alpha = Composition::ones(2);
        let g = gamma_q(&chain_poset(&pi, &alpha).unwrap(), 2, &q);
        let u = universal_u(&descent_set(&pi), &alpha, &q).unwrap();
        assert_eq!(g, realize(&u, 2));
    }

    #[test]
    fn gamma_monotone_in_alphabet() {
        let q = QPoly::q();
        let p = figure_one_poset();
        for n in 1..=2 {
            assert_eq!(gamma_q(&p, n + 1, &q).restrict(n), gamma_q(&p, n, &q));
        }
    }
}
