use std::collections::BTreeMap;

use crate::combinatorics::{
    binomial, count_extended_peak_sets, descent_set, enumerate_extended_peak_sets, peak_set_of_subset,
    Composition, IndexSet,
};
use crate::error::{QsymError, Result};
use crate::linalg::{build_b_direct, ExactMatrix};
use crate::ppartitions::{linear_extensions, LabelledWeightedPoset};
use crate::qsym::{
    eta_combination, fundamental_l, l_in_eta_basis, quasi_shuffle_product, universal_u, QSymElement,
};
use crate::scalars::{q_integer, rho, Cyclotomic, QPoly, Scalar, XYPoly};

fn check_vanishing_hypotheses(n: usize, p: usize, i: usize, j: &IndexSet) -> Result<()> {
    let fail = |why: &str| Err(QsymError::HypothesisViolated(format!("n={n}, p={p}, i={i}, J={j}: {why}")));
    if p == 0 || n < p + 1 {
        return fail("need p >= 1 and n >= p+1");
    }
    if i + p + 1 > n {
        return fail("need i <= n-1-p");
    }
    if j.ambient_n() != n {
        return fail("J must be a subset of [n-1]");
    }
    if (i + 1..=i + p + 1).any(|k| j.contains(k)) {
        return fail("J meets [i+1, i+p+1]");
    }
    if i != 0 && !j.contains(i) {
        return fail("i must lie in J ∪ {0}");
    }
    Ok(())
}

/// Every `(i, J)` meeting the hypotheses of the vanishing relation.
pub fn vanishing_parameters(n: usize, p: usize) -> Vec<(usize, IndexSet)> {
    if p == 0 || n < p + 1 {
        return Vec::new();
    }
    (0..=n - 1 - p)
        .flat_map(|i| {
            IndexSet::all(n)
                .filter(move |j| check_vanishing_hypotheses(n, p, i, j).is_ok())
                .map(move |j| (i, j))
        })
        .collect()
}

fn window(n: usize, i: usize, p: usize) -> IndexSet {
    IndexSet::interval(n, i + 1, i + p).expect("window lies in [n-1]")
}

/// `Σ_{I ⊆ [i+1, i+p]} (-1)^{|I|} L^{(q)}_{n, I ∪ J}` in the monomial basis.
pub fn alternating_sum<S: Scalar>(n: usize, p: usize, i: usize, j: &IndexSet, q: &S) -> Result<QSymElement<S>> {
    check_vanishing_hypotheses(n, p, i, j)?;
    let mut out = QSymElement::zero();
    for sub in window(n, i, p).subsets() {
        let l = fundamental_l(n, &sub.union(j), q)?;
        if sub.len() % 2 == 0 {
            out.add_assign(&l);
        } else {
            out.add_assign(&l.neg());
        }
    }
    Ok(out)
}

/// The alternating sum vanishes at `q = ρ_p`.
pub fn verify_vanishing(n: usize, p: usize, i: usize, j: &IndexSet) -> Result<bool> {
    Ok(alternating_sum(n, p, i, j, &rho(p as u32))?.is_zero())
}

fn add_coeff<S: Scalar>(map: &mut BTreeMap<IndexSet, S>, key: IndexSet, c: S) {
    match map.get_mut(&key) {
        Some(slot) => slot.add_assign(&c),
        None => {
            map.insert(key, c);
        }
    }
}

/// Checks, symbolically in `q`, that the alternating sum equals
/// `[p+1]_{-q} Σ (-q)^{|V'|}(q-1)^{|U'|} η_{n, U' ∪ (V'-1) ∪ V' ∪ [i+1,i+p]}`
/// over `U' ⊆ J`, `V' ⊆ Peak(J)`, `U' ∩ V' = ∅`. Both sides are compared in
/// the η basis and again in the monomial basis.
pub fn verify_symbolic_vanishing_identity(n: usize, p: usize, i: usize, j: &IndexSet) -> Result<bool> {
    check_vanishing_hypotheses(n, p, i, j)?;
    let q = QPoly::q();
    let w = window(n, i, p);

    let mut lhs: BTreeMap<IndexSet, QPoly> = BTreeMap::new();
    for sub in w.subsets() {
        let sign = if sub.len() % 2 == 0 { QPoly::one() } else { QPoly::one().neg() };
        for (k, c) in l_in_eta_basis(n, &sub.union(j), &q)? {
            add_coeff(&mut lhs, k, c.mul(&sign));
        }
    }
    lhs.retain(|_, c| !c.is_zero());

    let factor = q_integer(p as u32 + 1, &q.neg());
    let mut rhs: BTreeMap<IndexSet, QPoly> = BTreeMap::new();
    for v in peak_set_of_subset(j).subsets() {
        for u in j.difference(&v).subsets() {
            let index = u.union(&v.shift_down()).union(&v).union(&w);
            let c = q.neg().pow(v.len() as u32).mul(&q.sub(&QPoly::one()).pow(u.len() as u32));
            add_coeff(&mut rhs, index, c.mul(&factor));
        }
    }
    rhs.retain(|_, c| !c.is_zero());

    let monomial_lhs = alternating_sum(n, p, i, j, &q)?;
    let monomial_rhs = eta_combination(n, &rhs, &q)?;
    Ok(lhs == rhs && monomial_lhs == monomial_rhs)
}

/// `rank B_n` at `q = ρ_p`.
pub fn rank_at_rho(n: usize, p: usize) -> Result<usize> {
    Ok(build_b_direct(n, &rho(p as u32))?.rank())
}

/// `rank B_n^{(ρ_p)} = s^{(p)}_n`.
pub fn verify_dimension(n: usize, p: usize) -> Result<bool> {
    Ok(rank_at_rho(n, p)? as u128 == count_extended_peak_sets(n, p))
}

/// The columns of `B_n^{(ρ_p)}` indexed by `p`-extended peak sets are
/// independent and span the column space.
pub fn verify_spanning_set(n: usize, p: usize) -> Result<bool> {
    let b = build_b_direct(n, &rho(p as u32))?;
    let keep: Vec<usize> = enumerate_extended_peak_sets(n, p).iter().map(|s| s.bits() as usize).collect();
    let all_rows: Vec<usize> = (0..b.nrows()).collect();
    let restricted = b.select(&all_rows, &keep).rank();
    Ok(restricted == keep.len() && restricted == b.rank())
}

/// Monomial coordinates of a degree-`n` element, indexed by the partial-sum
/// set of each composition.
fn monomial_vector<S: Scalar>(n: usize, f: &QSymElement<S>, like: &S) -> Vec<S> {
    let mut v = vec![like.zero_like(); 1 << (n - 1)];
    for (alpha, c) in f.terms() {
        debug_assert_eq!(alpha.weight() as usize, n);
        v[alpha.to_subset().bits() as usize] = c.clone();
    }
    v
}

/// One product `L^p_{n,I} · L^p_{m,K}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCase {
    pub left: (usize, IndexSet),
    pub right: (usize, IndexSet),
}

/// All products of two `p`-extended peak functions with `n, m >= 1`,
/// `n + m <= max_total`, both indexed by `p`-extended peak sets.
pub fn product_closure_cases(p: usize, max_total: usize) -> Vec<ClosureCase> {
    let mut out = Vec::new();
    for n in 1..max_total {
        for m in 1..=max_total - n {
            for i in enumerate_extended_peak_sets(n, p) {
                for k in enumerate_extended_peak_sets(m, p) {
                    out.push(ClosureCase { left: (n, i), right: (m, k) });
                }
            }
        }
    }
    out
}

/// Each product re-expands as a combination of `L^p_{n+m,I'}` with
/// `I' ⊆_p [n+m-1]`, found by solving in monomial coordinates.
pub fn verify_product_closure(p: usize, cases: &[ClosureCase]) -> Result<bool> {
    let q = rho(p as u32);
    let mut spans: BTreeMap<usize, ExactMatrix<Cyclotomic>> = BTreeMap::new();
    for case in cases {
        let (n, i) = &case.left;
        let (m, k) = &case.right;
        let total = n + m;
        if !spans.contains_key(&total) {
            let columns: Vec<Vec<Cyclotomic>> = enumerate_extended_peak_sets(total, p)
                .iter()
                .map(|s| Ok(monomial_vector(total, &fundamental_l(total, s, &q)?, &q)))
                .collect::<Result<_>>()?;
            let rows = 1 << (total - 1);
            let grid = (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
            spans.insert(total, ExactMatrix::from_grid(rows, columns.len(), grid)?);
        }
        let product = quasi_shuffle_product(&fundamental_l(*n, i, &q)?, &fundamental_l(*m, k, &q)?);
        if spans[&total].solve(&monomial_vector(total, &product, &q)).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_k (-1)^k C(n-k,k) (xy)^k (x+y)^{n-2k} = Σ_j x^{n-j} y^j` for `n <= n_max`.
pub fn verify_binom_lemma(n_max: usize) -> bool {
    (0..=n_max).all(|n| {
        let (lhs, rhs) = binom_sides(n);
        lhs == rhs
    })
}

/// Both sides of the identity for one `n`.
pub fn binom_sides(n: usize) -> (XYPoly, XYPoly) {
    let (x, y) = (XYPoly::x(), XYPoly::y());
    let xy = x.mul(&y);
    let sum = x.add(&y);
    let mut lhs = XYPoly::zero();
    for k in 0..=n / 2 {
        let c = binomial((n - k) as u64, k as u64) as i64;
        let c = if k % 2 == 0 { c } else { -c };
        let term = xy.pow(k as u32).mul(&sum.pow((n - 2 * k) as u32));
        lhs = lhs.add(&term.mul(&XYPoly::monomial(c, 0, 0)));
    }
    let rhs = (0..=n).fold(XYPoly::zero(), |acc, j| {
        acc.add(&XYPoly::monomial(1, (n - j) as u32, j as u32))
    });
    (lhs, rhs)
}

/// `L_{n,I}` from the sum over equality patterns agrees with its expansion
/// through enriched q-monomials, symbolically, for every `I ⊆ [n-1]`.
pub fn verify_expansion_agreement(n: usize) -> Result<bool> {
    let q = QPoly::q();
    for set in IndexSet::all(n) {
        let direct = fundamental_l(n, &set, &q)?;
        let via_eta = eta_combination(n, &l_in_eta_basis(n, &set, &q)?, &q)?;
        if direct != via_eta {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_{π ∈ L(P)} U^{(q)}_{π, (ε(π_1), ..., ε(π_n))}`.
pub fn linear_extension_expansion<S: Scalar>(poset: &LabelledWeightedPoset, q: &S) -> Result<QSymElement<S>> {
    let mut out = QSymElement::zero();
    for pi in linear_extensions(poset) {
        let parts = pi.word().iter().map(|&v| poset.weight(v as usize)).collect();
        out.add_assign(&universal_u(&descent_set(&pi), &Composition::new(parts)?, q)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ppartitions::figure_one_poset;
    use crate::scalars::Rational;

    fn set(n: usize, m: &[usize]) -> IndexSet {
        IndexSet::new(n, m).unwrap()
    }

    #[test]
    fn smallest_vanishing_case() {
        let e = IndexSet::empty(2);
        assert!(verify_vanishing(2, 1, 0, &e).unwrap());
        assert!(!alternating_sum(2, 1, 0, &e, &Rational::from(2)).unwrap().is_zero());
        assert!(verify_symbolic_vanishing_identity(2, 1, 0, &e).unwrap());
    }

    #[test]
    fn hypotheses_are_enforced() {
        assert!(verify_vanishing(2, 2, 0, &IndexSet::empty(2)).is_err());
        assert!(verify_vanishing(5, 1, 2, &set(5, &[1])).is_err());
        assert!(verify_vanishing(5, 1, 1, &set(5, &[1, 2])).is_err());
        assert!(verify_vanishing(5, 1, 1, &set(5, &[1, 4])).is_ok());
    }

    #[test]
    fn parameter_enumeration() {
        // n = 3, p = 1: i = 0 with J ⊆ {1,2} avoiding {1,2}; i = 1 with 1 ∈ J avoiding {2,3}
        let params = vanishing_parameters(3, 1);
        assert_eq!(params, vec![(0, IndexSet::empty(3)), (1, set(3, &[1]))]);
    }

    #[test]
    fn dimension_examples() {
        let ranks: Vec<usize> = (1..=7).map(|n| rank_at_rho(n, 1).unwrap()).collect();
        assert_eq!(ranks, vec![1, 1, 2, 3, 5, 8, 13]);
        let ranks: Vec<usize> = (1..=6).map(|n| rank_at_rho(n, 2).unwrap()).collect();
        assert_eq!(ranks, vec![1, 2, 3, 6, 11, 20]);
        assert!(verify_dimension(3, 5).unwrap());
    }

    #[test]
    fn spanning_examples() {
        assert!(verify_spanning_set(4, 1).unwrap());
        assert!(verify_spanning_set(4, 2).unwrap());
        assert!(verify_spanning_set(3, 4).unwrap());
    }

    #[test]
    fn closure_examples() {
        let single = ClosureCase { left: (1, IndexSet::empty(1)), right: (1, IndexSet::empty(1)) };
        assert!(verify_product_closure(1, &[single]).unwrap());
        assert!(verify_product_closure(1, &product_closure_cases(1, 4)).unwrap());
        assert!(verify_product_closure(2, &product_closure_cases(2, 4)).unwrap());
    }

    #[test]
    fn binom_examples() {
        let (l, r) = binom_sides(2);
        let one = num_bigint::BigInt::from(1);
        assert_eq!(l.eval(&one, &one), num_bigint::BigInt::from(3));
        assert_eq!(l, r);
        assert_eq!(binom_sides(0).0, XYPoly::one());
        assert!(verify_binom_lemma(15));
    }

    #[test]
    fn figure_one_expansion_is_homogeneous() {
        let e = linear_extension_expansion(&figure_one_poset(), &QPoly::q()).unwrap();
        assert_eq!(e.homogeneous_degree(), Some(12));
    }
}
