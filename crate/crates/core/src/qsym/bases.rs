use std::collections::BTreeMap;

use super::QSymElement;
use crate::combinatorics::{descent_set, peak_set_of_subset, Composition, IndexSet, Permutation};
use crate::error::{QsymError, Result};
use crate::scalars::Scalar;

fn powers<S: Scalar>(base: &S, max: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(base.one_like());
    for k in 0..max {
        let next = out[k].mul(base);
        out.push(next);
    }
    out
}

fn check_ambient(set: &IndexSet, n: usize) -> Result<()> {
    if set.ambient_n() != n {
        return Err(QsymError::NotASubset { set: set.to_string(), bound: n.saturating_sub(1) });
    }
    Ok(())
}

/// `U^{(q)}_{π,α}` for any `π` with `Des(π) = des`.
///
/// The weakly increasing index sequences of the defining sum are grouped by
/// their equality pattern `E = {j : i_j = i_{j+1}}`. A pattern contributes
/// `q^{|E ∩ des|} (q+1)^{n-|E|} M_{α collapsed along E}` unless some peak `j`
/// of `des` has both `j-1, j ∈ E`.
pub fn universal_u<S: Scalar>(des: &IndexSet, alpha: &Composition, q: &S) -> Result<QSymElement<S>> {
    let n = alpha.len();
    check_ambient(des, n)?;
    let peaks = peak_set_of_subset(des).bits();
    let q_pows = powers(q, n);
    let qp1_pows = powers(&q.add(&q.one_like()), n);
    let mut out = QSymElement::zero();
    for pattern in IndexSet::all(n) {
        let e = pattern.bits();
        if e & (e << 1) & peaks != 0 {
            continue;
        }
        let coeff = q_pows[(e & des.bits()).count_ones() as usize]
            .mul(&qp1_pows[n - e.count_ones() as usize]);
        out.add_term(alpha.collapse(e), coeff);
    }
    Ok(out)
}

/// Permutation front-end for [`universal_u`].
pub fn universal_u_of_permutation<S: Scalar>(
    pi: &Permutation,
    alpha: &Composition,
    q: &S,
) -> Result<QSymElement<S>> {
    if pi.len() != alpha.len() {
        return Err(QsymError::LengthMismatch(format!("permutation {pi} vs composition {alpha}")));
    }
    universal_u(&descent_set(pi), alpha, q)
}

/// `η^{(q)}_{s,I} = Σ_{E ⊇ I} (q+1)^{s-|E|} M_{(1^s) collapsed along E}`.
///
/// `I` lists the forced equalities `i_j = i_{j+1}`, so this is `η^{(q)}_α`
/// for the composition `α` whose partial sums are `[s-1] \ I`.
pub fn eta<S: Scalar>(s: usize, set: &IndexSet, q: &S) -> Result<QSymElement<S>> {
    check_ambient(set, s)?;
    let qp1_pows = powers(&q.add(&q.one_like()), s);
    let ones = Composition::ones(s);
    let free = IndexSet::full(s).difference(set);
    let mut out = QSymElement::zero();
    for extra in free.subsets() {
        let e = set.union(&extra);
        out.add_term(ones.collapse(e.bits()), qp1_pows[s - e.len()].clone());
    }
    Ok(out)
}

/// `L^{(q)}_{n,I} = U^{(q)}_{π,(1^n)}` for `Des(π) = I`.
pub fn fundamental_l<S: Scalar>(n: usize, set: &IndexSet, q: &S) -> Result<QSymElement<S>> {
    universal_u(set, &Composition::ones(n), q)
}

pub fn fundamental_l_of_permutation<S: Scalar>(pi: &Permutation, q: &S) -> Result<QSymElement<S>> {
    fundamental_l(pi.len(), &descent_set(pi), q)
}

/// Coefficients of `L^{(q)}_{n,I}` on the enriched q-monomials `η^{(q)}_{n,·}`:
/// `Σ (-q)^{|K|} (q-1)^{|J|} η_{n, J ∪ (K-1) ∪ K}` over `J ⊆ I`,
/// `K ⊆ Peak(I)`, `J ∩ K = ∅`. Coefficients are accumulated per index set.
pub fn l_in_eta_basis<S: Scalar>(n: usize, set: &IndexSet, q: &S) -> Result<BTreeMap<IndexSet, S>> {
    check_ambient(set, n)?;
    let peaks = peak_set_of_subset(set);
    let minus_q = powers(&q.neg(), peaks.len());
    let q_minus_one = powers(&q.sub(&q.one_like()), set.len());
    let mut out: BTreeMap<IndexSet, S> = BTreeMap::new();
    for k in peaks.subsets() {
        for j in set.difference(&k).subsets() {
            let index = j.union(&k.shift_down()).union(&k);
            let coeff = minus_q[k.len()].mul(&q_minus_one[j.len()]);
            match out.get_mut(&index) {
                Some(c) => c.add_assign(&coeff),
                None => {
                    out.insert(index, coeff);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Expands `Σ c_J η^{(q)}_{n,J}` into the monomial basis.
pub fn eta_combination<S: Scalar>(
    n: usize,
    coeffs: &BTreeMap<IndexSet, S>,
    q: &S,
) -> Result<QSymElement<S>> {
    let mut out = QSymElement::zero();
    for (set, c) in coeffs {
        out.add_assign(&eta(n, set, q)?.scale(c));
    }
    Ok(out)
}
