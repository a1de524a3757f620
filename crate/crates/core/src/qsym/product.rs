use std::collections::BTreeMap;

use super::{universal_u, QSymElement};
use crate::combinatorics::{coshuffles, descent_set, standardize, Composition, Permutation};
use crate::error::Result;
use crate::scalars::Scalar;

/// The overlapping (quasi-)shuffle of two compositions with multiplicities.
///
/// `a·u ⧢ b·v = a(u ⧢ b·v) + b(a·u ⧢ v) + (a+b)(u ⧢ v)`.
pub fn quasi_shuffle(a: &Composition, b: &Composition) -> BTreeMap<Composition, u64> {
    let (a, b) = (a.parts(), b.parts());
    // table[i][j] = quasi-shuffle of the suffixes a[i..] and b[j..]
    let mut table: Vec<Vec<BTreeMap<Vec<u32>, u64>>> = vec![vec![BTreeMap::new(); b.len() + 1]; a.len() + 1];
    for i in (0..=a.len()).rev() {
        for j in (0..=b.len()).rev() {
            let mut cell = BTreeMap::new();
            if i == a.len() {
                cell.insert(b[j..].to_vec(), 1);
            } else if j == b.len() {
                cell.insert(a[i..].to_vec(), 1);
            } else {
                let mut push = |head: u32, from: &BTreeMap<Vec<u32>, u64>| {
                    for (tail, mult) in from {
                        let mut word = Vec::with_capacity(tail.len() + 1);
                        word.push(head);
                        word.extend_from_slice(tail);
                        *cell.entry(word).or_insert(0) += mult;
                    }
                };
                push(a[i], &table[i + 1][j]);
                push(b[j], &table[i][j + 1]);
                push(a[i] + b[j], &table[i + 1][j + 1]);
            }
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
        .into_iter()
        .map(|(parts, mult)| (Composition::from_parts_unchecked(parts), mult))
        .collect()
}

/// The product of QSym in the monomial basis, extended bilinearly from
/// [`quasi_shuffle`].
pub fn quasi_shuffle_product<S: Scalar>(f: &QSymElement<S>, g: &QSymElement<S>) -> QSymElement<S> {
    let mut out = QSymElement::zero();
    for (alpha, a) in f.terms() {
        for (beta, b) in g.terms() {
            let ab = a.mul(b);
            for (gamma, mult) in quasi_shuffle(alpha, beta) {
                out.add_term(gamma, ab.mul(&ab.from_int(mult as i64)));
            }
        }
    }
    out
}

/// Elements of `QSym ⊗ QSym` in the basis `M_α ⊗ M_β`.
pub type Tensor<S> = BTreeMap<(Composition, Composition), S>;

fn tensor_add<S: Scalar>(t: &mut Tensor<S>, key: (Composition, Composition), c: S) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&key) {
        Some(slot) => {
            slot.add_assign(&c);
            if slot.is_zero() {
                t.remove(&key);
            }
        }
        None => {
            t.insert(key, c);
        }
    }
}

/// Deconcatenation coproduct `Δ M_γ = Σ_i M_{γ_1..γ_i} ⊗ M_{γ_{i+1}..γ_ℓ}`.
pub fn coproduct<S: Scalar>(f: &QSymElement<S>) -> Tensor<S> {
    let mut out = Tensor::new();
    for (gamma, c) in f.terms() {
        let parts = gamma.parts();
        for i in 0..=parts.len() {
            let left = Composition::from_parts_unchecked(parts[..i].to_vec());
            let right = Composition::from_parts_unchecked(parts[i..].to_vec());
            tensor_add(&mut out, (left, right), c.clone());
        }
    }
    out
}

fn tensor_product<S: Scalar>(f: &QSymElement<S>, g: &QSymElement<S>) -> Tensor<S> {
    let mut out = Tensor::new();
    for (a, x) in f.terms() {
        for (b, y) in g.terms() {
            tensor_add(&mut out, (a.clone(), b.clone()), x.mul(y));
        }
    }
    out
}

fn std_of(word: &[u32]) -> Permutation {
    let as_i64: Vec<i64> = word.iter().map(|&v| v as i64).collect();
    standardize(&as_i64).expect("permutation entries are distinct")
}

/// `Σ_{i=0}^n U_{std(π_1..π_i),(α_1..α_i)} ⊗ U_{std(π_{i+1}..π_n),(α_{i+1}..α_n)}`.
pub fn u_coproduct_formula<S: Scalar>(pi: &Permutation, alpha: &Composition, q: &S) -> Result<Tensor<S>> {
    let mut out = Tensor::new();
    let (w, parts) = (pi.word(), alpha.parts());
    for i in 0..=w.len() {
        let left_pi = std_of(&w[..i]);
        let right_pi = std_of(&w[i..]);
        let left = universal_u(
            &descent_set(&left_pi),
            &Composition::from_parts_unchecked(parts[..i].to_vec()),
            q,
        )?;
        let right = universal_u(
            &descent_set(&right_pi),
            &Composition::from_parts_unchecked(parts[i..].to_vec()),
            q,
        )?;
        for (key, c) in tensor_product(&left, &right) {
            tensor_add(&mut out, key, c);
        }
    }
    Ok(out)
}

/// Checks `U_{π,α} U_{σ,β} = Σ_{(τ,γ) ∈ (π,α) ⧢ (σ,β)} U_{τ,γ}`.
pub fn product_rule_check<S: Scalar>(
    pi: &Permutation,
    alpha: &Composition,
    sigma: &Permutation,
    beta: &Composition,
    q: &S,
) -> Result<bool> {
    let lhs = quasi_shuffle_product(
        &universal_u(&descent_set(pi), alpha, q)?,
        &universal_u(&descent_set(sigma), beta, q)?,
    );
    let mut rhs = QSymElement::zero();
    for (tau, gamma) in coshuffles(pi, alpha, sigma, beta)? {
        rhs.add_assign(&universal_u(&descent_set(&tau), &gamma, q)?);
    }
    Ok(lhs == rhs)
}

/// Checks the displayed coproduct of `U_{π,α}` against the deconcatenation
/// coproduct of its monomial expansion.
pub fn coproduct_check<S: Scalar>(pi: &Permutation, alpha: &Composition, q: &S) -> Result<bool> {
    let u = universal_u(&descent_set(pi), alpha, q)?;
    Ok(coproduct(&u) == u_coproduct_formula(pi, alpha, q)?)
}

/// `(ε ⊗ id) Δ f = f` and `(id ⊗ ε) Δ f = f`, with `ε(M_γ) = [γ = ∅]`.
pub fn counit_check<S: Scalar>(f: &QSymElement<S>) -> bool {
    let delta = coproduct(f);
    let mut left = QSymElement::zero();
    let mut right = QSymElement::zero();
    for ((a, b), c) in &delta {
        if a.is_empty() {
            left.add_term(b.clone(), c.clone());
        }
        if b.is_empty() {
            right.add_term(a.clone(), c.clone());
        }
    }
    left == *f && right == *f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::IndexSet;
    use crate::qsym::{fundamental_l, realize};
    use crate::scalars::{QPoly, Rational};

    fn comp(p: &[u32]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn m(parts: &[u32]) -> QSymElement<Rational> {
        QSymElement::monomial(comp(parts), Rational::one())
    }

    #[test]
    fn product_examples() {
        let p = quasi_shuffle_product(&m(&[1]), &m(&[1]));
        assert_eq!(p, m(&[1, 1]).scale(&Rational::from(2)).add(&m(&[2])));
        let p = quasi_shuffle_product(&m(&[1]), &m(&[2]));
        assert_eq!(p, m(&[1, 2]).add(&m(&[2, 1])).add(&m(&[3])));
        let f = m(&[2, 1]).add(&m(&[3]).scale(&Rational::new(1, 2)));
        assert_eq!(quasi_shuffle_product(&f, &m(&[])), f);
    }

    #[test]
    fn realization_is_multiplicative() {
        let comps: Vec<Composition> = (1..=3).flat_map(Composition::all_of_weight).collect();
        for a in &comps {
            for b in &comps {
                let (fa, fb) = (
                    QSymElement::monomial(a.clone(), Rational::one()),
                    QSymElement::monomial(b.clone(), Rational::one()),
                );
                let prod = quasi_shuffle_product(&fa, &fb);
                for k in 1..=4 {
                    assert_eq!(realize(&prod, k), realize(&fa, k).mul(&realize(&fb, k)), "{a} {b} k={k}");
                }
            }
        }
    }

    #[test]
    fn quasi_shuffle_count_is_delannoy_like() {
        // |(1^n) ⧢ (1^m)| with multiplicities: Σ_k C(n+m-k, k, n-k, m-k)
        let total: u64 = quasi_shuffle(&Composition::ones(2), &Composition::ones(2)).values().sum();
        assert_eq!(total, 6 + 6 + 1);
    }

    #[test]
    fn smallest_product_rule() {
        let one = Permutation::identity(1);
        let c = Composition::ones(1);
        assert!(product_rule_check(&one, &c, &one, &c, &QPoly::q()).unwrap());
    }

    #[test]
    fn product_of_fundamentals_is_coshuffle_sum() {
        let q = QPoly::q();
        let l1 = fundamental_l(1, &IndexSet::empty(1), &q).unwrap();
        let l2 = fundamental_l(2, &IndexSet::new(2, &[1]).unwrap(), &q).unwrap();
        let lhs = quasi_shuffle_product(&l1, &l2);
        let sigma = Permutation::new(vec![2, 1]).unwrap();
        let shuffles = coshuffles(&Permutation::identity(1), &Composition::ones(1), &sigma, &Composition::ones(2)).unwrap();
        assert_eq!(shuffles.len(), 3);
        let mut rhs = QSymElement::zero();
        for (tau, gamma) in shuffles {
            rhs.add_assign(&universal_u(&descent_set(&tau), &gamma, &q).unwrap());
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coproduct_small_cases() {
        let q = QPoly::q();
        let pi = Permutation::identity(1);
        let alpha = Composition::ones(1);
        let u = universal_u(&IndexSet::empty(1), &alpha, &q).unwrap();
        let formula = u_coproduct_formula(&pi, &alpha, &q).unwrap();
        let mut expected = tensor_product(&u, &QSymElement::unit(&q));
        for (k, c) in tensor_product(&QSymElement::unit(&q), &u) {
            tensor_add(&mut expected, k, c);
        }
        assert_eq!(formula, expected);
        for n in 1..=4 {
            for pi in Permutation::all(n) {
                assert!(coproduct_check(&pi, &Composition::ones(n), &q).unwrap(), "{pi}");
                let u = universal_u(&descent_set(&pi), &Composition::ones(n), &q).unwrap();
                assert!(counit_check(&u));
            }
        }
    }
}
