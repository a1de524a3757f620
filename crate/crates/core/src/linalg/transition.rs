use rayon::prelude::*;

use super::ExactMatrix;
use crate::combinatorics::IndexSet;
use crate::error::{QsymError, Result};
use crate::qsym::l_in_eta_basis;
use crate::scalars::{q_integer, rho, Scalar};

/// Subsets of `[n-1]` in reverse-lexicographic order: compare the elements
/// written in decreasing order lexicographically. This is ascending order of
/// `Σ_{i ∈ I} 2^{i-1}`.
pub fn subset_order(n: usize) -> Vec<IndexSet> {
    IndexSet::all(n).collect()
}

fn labelled<S: Scalar>(n: usize, grid: Vec<Vec<S>>) -> ExactMatrix<S> {
    let order = subset_order(n);
    let size = order.len();
    ExactMatrix::from_grid(size, size, grid)
        .and_then(|m| m.with_labels(order.clone(), order))
        .expect("square grid of size 2^(n-1)")
}

/// `B_n`: column `I` holds the coordinates of `L_{n,I}` in the basis
/// `(η_{n,J})_J`. `B_0` is the empty matrix.
pub fn build_b_direct<S: Scalar>(n: usize, q: &S) -> Result<ExactMatrix<S>> {
    if n == 0 {
        return Ok(ExactMatrix::empty());
    }
    let order = subset_order(n);
    let size = order.len();
    let columns: Vec<Vec<S>> = order
        .par_iter()
        .map(|set| {
            let mut col = vec![q.zero_like(); size];
            for (j, c) in l_in_eta_basis(n, set, q)? {
                col[j.bits() as usize].add_assign(&c);
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let grid = (0..size).map(|i| columns.iter().map(|col| col[i].clone()).collect()).collect();
    Ok(labelled(n, grid))
}

fn scaled<S: Scalar>(block: &[Vec<S>], c: &S) -> Vec<Vec<S>> {
    block.iter().map(|r| r.iter().map(|x| x.mul(c)).collect()).collect()
}

/// `[[tl, tr], [bl, br]]` for square blocks of one size.
fn blocks<S: Scalar>(tl: Vec<Vec<S>>, tr: Vec<Vec<S>>, bl: Vec<Vec<S>>, br: Vec<Vec<S>>) -> Vec<Vec<S>> {
    let top = tl.into_iter().zip(tr).map(|(mut a, b)| {
        a.extend(b);
        a
    });
    let bottom = bl.into_iter().zip(br).map(|(mut a, b)| {
        a.extend(b);
        a
    });
    top.chain(bottom).collect()
}

fn zeros<S: Scalar>(k: usize, q: &S) -> Vec<Vec<S>> {
    vec![vec![q.zero_like(); k]; k]
}

/// Grids of `B_0, ..., B_n` and `A_1, ..., A_n` (index 0 of the second list
/// is unused).
fn recursive_grids<S: Scalar>(n: usize, q: &S) -> (Vec<Vec<Vec<S>>>, Vec<Vec<Vec<S>>>) {
    let one = q.one_like();
    let qm1 = q.sub(&one);
    let minus_q = q.neg();
    let mut b: Vec<Vec<Vec<S>>> = vec![Vec::new()];
    let mut a: Vec<Vec<Vec<S>>> = vec![Vec::new()];
    for k in 1..=n {
        let ak = match k {
            1 => vec![vec![one.clone()]],
            2 => vec![vec![qm1.clone()]],
            _ => {
                let top = scaled(&b[k - 2], &qm1);
                blocks(top.clone(), top, scaled(&b[k - 2], &minus_q), scaled(&a[k - 1], &qm1))
            }
        };
        let bk = match k {
            1 => vec![vec![one.clone()]],
            _ => {
                let half = b[k - 1].len();
                blocks(b[k - 1].clone(), b[k - 1].clone(), zeros(half, q), ak.clone())
            }
        };
        a.push(ak);
        b.push(bk);
    }
    (b, a)
}

/// `B_n` from `B_n = [[B_{n-1}, B_{n-1}], [0, A_n]]` and
/// `A_n = [[(q-1)B_{n-2}, (q-1)B_{n-2}], [-qB_{n-2}, (q-1)A_{n-1}]]`.
pub fn build_b_recursive<S: Scalar>(n: usize, q: &S) -> ExactMatrix<S> {
    if n == 0 {
        return ExactMatrix::empty();
    }
    let (mut b, _) = recursive_grids(n, q);
    labelled(n, b.swap_remove(n))
}

/// The diagonal block `A_n` of `B_m` (any `m >= n`) on subsets with maximum
/// `n-1`.
pub fn a_block<S: Scalar>(n: usize, q: &S) -> Result<ExactMatrix<S>> {
    if n == 0 {
        return Err(QsymError::HypothesisViolated("A_n is defined for n >= 1".into()));
    }
    let (_, mut a) = recursive_grids(n, q);
    let grid = a.swap_remove(n);
    let k = grid.len();
    let labels: Vec<IndexSet> = if n == 1 {
        vec![IndexSet::empty(1)]
    } else {
        subset_order(n).into_iter().filter(|s| s.max_element() == n - 1).collect()
    };
    ExactMatrix::from_grid(k, k, grid)?.with_labels(labels.clone(), labels)
}

/// The pair `(α_n, β_n)`.
#[derive(Clone, PartialEq, Debug)]
pub struct CoefficientPair<S> {
    pub alpha: S,
    pub beta: S,
}

/// `(α_0, β_0) = (0, 1)` and `(α_{n+1}, β_{n+1}) = (α_n, β_n)·[[q-1, q], [1, 0]]`.
pub fn coefficient_sequence<S: Scalar>(n: usize, q: &S) -> CoefficientPair<S> {
    let qm1 = q.sub(&q.one_like());
    let mut pair = CoefficientPair { alpha: q.zero_like(), beta: q.one_like() };
    for _ in 0..n {
        pair = CoefficientPair {
            alpha: pair.alpha.mul(&qm1).add(&pair.beta),
            beta: pair.alpha.mul(q),
        };
    }
    pair
}

/// `(-1)^n (-[n]_{-q}, q[n-1]_{-q})`, valid for `n >= 1`.
pub fn coefficient_closed_form<S: Scalar>(n: usize, q: &S) -> Result<CoefficientPair<S>> {
    if n == 0 {
        return Err(QsymError::HypothesisViolated("closed form needs n >= 1".into()));
    }
    let mq = q.neg();
    let sign = if n % 2 == 0 { q.one_like() } else { q.one_like().neg() };
    Ok(CoefficientPair {
        alpha: sign.mul(&q_integer(n as u32, &mq).neg()),
        beta: sign.mul(&q.mul(&q_integer(n as u32 - 1, &mq))),
    })
}

/// One row of [`kernel_dimension_table`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KernelRow {
    pub n: usize,
    pub rank: usize,
    pub dim_ker: usize,
    /// `Σ_{k=1}^{p+1} dim ker B_{n-k} + [n > p+1] 2^{n-p-2}` for `n > p`,
    /// and `0` for `n <= p`, evaluated on the computed kernel dimensions.
    pub predicted: usize,
}

/// `dim ker B_n` at `q = ρ_p` for `n = 1..=n_max`, by elimination, next to
/// the value predicted by the kernel recurrence.
pub fn kernel_dimension_table(p: usize, n_max: usize) -> Result<Vec<KernelRow>> {
    if p == 0 {
        return Err(QsymError::HypothesisViolated("p must be positive".into()));
    }
    let q = rho(p as u32);
    let ranks: Vec<usize> = (1..=n_max)
        .into_par_iter()
        .map(|n| build_b_direct(n, &q).map(|m| m.rank()))
        .collect::<Result<_>>()?;
    let mut dims = vec![0usize];
    let mut rows = Vec::with_capacity(n_max);
    for (n, &rank) in (1..=n_max).zip(&ranks) {
        let dim_ker = (1usize << (n - 1)) - rank;
        let predicted = if n <= p {
            0
        } else {
            let tail: usize = (1..=p + 1).map(|k| dims[n - k]).sum();
            tail + if n > p + 1 { 1 << (n - p - 2) } else { 0 }
        };
        dims.push(dim_ker);
        rows.push(KernelRow { n, rank, dim_ker, predicted });
    }
    Ok(rows)
}

/// Checks, for one vector `X = (X¹, X²)`, that `(αA_{n+1} + βB_n)X` has top
/// half `c·B_{n-1}(X¹+X²)` and bottom half `-qα·B_{n-1}X¹ + c·A_n X²`, where
/// `c = (q-1)α + β`.
pub fn kernel_block_identity<S: Scalar>(n: usize, alpha: &S, beta: &S, q: &S, x: &[S]) -> Result<bool> {
    if n < 2 || x.len() != 1 << (n - 1) {
        return Err(QsymError::HypothesisViolated(format!(
            "need n >= 2 and a vector of length 2^(n-1), got n = {n} and length {}",
            x.len()
        )));
    }
    let (b, a) = recursive_grids(n + 1, q);
    let as_matrix = |g: &Vec<Vec<S>>| ExactMatrix::from_grid(g.len(), g.len(), g.clone()).expect("square");
    let combined: Vec<Vec<S>> = a[n + 1]
        .iter()
        .zip(&b[n])
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| alpha.mul(x).add(&beta.mul(y))).collect())
        .collect();
    let lhs = as_matrix(&combined).mul_vec(x);

    let half = x.len() / 2;
    let (x1, x2) = x.split_at(half);
    let c = q.sub(&q.one_like()).mul(alpha).add(beta);
    let b_prev = as_matrix(&b[n - 1]);
    let sum: Vec<S> = x1.iter().zip(x2).map(|(u, v)| u.add(v)).collect();
    let top: Vec<S> = b_prev.mul_vec(&sum).iter().map(|v| v.mul(&c)).collect();
    let minus_q_alpha = q.mul(alpha).neg();
    let bottom: Vec<S> = b_prev
        .mul_vec(x1)
        .iter()
        .zip(as_matrix(&a[n]).mul_vec(x2))
        .map(|(u, v)| u.mul(&minus_q_alpha).add(&v.mul(&c)))
        .collect();
    Ok(lhs[..half] == top[..] && lhs[half..] == bottom[..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{QPoly, Rational};

    fn poly(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn subset_order_examples() {
        let names: Vec<String> = subset_order(4).iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["{}", "{1}", "{2}", "{1,2}", "{3}", "{1,3}", "{2,3}", "{1,2,3}"]);
        assert_eq!(subset_order(1), vec![IndexSet::empty(1)]);
        assert_eq!(subset_order(3).len(), 4);
    }

    #[test]
    fn subset_order_is_decreasing_word_lex() {
        for n in 1..=7 {
            let order = subset_order(n);
            for w in order.windows(2) {
                let word = |s: &IndexSet| s.members().into_iter().rev().collect::<Vec<_>>();
                assert!(word(&w[0]) < word(&w[1]), "{} {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn b4_is_the_printed_matrix() {
        let o = poly(&[1]);
        let z = poly(&[]);
        let a = poly(&[-1, 1]);
        let mq = poly(&[0, -1]);
        let a2 = poly(&[1, -2, 1]);
        let a3 = poly(&[-1, 3, -3, 1]);
        let mqa = poly(&[0, 1, -1]);
        let printed = vec![
            vec![o.clone(), o.clone(), o.clone(), o.clone(), o.clone(), o.clone(), o.clone(), o.clone()],
            vec![z.clone(), a.clone(), z.clone(), a.clone(), z.clone(), a.clone(), z.clone(), a.clone()],
            vec![z.clone(), z.clone(), a.clone(), a.clone(), z.clone(), z.clone(), a.clone(), a.clone()],
            vec![z.clone(), z.clone(), mq.clone(), a2.clone(), z.clone(), z.clone(), mq.clone(), a2.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone(), a.clone(), a.clone(), a.clone(), a.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), a2.clone(), z.clone(), a2.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone(), mq.clone(), mq.clone(), a2.clone(), a2.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), mqa.clone(), mqa.clone(), a3.clone()],
        ];
        let q = QPoly::q();
        assert_eq!(build_b_direct(4, &q).unwrap().grid(), &printed[..]);
        assert_eq!(build_b_recursive(4, &q).grid(), &printed[..]);
    }

    #[test]
    fn small_cases() {
        let q = QPoly::q();
        let b2 = build_b_direct(2, &q).unwrap();
        assert_eq!(b2.grid(), &[vec![poly(&[1]), poly(&[1])], vec![poly(&[]), poly(&[-1, 1])]][..]);
        assert_eq!(build_b_direct(1, &q).unwrap().grid(), &[vec![poly(&[1])]][..]);
        assert_eq!(build_b_direct(0, &q).unwrap().nrows(), 0);
        let a3 = a_block(3, &q).unwrap();
        assert_eq!(
            a3.grid(),
            &[vec![poly(&[-1, 1]), poly(&[-1, 1])], vec![poly(&[0, -1]), poly(&[1, -2, 1])]][..]
        );
    }

    #[test]
    fn direct_equals_recursive() {
        let q = QPoly::q();
        for n in 0..=8 {
            let direct = build_b_direct(n, &q).unwrap();
            assert_eq!(direct, build_b_recursive(n, &q), "n = {n}");
            assert!(direct.is_block_upper_triangular());
        }
    }

    #[test]
    fn a_block_is_bottom_right_of_b() {
        let q = QPoly::q();
        for n in 2..=7 {
            let b = build_b_direct(n, &q).unwrap();
            let idx: Vec<usize> = (1 << (n - 2)..1 << (n - 1)).collect();
            assert_eq!(b.select(&idx, &idx), a_block(n, &q).unwrap());
        }
    }

    #[test]
    fn generic_rank_is_full() {
        for q in [Rational::from(2), Rational::new(1, 2)] {
            for n in 1..=8 {
                assert_eq!(build_b_direct(n, &q).unwrap().rank(), 1 << (n - 1), "n = {n}, q = {q}");
            }
        }
        assert_eq!(build_b_direct(2, &Rational::one()).unwrap().rank(), 1);
    }

    #[test]
    fn coefficients_match_closed_form() {
        let q = QPoly::q();
        assert_eq!(coefficient_sequence(0, &q), CoefficientPair { alpha: QPoly::zero(), beta: QPoly::one() });
        assert_eq!(coefficient_sequence(1, &q), CoefficientPair { alpha: QPoly::one(), beta: QPoly::zero() });
        assert_eq!(coefficient_sequence(2, &q), CoefficientPair { alpha: poly(&[-1, 1]), beta: poly(&[0, 1]) });
        for n in 1..=12 {
            let pair = coefficient_sequence(n, &q);
            assert_eq!(pair, coefficient_closed_form(n, &q).unwrap(), "n = {n}");
            let combo = pair.alpha.mul(&q.sub(&QPoly::one())).add(&pair.beta);
            let sign = if n % 2 == 0 { QPoly::one() } else { QPoly::one().neg() };
            assert_eq!(combo, sign.mul(&q_integer(n as u32 + 1, &q.neg())));
        }
    }

    #[test]
    fn kernel_table_small() {
        let rows = kernel_dimension_table(1, 6).unwrap();
        let dims: Vec<usize> = rows.iter().map(|r| r.dim_ker).collect();
        assert_eq!(dims, vec![0, 1, 2, 5, 11, 24]);
        // n = p+1 is where the recurrence's indicator switches off too early
        assert_eq!(rows[1].predicted, 0);
        assert!(rows[2..].iter().all(|r| r.predicted == r.dim_ker));
        let rows = kernel_dimension_table(2, 2).unwrap();
        assert!(rows.iter().all(|r| r.dim_ker == 0));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let q = rho(2);
        let b = build_b_direct(5, &q).unwrap();
        let kernel = b.kernel_basis();
        assert_eq!(kernel.len() + b.rank(), 16);
        for v in &kernel {
            assert!(b.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }
}
