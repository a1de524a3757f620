use serde_json::{json, Value};

use crate::combinatorics::IndexSet;
use crate::error::{QsymError, Result};
use crate::scalars::{FieldScalar, QPoly, Scalar};

/// A dense matrix over an exact ring, optionally carrying subset labels on
/// its rows and columns.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<S>>,
    labels: Option<(Vec<IndexSet>, Vec<IndexSet>)>,
}

impl<S: Scalar> ExactMatrix<S> {
    /// Row-major grid; every row must have `cols` entries.
    pub fn from_grid(rows: usize, cols: usize, entries: Vec<Vec<S>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(QsymError::LengthMismatch(format!("grid is not {rows}x{cols}")));
        }
        Ok(ExactMatrix { rows, cols, entries, labels: None })
    }

    pub fn empty() -> Self {
        ExactMatrix { rows: 0, cols: 0, entries: Vec::new(), labels: Some((Vec::new(), Vec::new())) }
    }

    pub fn identity(k: usize, like: &S) -> Self {
        let entries = (0..k)
            .map(|i| (0..k).map(|j| if i == j { like.one_like() } else { like.zero_like() }).collect())
            .collect();
        ExactMatrix { rows: k, cols: k, entries, labels: None }
    }

    pub fn with_labels(mut self, rows: Vec<IndexSet>, cols: Vec<IndexSet>) -> Result<Self> {
        if rows.len() != self.rows || cols.len() != self.cols {
            return Err(QsymError::LengthMismatch(format!(
                "{} row and {} column labels for a {}x{} matrix",
                rows.len(),
                cols.len(),
                self.rows,
                self.cols
            )));
        }
        self.labels = Some((rows, cols));
        Ok(self)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i][j]
    }

    pub fn grid(&self) -> &[Vec<S>] {
        &self.entries
    }

    pub fn row_labels(&self) -> Option<&[IndexSet]> {
        self.labels.as_ref().map(|(r, _)| r.as_slice())
    }

    pub fn col_labels(&self) -> Option<&[IndexSet]> {
        self.labels.as_ref().map(|(_, c)| c.as_slice())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ExactMatrix<T> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
            labels: self.labels.clone(),
        }
    }

    /// The submatrix on the given row and column positions, keeping labels.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        let labels = self.labels.as_ref().map(|(r, c)| {
            (rows.iter().map(|&i| r[i]).collect(), cols.iter().map(|&j| c[j]).collect())
        });
        ExactMatrix { rows: rows.len(), cols: cols.len(), entries, labels }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "vector length");
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .map(|(a, x)| a.mul(x))
                    .reduce(|acc, t| acc.add(&t))
                    .expect("product with a matrix that has no columns")
            })
            .collect()
    }

    fn zero_hint(&self) -> S {
        self.entries
            .iter()
            .flatten()
            .next()
            .map(S::zero_like)
            .expect("a matrix with no entries has no ring hint")
    }

    /// `entry[J, I] = 0` whenever `max(J) > max(I)`, with `max ∅ = 0`.
    pub fn is_block_upper_triangular(&self) -> bool {
        let Some((rows, cols)) = &self.labels else {
            return false;
        };
        rows.iter().enumerate().all(|(i, r)| {
            cols.iter()
                .enumerate()
                .all(|(j, c)| r.max_element() <= c.max_element() || self.entries[i][j].is_zero())
        })
    }

    /// CSV with a header of column labels and a leading label column. Labels
    /// list their elements in decreasing order, e.g. `{3,1}`.
    pub fn to_csv(&self, cell: impl Fn(&S) -> String) -> String {
        let mut out = String::new();
        let labels = self.labels.clone().unwrap_or_else(|| {
            (vec![IndexSet::empty(0); self.rows], vec![IndexSet::empty(0); self.cols])
        });
        let label = |s: &IndexSet| {
            let parts: Vec<String> = s.members().iter().rev().map(|m| m.to_string()).collect();
            format!("\"{{{}}}\"", parts.join(","))
        };
        let mut header = vec![String::new()];
        header.extend(labels.1.iter().map(label));
        out.push_str(&header.join(","));
        out.push('\n');
        for (i, row) in self.entries.iter().enumerate() {
            let mut line = vec![label(&labels.0[i])];
            line.extend(row.iter().map(&cell));
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"rows": [[...]], "cols": [[...]], "entries": [[...]]}`.
    pub fn to_json(&self, cell: impl Fn(&S) -> Value) -> Value {
        let entries: Vec<Vec<Value>> = self.entries.iter().map(|r| r.iter().map(&cell).collect()).collect();
        match &self.labels {
            Some((rows, cols)) => json!({"rows": rows, "cols": cols, "entries": entries}),
            None => json!({"rows": self.rows, "cols": self.cols, "entries": entries}),
        }
    }
}

/// Gaussian elimination in place. Returns the pivot columns. With
/// `reduce`, entries above pivots are cleared too and pivots are 1.
fn eliminate<S: FieldScalar>(grid: &mut [Vec<S>], cols: usize, reduce: bool) -> Vec<usize> {
    let rows = grid.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(best) = (r..rows)
            .filter(|&i| !grid[i][c].is_zero())
            .min_by_key(|&i| grid[i][c].height())
        else {
            continue;
        };
        grid.swap(r, best);
        let inv = grid[r][c].inv().expect("pivot is nonzero");
        for j in c..cols {
            if !grid[r][j].is_zero() {
                grid[r][j] = grid[r][j].mul(&inv);
            }
        }
        let (before, rest) = grid.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        let targets = after.iter_mut().chain(if reduce { before.iter_mut() } else { [].iter_mut() });
        for row in targets {
            let factor = row[c].clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].sub(&factor.mul(&pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl<S: FieldScalar> ExactMatrix<S> {
    pub fn rank(&self) -> usize {
        let mut grid = self.entries.clone();
        eliminate(&mut grid, self.cols, false).len()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn reduced_row_echelon(&self) -> (ExactMatrix<S>, Vec<usize>) {
        let mut grid = self.entries.clone();
        let pivots = eliminate(&mut grid, self.cols, true);
        (ExactMatrix { rows: self.rows, cols: self.cols, entries: grid, labels: None }, pivots)
    }

    /// A basis of `{v : Mv = 0}`, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        if self.cols == 0 {
            return Vec::new();
        }
        let (rref, pivots) = self.reduced_row_echelon();
        let like = self.zero_hint();
        let mut is_pivot = vec![false; self.cols];
        pivots.iter().for_each(|&c| is_pivot[c] = true);
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![like.zero_like(); self.cols];
                v[f] = like.one_like();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = rref.entries[r][f].neg();
                }
                v
            })
            .collect()
    }

    /// Some `x` with `Mx = b`, if one exists.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let like = self.entries.iter().flatten().chain(b).next()?.zero_like();
        let mut grid: Vec<Vec<S>> = self
            .entries
            .iter()
            .zip(b)
            .map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect())
            .collect();
        let pivots = eliminate(&mut grid, self.cols + 1, true);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![like; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = grid[r][self.cols].clone();
        }
        Some(x)
    }
}

/// Rank over `Q(q)` by fraction-free (Bareiss) elimination on polynomial
/// entries.
pub fn fraction_free_rank(m: &ExactMatrix<QPoly>) -> usize {
    let mut grid = m.entries.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = QPoly::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !grid[i][c].is_zero()) else {
            continue;
        };
        grid.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = grid[r][c].mul(&grid[i][j]).sub(&grid[i][c].mul(&grid[r][j]));
                grid[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            grid[i][c] = QPoly::zero();
        }
        prev = grid[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn mat(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        let grid: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect();
        ExactMatrix::from_grid(rows.len(), rows[0].len(), grid).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(5, &Rational::one()).rank(), 5);
        assert_eq!(mat(&[&[1, 1], &[0, 0]]).rank(), 1);
        assert_eq!(mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).rank(), 2);
        assert_eq!(mat(&[&[0, 0], &[0, 0]]).rank(), 0);
    }

    #[test]
    fn kernel_annihilates() {
        let m = mat(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0]]);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len() + m.rank(), 4);
        for v in &kernel {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat(&[&[1, 1], &[1, 1]]);
        let x = m.solve(&[Rational::from(2), Rational::from(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Rational::from(2), Rational::from(2)]);
        assert!(m.solve(&[Rational::from(1), Rational::from(2)]).is_none());
    }

    #[test]
    fn bareiss_matches_specialized_rank() {
        let q = QPoly::q();
        let qm1 = q.sub(&QPoly::one());
        let grid = vec![vec![QPoly::one(), QPoly::one()], vec![QPoly::zero(), qm1.clone()]];
        let m = ExactMatrix::from_grid(2, 2, grid).unwrap();
        assert_eq!(fraction_free_rank(&m), 2);
        assert_eq!(m.map(|c| c.eval(&Rational::one())).rank(), 1);
        let singular = ExactMatrix::from_grid(2, 2, vec![vec![q.clone(), qm1.clone()], vec![q.mul(&q), q.mul(&qm1)]]).unwrap();
        assert_eq!(fraction_free_rank(&singular), 1);
    }

    #[test]
    fn csv_quotes_labels() {
        let m = mat(&[&[1, 1], &[0, 1]])
            .with_labels(IndexSet::all(2).collect(), IndexSet::all(2).collect())
            .unwrap();
        assert_eq!(m.to_csv(|c| c.to_string()), ",\"{}\",\"{1}\"\n\"{}\",1,1\n\"{1}\",0,1\n");
    }
}
