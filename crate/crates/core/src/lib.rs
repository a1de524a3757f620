//! Exact algebra of q-deformed quasisymmetric functions.
//!
//! - [`combinatorics`]: subsets, compositions, permutations and the descent,
//!   peak and extended peak statistics.
//! - [`scalars`]: exact coefficient rings (rationals, `Q[q]`, cyclotomic
//!   fields, bivariate integer polynomials).
//! - [`qsym`]: quasisymmetric functions in the monomial basis, with the
//!   universal, enriched q-monomial and q-fundamental families.
//! - [`ppartitions`]: brute-force enriched P-partition generating functions.
//! - [`linalg`]: exact matrices, rank/kernel, and the transition matrices
//!   between q-fundamentals and enriched q-monomials.
//! - [`theorems`]: executable verification suites.

pub mod combinatorics;
pub mod error;
pub mod linalg;
pub mod ppartitions;
pub mod qsym;
pub mod scalars;
pub mod theorems;

pub use error::{QsymError, Result};
