use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use super::{bigint_json, scalar_ops, Rational, Scalar};

/// Bivariate polynomial over the integers in `x` and `y`.
///
/// Terms are keyed by `(deg_x, deg_y)` in a sorted map with no zero
/// coefficients. Embedding a non-integral rational panics.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct XYPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl XYPoly {
    pub fn zero() -> Self {
        XYPoly::default()
    }

    pub fn one() -> Self {
        XYPoly::monomial(1, 0, 0)
    }

    pub fn x() -> Self {
        XYPoly::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        XYPoly::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, dx: u32, dy: u32) -> Self {
        let mut p = XYPoly::zero();
        p.add_term((dx, dy), c.into());
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(&(dx, dy), c)| c * num_traits::pow(x.clone(), dx as usize) * num_traits::pow(y.clone(), dy as usize))
            .sum()
    }
}

impl fmt::Display for XYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(dx, dy), c)| {
                let mut s = c.to_string();
                for (var, d) in [("x", dx), ("y", dy)] {
                    match d {
                        0 => {}
                        1 => s.push_str(&format!("*{var}")),
                        _ => s.push_str(&format!("*{var}^{d}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Scalar for XYPoly {
    fn zero_like(&self) -> Self {
        XYPoly::zero()
    }

    fn one_like(&self) -> Self {
        XYPoly::one()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = XYPoly::zero();
        for (&(ax, ay), a) in &self.terms {
            for (&(bx, by), b) in &rhs.terms {
                out.add_term((ax + bx, ay + by), a * b);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        XYPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }

    fn embed(&self, r: &Rational) -> Self {
        assert!(r.denom().is_one(), "XYPoly has integer coefficients");
        XYPoly::monomial(r.numer().clone(), 0, 0)
    }

    /// `[[deg_x, deg_y, coeff], ...]` in ascending term order.
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&(dx, dy), c)| Value::Array(vec![dx.into(), dy.into(), bigint_json(c)]))
                .collect(),
        )
    }
}

scalar_ops!(XYPoly);
