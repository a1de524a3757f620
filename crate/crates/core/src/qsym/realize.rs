use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::QSymElement;
use crate::scalars::Scalar;

/// A polynomial in `x_1, ..., x_k`, keyed by exponent vectors of length `k`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedPolynomial<S> {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> TruncatedPolynomial<S> {
    pub fn zero(num_vars: usize) -> Self {
        TruncatedPolynomial { num_vars, terms: BTreeMap::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, S> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&S> {
        self.terms.get(exps)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: S) {
        assert_eq!(exps.len(), self.num_vars, "exponent vector length");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                c.add_assign(&coeff);
                if c.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = Self::zero(self.num_vars);
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                let exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, a.mul(b));
            }
        }
        out
    }

    /// Terms that only involve `x_1, ..., x_k`, as a polynomial in `k` variables.
    pub fn restrict(&self, k: usize) -> Self {
        let mut out = Self::zero(k);
        for (e, c) in &self.terms {
            if e[k..].iter().all(|&x| x == 0) {
                out.add_term(e[..k].to_vec(), c.clone());
            }
        }
        out
    }

    /// `{"vars":k,"terms":[{"exponents":[...],"coeff":...}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({"exponents": e, "coeff": c.to_json()}))
            .collect();
        json!({"vars": self.num_vars, "terms": terms})
    }
}

/// Evaluates `f` on the finite alphabet `x_1, ..., x_k`:
/// `M_α ↦ Σ_{i_1 < ... < i_ℓ <= k} x_{i_1}^{α_1} ... x_{i_ℓ}^{α_ℓ}`.
pub fn realize<S: Scalar>(f: &QSymElement<S>, k: usize) -> TruncatedPolynomial<S> {
    let mut out = TruncatedPolynomial::zero(k);
    for (alpha, c) in f.terms() {
        let len = alpha.len();
        if len > k {
            continue;
        }
        // strictly increasing index choices, as 0-based positions
        let mut idx: Vec<usize> = (0..len).collect();
        loop {
            let mut exps = vec![0u32; k];
            for (t, &i) in idx.iter().enumerate() {
                exps[i] = alpha.parts()[t];
            }
            out.add_term(exps, c.clone());
            let mut pos = len;
            let advanced = loop {
                if pos == 0 {
                    break false;
                }
                pos -= 1;
                if idx[pos] < k - len + pos {
                    idx[pos] += 1;
                    for t in pos + 1..len {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break true;
                }
            };
            if !advanced {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Composition;
    use crate::scalars::Rational;

    fn m(parts: &[u32]) -> QSymElement<Rational> {
        QSymElement::monomial(Composition::new(parts.to_vec()).unwrap(), Rational::one())
    }

    #[test]
    fn realize_examples() {
        let r = realize(&m(&[2]), 2);
        let mut expected = TruncatedPolynomial::zero(2);
        expected.add_term(vec![2, 0], Rational::one());
        expected.add_term(vec![0, 2], Rational::one());
        assert_eq!(r, expected);

        let r = realize(&m(&[1, 1]), 2);
        let mut expected = TruncatedPolynomial::zero(2);
        expected.add_term(vec![1, 1], Rational::one());
        assert_eq!(r, expected);

        assert!(realize(&m(&[1, 1, 1]), 2).is_zero());
        assert_eq!(realize(&m(&[]), 3).coeff(&[0, 0, 0]), Some(&Rational::one()));
    }

    #[test]
    fn realize_counts_index_choices() {
        // M_(1,2,1) in 5 variables has C(5,3) monomials
        assert_eq!(realize(&m(&[1, 2, 1]), 5).terms().len(), 10);
    }

    #[test]
    fn restrict_keeps_low_variables() {
        let r = realize(&m(&[1]), 3).restrict(2);
        assert_eq!(r, realize(&m(&[1]), 2));
    }
}
