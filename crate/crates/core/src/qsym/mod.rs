//! Quasisymmetric functions over an exact scalar ring, stored in the monomial
//! basis `M_α`. Every other family is an expansion function into it.

mod bases;
mod product;
mod realize;

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::combinatorics::Composition;
use crate::scalars::{QPoly, Scalar};

pub use bases::{
    eta, eta_combination, fundamental_l, fundamental_l_of_permutation, l_in_eta_basis, universal_u,
    universal_u_of_permutation,
};
pub use product::{
    coproduct, coproduct_check, counit_check, quasi_shuffle, quasi_shuffle_product, u_coproduct_formula,
    product_rule_check, Tensor,
};
pub use realize::{realize, TruncatedPolynomial};

/// A finite sum `Σ c_α M_α` with no zero coefficients, kept sorted by
/// composition (lexicographic on parts).
#[derive(Clone, PartialEq, Debug)]
pub struct QSymElement<S> {
    terms: BTreeMap<Composition, S>,
}

impl<S> Default for QSymElement<S> {
    fn default() -> Self {
        QSymElement { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> QSymElement<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coeff · M_α`.
    pub fn monomial(alpha: Composition, coeff: S) -> Self {
        let mut out = Self::zero();
        out.add_term(alpha, coeff);
        out
    }

    /// `M_∅`, the unit of QSym, with coefficient taken from `like`.
    pub fn unit(like: &S) -> Self {
        Self::monomial(Composition::empty(), like.one_like())
    }

    pub fn add_term(&mut self, alpha: Composition, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign(&coeff);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Composition, S> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &Composition) -> Option<&S> {
        self.terms.get(alpha)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        for (alpha, c) in &rhs.terms {
            self.add_term(alpha.clone(), c.clone());
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        QSymElement { terms: self.terms.iter().map(|(a, c)| (a.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (alpha, coeff) in &self.terms {
            out.add_term(alpha.clone(), coeff.mul(c));
        }
        out
    }

    /// The common weight of all terms; `None` when zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(Composition::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Applies a ring homomorphism coefficient-wise.
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> QSymElement<T> {
        let mut out = QSymElement::zero();
        for (alpha, c) in &self.terms {
            out.add_term(alpha.clone(), f(c));
        }
        out
    }

    /// `{"basis":"M","degree":n,"terms":[{"composition":[...],"coeff":...}]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(alpha, c)| json!({"composition": alpha, "coeff": c.to_json()}))
            .collect();
        let degree = match self.homogeneous_degree() {
            Some(d) => json!(d),
            None if self.is_zero() => json!(0),
            None => Value::Null,
        };
        json!({"basis": "M", "degree": degree, "terms": terms})
    }
}

impl QSymElement<QPoly> {
    /// Specialises `q` to `at` coefficient-wise.
    pub fn specialize<T: Scalar>(&self, at: &T) -> QSymElement<T> {
        self.map_coeffs(|c| c.eval(at))
    }
}
