//! Exact coefficient rings.
//!
//! Elements carry enough context to build the zero and one of their own ring
//! (`zero_like`, `one_like`), so that generic code can derive every constant
//! it needs from the value of `q` alone. Cyclotomic numbers, for instance,
//! remember their conductor.

mod cyclotomic;
mod qpoly;
mod rational;
mod xypoly;

use std::fmt;

use num_bigint::BigInt;
use serde_json::Value;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, rho, CyclotomicField, Cyclotomic};
pub use qpoly::QPoly;
pub use rational::Rational;
pub use xypoly::XYPoly;

/// A commutative ring with exact equality.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Image of a rational number under the structure map `Q -> R`.
    fn embed(&self, r: &Rational) -> Self;
    fn to_json(&self) -> Value;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn from_int(&self, n: i64) -> Self {
        self.embed(&Rational::from(n))
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = Scalar::add(self, rhs);
    }
}

/// A [`Scalar`] ring that is a field.
pub trait FieldScalar: Scalar {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// Rough bit size, used to prefer small pivots during elimination.
    fn height(&self) -> u64 {
        0
    }
}

/// `[n]_c = 1 + c + ... + c^{n-1}`.
///
/// Uses the summation form, so `[n]_1 = n` and no division is needed.
pub fn q_integer<S: Scalar>(n: u32, c: &S) -> S {
    let mut acc = c.zero_like();
    let mut power = c.one_like();
    for _ in 0..n {
        acc.add_assign(&power);
        power = power.mul(c);
    }
    acc
}

pub(crate) fn bigint_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}

/// Implements the `std::ops` arithmetic traits by delegating to [`Scalar`].
macro_rules! scalar_ops {
    ($t:ty) => {
        impl ::std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::scalars::Scalar::add(&self, &rhs)
            }
        }
        impl<'a> ::std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                $crate::scalars::Scalar::add(self, rhs)
            }
        }
        impl ::std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::scalars::Scalar::sub(&self, &rhs)
            }
        }
        impl<'a> ::std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                $crate::scalars::Scalar::sub(self, rhs)
            }
        }
        impl ::std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::scalars::Scalar::mul(&self, &rhs)
            }
        }
        impl<'a> ::std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                $crate::scalars::Scalar::mul(self, rhs)
            }
        }
        impl ::std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::scalars::Scalar::neg(&self)
            }
        }
    };
}
pub(crate) use scalar_ops;
