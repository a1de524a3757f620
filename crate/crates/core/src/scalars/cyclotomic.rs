use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{scalar_ops, FieldScalar, QPoly, Rational, Scalar};

pub fn euler_phi(m: u32) -> u32 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u32
}

/// The m-th cyclotomic polynomial `Φ_m`, integer coefficients, constant term first.
///
/// Computed as `(x^m - 1) / prod_{d | m, d < m} Φ_d`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial of conductor 0");
    let phi = cyclotomic_qpoly(m);
    phi.coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.numer().clone()
        })
        .collect()
}

fn cyclotomic_qpoly(m: u32) -> QPoly {
    let mut coeffs = vec![0i64; m as usize + 1];
    coeffs[0] = -1;
    coeffs[m as usize] = 1;
    let mut acc = QPoly::from_ints(&coeffs);
    for d in (1..m).filter(|d| m % d == 0) {
        acc = acc
            .exact_div(&cyclotomic_qpoly(d))
            .expect("cyclotomic polynomials divide x^m - 1");
    }
    acc
}

/// The field `Q(ζ_m) = Q[x]/(Φ_m)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    conductor: u32,
    /// Monic `Φ_m`, constant term first; length `φ(m) + 1`.
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn new(conductor: u32) -> Arc<Self> {
        Arc::new(CyclotomicField { conductor, modulus: cyclotomic_polynomial(conductor) })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `φ(m)`, the degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduces an integer polynomial of any degree modulo `Φ_m` in place,
    /// leaving exactly `φ(m)` coefficients.
    fn reduce(&self, coeffs: &mut Vec<BigInt>) {
        let d = self.degree();
        for k in (d..coeffs.len()).rev() {
            if coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coeffs[k]);
            for (j, m) in self.modulus[..d].iter().enumerate() {
                if !m.is_zero() {
                    coeffs[k - d + j] -= &c * m;
                }
            }
        }
        coeffs.resize(d, BigInt::zero());
    }
}

/// Element of `Q(ζ_m)` stored as `(numerators, denominator)` over the power
/// basis `1, ζ, ..., ζ^{φ(m)-1}`, with positive denominator and unit content.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    nums: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic { field: field.clone(), nums: vec![BigInt::zero(); field.degree()], den: BigInt::one() }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: &Rational) -> Self {
        let mut nums = vec![BigInt::zero(); field.degree()];
        nums[0] = r.numer().clone();
        Cyclotomic { field: field.clone(), nums, den: r.denom().clone() }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic::from_rational(field, &Rational::one())
    }

    /// The generator `ζ_m = e^{2πi/m}`.
    pub fn zeta(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic::from_qpoly(field, &QPoly::q())
    }

    /// Image of `f(x)` under `x -> ζ_m`.
    pub fn from_qpoly(field: &Arc<CyclotomicField>, f: &QPoly) -> Self {
        let den = f
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut nums: Vec<BigInt> = f
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        field.reduce(&mut nums);
        Cyclotomic::normalized(field.clone(), nums, den)
    }

    fn normalized(field: Arc<CyclotomicField>, mut nums: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            nums.iter_mut().for_each(|n| *n = -&*n);
        }
        let mut g = den.clone();
        for n in &nums {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if nums.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            den /= &g;
            nums.iter_mut().for_each(|n| *n /= &g);
        }
        Cyclotomic { field, nums, den }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Rational coordinates in the power basis `1, ζ, ..., ζ^{φ(m)-1}`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.nums.iter().map(|n| Rational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.coeffs())
    }

    fn check_same_field(&self, rhs: &Self) {
        assert_eq!(
            self.field.conductor, rhs.field.conductor,
            "cyclotomic conductor mismatch"
        );
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.den == other.den && self.nums == other.nums
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({}; {})", self.field.conductor, self)
    }
}

impl fmt::Display for Cyclotomic {
    /// Polynomial in `ζ_m`, highest power first, e.g. `-ζ_3 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.field.conductor;
        let coeffs = self.coeffs();
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate().rev() {
            if Scalar::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != Rational::one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "ζ_{m}")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Scalar for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(&self.field)
    }

    fn one_like(&self) -> Self {
        Cyclotomic::one(&self.field)
    }

    fn is_zero(&self) -> bool {
        self.nums.iter().all(Zero::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check_same_field(rhs);
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let nums = self.nums.iter().zip(&rhs.nums).map(|(a, b)| a + b).collect();
            return Cyclotomic::normalized(self.field.clone(), nums, self.den.clone());
        }
        let nums = self
            .nums
            .iter()
            .zip(&rhs.nums)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        Cyclotomic::normalized(self.field.clone(), nums, &self.den * &rhs.den)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.nums.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.nums.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.field.reduce(&mut prod);
        Cyclotomic::normalized(self.field.clone(), prod, &self.den * &rhs.den)
    }

    fn neg(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            nums: self.nums.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }

    fn embed(&self, r: &Rational) -> Self {
        Cyclotomic::from_rational(&self.field, r)
    }

    /// `{"conductor": m, "coeffs": [[num, den], ...]}`.
    fn to_json(&self) -> Value {
        json!({
            "conductor": self.field.conductor,
            "coeffs": self.coeffs().iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }
}

impl FieldScalar for Cyclotomic {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus = QPoly::new(self.field.modulus.iter().cloned().map(Rational::from).collect());
        let (g, s, _) = self.to_qpoly().ext_gcd(&modulus);
        debug_assert_eq!(g, QPoly::one(), "Φ_m is irreducible");
        Some(Cyclotomic::from_qpoly(&self.field, &s))
    }

    fn height(&self) -> u64 {
        self.nums.iter().map(BigInt::bits).sum::<u64>() + self.den.bits()
    }
}

scalar_ops!(Cyclotomic);

/// `ρ_p = e^{-iπ(p-1)/(p+1)}`, realised exactly as `-ζ_{p+1}` in `Q(ζ_{p+1})`.
pub fn rho(p: u32) -> Cyclotomic {
    assert!(p >= 1, "rho is defined for p >= 1");
    let field = CyclotomicField::new(p + 1);
    Cyclotomic::zeta(&field).neg()
}
