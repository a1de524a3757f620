use std::fmt;

use serde_json::Value;

use super::{scalar_ops, FieldScalar, Rational, Scalar};

/// Univariate polynomial in the formal parameter `q` over the rationals.
///
/// Coefficients are stored constant term first with no trailing zeros; the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| Scalar::is_zero(c)) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QPoly::from_ints(&[0, 1])
    }

    /// `c * q^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        QPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Evaluates at `at` through the ring homomorphism `Q[q] -> R` sending `q` to `at`.
    pub fn eval<S: Scalar>(&self, at: &S) -> S {
        let mut acc = at.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(&at.embed(c));
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if Scalar::is_zero(&rem[k]) {
                continue;
            }
            let factor = rem[k].mul(&lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = rem[idx].sub(&factor.mul(d));
            }
            quot[k - dd] = factor;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &QPoly) -> Option<QPoly> {
        if divisor.is_zero() {
            return None;
        }
        let (quot, rem) = self.div_rem(divisor);
        rem.is_zero().then_some(quot)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic (or zero).
    pub fn ext_gcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (quot, rem) = r0.div_rem(&r1);
            let s2 = s0.sub(&quot.mul(&s1));
            let t2 = t0.sub(&quot.mul(&t1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().and_then(|l| l.inv()) {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// Human-oriented form pulling out powers of `q`, `q-1` and `q+1`,
    /// e.g. `-q(q-1)`, `(q-1)^2`, `q-1`.
    pub fn to_factored_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut rest = self.clone();
        let mut q_mult = 0;
        while Scalar::is_zero(&rest.coeff(0)) {
            rest = QPoly::new(rest.coeffs[1..].to_vec());
            q_mult += 1;
        }
        let q_minus_one = QPoly::from_ints(&[-1, 1]);
        let q_plus_one = QPoly::from_ints(&[1, 1]);
        let mut strip = |factor: &QPoly| {
            let mut mult = 0;
            while rest.degree() > Some(0) {
                match rest.exact_div(factor) {
                    Some(quot) => {
                        rest = quot;
                        mult += 1;
                    }
                    None => break,
                }
            }
            mult
        };
        let minus_mult = strip(&q_minus_one);
        let plus_mult = strip(&q_plus_one);

        let power = |base: &str, k: usize| match k {
            0 => String::new(),
            1 => base.to_string(),
            _ => format!("{base}^{k}"),
        };
        let mut factors: Vec<String> = Vec::new();
        if q_mult > 0 {
            factors.push(power("q", q_mult));
        }
        if minus_mult > 0 {
            factors.push(power("(q-1)", minus_mult));
        }
        if plus_mult > 0 {
            factors.push(power("(q+1)", plus_mult));
        }

        let (prefix, cofactor) = if rest.degree() == Some(0) {
            let c = rest.coeffs[0].clone();
            let prefix = if c == Rational::one() {
                String::new()
            } else if c == Rational::from(-1) {
                "-".to_string()
            } else if c.is_integer() {
                c.to_string()
            } else {
                format!("({c})")
            };
            (prefix, None)
        } else {
            (String::new(), Some(format!("({rest})")))
        };

        if factors.is_empty() && cofactor.is_none() {
            return rest.coeffs[0].to_string();
        }
        if let Some(cof) = cofactor {
            factors.insert(0, cof);
        }
        if factors.len() == 1 && prefix.is_empty() {
            let only = &factors[0];
            if let Some(inner) = only.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
                if !inner.contains('(') {
                    return inner.to_string();
                }
            }
        }
        format!("{prefix}{}", factors.concat())
    }
}

impl fmt::Display for QPoly {
    /// Expanded form, highest degree first: `q^2 - 2q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if Scalar::is_zero(c) {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let mag_str = if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match k {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if mag != Rational::one() {
                        write!(f, "{mag_str}")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Scalar for QPoly {
    fn zero_like(&self) -> Self {
        QPoly::zero()
    }

    fn one_like(&self) -> Self {
        QPoly::one()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Scalar::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_assign(&a.mul(b));
            }
        }
        QPoly::new(out)
    }

    fn neg(&self) -> Self {
        QPoly { coeffs: self.coeffs.iter().map(Scalar::neg).collect() }
    }

    fn embed(&self, r: &Rational) -> Self {
        QPoly::constant(r.clone())
    }

    /// Coefficient array, constant term first, each coefficient `[num, den]`.
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }
}

scalar_ops!(QPoly);

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QPoly {
        QPoly::q()
    }

    #[test]
    fn factored_strings_match_matrix_notation() {
        let one = QPoly::one();
        let qm1 = q() - one.clone();
        assert_eq!(qm1.to_factored_string(), "q-1");
        assert_eq!((qm1.clone() * qm1.clone()).to_factored_string(), "(q-1)^2");
        assert_eq!((-q()).to_factored_string(), "-q");
        assert_eq!((-(q() * qm1.clone())).to_factored_string(), "-q(q-1)");
        assert_eq!(one.to_factored_string(), "1");
        assert_eq!(QPoly::zero().to_factored_string(), "0");
        assert_eq!(QPoly::from_ints(&[1, -1, 1]).to_factored_string(), "q^2 - q + 1");
        assert_eq!(QPoly::from_ints(&[-2, 2]).to_factored_string(), "2(q-1)");
    }

    #[test]
    fn expanded_display() {
        assert_eq!(QPoly::from_ints(&[1, -2, 1]).to_string(), "q^2 - 2q + 1");
        assert_eq!(QPoly::from_ints(&[0, -1]).to_string(), "-q");
        assert_eq!(QPoly::new(vec![Rational::new(1, 2)]).to_string(), "1/2");
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = QPoly::from_ints(&[3, 0, -2, 5, 1]);
        let b = QPoly::from_ints(&[1, 2, 3]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(quot * b.clone() + rem.clone(), a);
        assert!(rem.degree() < b.degree());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = QPoly::from_ints(&[2, 1]);
        let b = QPoly::from_ints(&[1, 1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, QPoly::one());
        assert_eq!(s * a + t * b, g);
    }

    #[test]
    fn eval_is_horner() {
        let f = QPoly::from_ints(&[1, -3, 2]);
        assert_eq!(f.eval(&Rational::from(2)), Rational::from(3));
        assert_eq!(f.eval(&Rational::new(1, 2)), Rational::zero());
    }
}
