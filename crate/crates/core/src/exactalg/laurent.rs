use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::brational::{is_b_integral, BRational};
use crate::error::{Error, Result};

/// A Laurent polynomial in `u = q^{1/4}` with rational coefficients.
///
/// `v = q^{1/2} = u^2` and `q = u^4`. Zero is the empty map; no stored
/// coefficient is ever zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QuarterLaurent {
    terms: BTreeMap<i64, BRational>,
}

impl QuarterLaurent {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant `1`.
    pub fn one() -> Self {
        Self::monomial(0, BRational::one())
    }

    /// The constant `c`.
    pub fn constant(c: i64) -> Self {
        Self::monomial(0, BRational::from_integer(BigInt::from(c)))
    }

    /// `c·u^e`.
    pub fn monomial(e: i64, c: BRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QuarterLaurent { terms }
    }

    /// `u^e = q^{e/4}`.
    pub fn u_pow(e: i64) -> Self {
        Self::monomial(e, BRational::one())
    }

    /// `v^e = q^{e/2}`.
    pub fn v_pow(e: i64) -> Self {
        Self::u_pow(2 * e)
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::u_pow(4 * e)
    }

    /// Builds from `(u-exponent, integer coefficient)` pairs.
    pub fn from_int_terms(pairs: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in pairs {
            p.add_term(e, BRational::from_integer(BigInt::from(c)));
        }
        p
    }

    /// Adds `c·u^e` in place.
    pub fn add_term(&mut self, e: i64, c: BRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Iterates over `(u-exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `u^e`.
    pub fn coeff(&self, e: i64) -> BRational {
        self.terms.get(&e).cloned().unwrap_or_else(BRational::zero)
    }

    /// Smallest exponent present.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent present.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True if every exponent is divisible by `k`.
    pub fn exps_divisible_by(&self, k: i64) -> bool {
        self.terms.keys().all(|e| e % k == 0)
    }

    /// True if all exponents are `≡ p (mod 4)`, i.e. the polynomial lies in `q^{p/4}·Z[1/b][q^{±1}]`.
    pub fn single_quarter_class(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|e| e.rem_euclid(4));
        let first = it.next()?;
        if it.all(|c| c == first) {
            Some(first)
        } else {
            None
        }
    }

    /// True if every coefficient lies in `Z[1/b]`.
    pub fn is_b_integral(&self, b: i64) -> bool {
        self.terms.values().all(|c| is_b_integral(c, b))
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.is_b_integral(1)
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, s: &BRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        QuarterLaurent { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        QuarterLaurent { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitutes `u ↦ u^k` (`k = -1` is `q ↦ q^{-1}`).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution exponent must be nonzero");
        QuarterLaurent { terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    /// Non-negative integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; fails when the divisor does not divide `self` in the Laurent ring.
    pub fn exact_div(&self, d: &QuarterLaurent) -> Result<QuarterLaurent> {
        if d.is_zero() {
            return Err(Error::DivisionByZero("Laurent division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (dmin, dmax) = (d.min_exp().unwrap(), d.max_exp().unwrap());
        let lead = d.terms[&dmax].clone();
        let lowest_allowed = self.min_exp().unwrap() - dmin;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(top) = rem.max_exp() {
            let t = top - dmax;
            if t < lowest_allowed {
                return Err(Error::InexactDivision("Laurent polynomial division leaves a remainder".into()));
            }
            let c = rem.terms[&top].clone() / &lead;
            for (e, dc) in d.terms() {
                rem.add_term(e + t, -(dc * &c));
            }
            quot.add_term(t, c);
        }
        Ok(quot)
    }

    /// Common denominator of the coefficients.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

fn exp_string(e: i64) -> String {
    if e % 4 == 0 {
        let k = e / 4;
        if k == 1 {
            "q".to_string()
        } else {
            format!("q^{k}")
        }
    } else {
        let g = num_integer::gcd(e.abs(), 4);
        format!("q^({}/{})", e / g, 4 / g)
    }
}

impl fmt::Display for QuarterLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            let cs = super::cycnum::fmt_rational(&a);
            let body = if *e == 0 {
                cs
            } else if a.is_one() {
                exp_string(*e)
            } else {
                format!("{cs}*{}", exp_string(*e))
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
                f.write_str(&body)?;
                first = false;
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
                f.write_str(&body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QuarterLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&QuarterLaurent> for &QuarterLaurent {
    type Output = QuarterLaurent;
    fn add(self, rhs: &QuarterLaurent) -> QuarterLaurent {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&QuarterLaurent> for &QuarterLaurent {
    type Output = QuarterLaurent;
    fn sub(self, rhs: &QuarterLaurent) -> QuarterLaurent {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul<&QuarterLaurent> for &QuarterLaurent {
    type Output = QuarterLaurent;
    fn mul(self, rhs: &QuarterLaurent) -> QuarterLaurent {
        let mut acc: BTreeMap<i64, BRational> = BTreeMap::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                *acc.entry(e1 + e2).or_insert_with(BRational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        QuarterLaurent { terms: acc }
    }
}

impl Neg for &QuarterLaurent {
    type Output = QuarterLaurent;
    fn neg(self) -> QuarterLaurent {
        QuarterLaurent { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<QuarterLaurent> for QuarterLaurent {
            type Output = QuarterLaurent;
            fn $m(self, rhs: QuarterLaurent) -> QuarterLaurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QuarterLaurent> for QuarterLaurent {
            type Output = QuarterLaurent;
            fn $m(self, rhs: &QuarterLaurent) -> QuarterLaurent {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for QuarterLaurent {
    type Output = QuarterLaurent;
    fn neg(self) -> QuarterLaurent {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_division() {
        let a = QuarterLaurent::from_int_terms(&[(4, 1), (0, -1)]); // q - 1
        let b = QuarterLaurent::from_int_terms(&[(8, 1), (0, -1)]); // q^2 - 1
        let c = b.exact_div(&a).unwrap();
        assert_eq!(c, QuarterLaurent::from_int_terms(&[(4, 1), (0, 1)]));
        assert!(a.exact_div(&b).is_err());
        let v = QuarterLaurent::v_pow(1) + QuarterLaurent::v_pow(-1);
        assert_eq!(format!("{v}"), "q^(1/2) + q^(-1/2)");
        assert_eq!((&v - &v), QuarterLaurent::zero());
        assert_eq!(v.pow(2).exact_div(&v).unwrap(), v);
        assert_eq!(v.single_quarter_class(), Some(2));
    }

    #[test]
    fn division_with_shifted_laurent_terms() {
        let d = QuarterLaurent::from_int_terms(&[(-3, 2), (5, 1)]);
        let q = QuarterLaurent::from_int_terms(&[(-7, 1), (1, -3), (2, 5)]);
        assert_eq!((&d * &q).exact_div(&d).unwrap(), q);
    }
}
