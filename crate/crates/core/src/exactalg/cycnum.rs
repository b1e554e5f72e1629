use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::brational::{denominator_divides_power, BRational};
use super::cyclopoly::cyclotomic_poly_sparse;
use super::linalg::{solve_integer_square, solve_rational};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, euler_phi, gcd, lcm};

/// The field `Q(e_N)` presented as `Q[q]/(Φ_N)`.
#[derive(Debug)]
pub struct CycField {
    n: u64,
    phi: usize,
    /// Terms of `Φ_N` strictly below the leading monomial `q^φ`.
    lower: Vec<(usize, BigInt)>,
}

impl CycField {
    /// Builds the field of `N`-th roots of unity.
    pub fn new(n: u64) -> Arc<CycField> {
        assert!(n >= 1, "cyclotomic modulus must be positive");
        let phi = euler_phi(n) as usize;
        let lower = cyclotomic_poly_sparse(n)
            .into_iter()
            .filter(|(e, _)| *e < phi)
            .collect();
        Arc::new(CycField { n, phi, lower })
    }

    /// The modulus `N`.
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// The degree `φ(N)`.
    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Reduces an integer polynomial (dense, low to high) to its remainder modulo `Φ_N`.
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.n as usize;
        if v.len() > n {
            for i in n..v.len() {
                if !v[i].is_zero() {
                    let c = std::mem::take(&mut v[i]);
                    v[i % n] += c;
                }
            }
            v.truncate(n);
        }
        for d in (self.phi..v.len()).rev() {
            if v[d].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[d]);
            let base = d - self.phi;
            for (e, pc) in &self.lower {
                v[base + e] -= &c * pc;
            }
        }
        v.resize(self.phi, BigInt::zero());
        v
    }

    /// Multiplies a reduced vector by `q` and reduces again.
    fn shift_once(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.phi];
        let top = &v[self.phi - 1];
        out[1..self.phi].clone_from_slice(&v[..self.phi - 1]);
        if !top.is_zero() {
            for (e, pc) in &self.lower {
                out[*e] -= top * pc;
            }
        }
        out
    }
}

/// An element of `Q(e_N)`, stored as `num / den` where `num` is the canonical
/// remainder modulo `Φ_N` (length `φ(N)`) and `gcd(den, num) = 1`, `den > 0`.
#[derive(Clone)]
pub struct CycNumber {
    field: Arc<CycField>,
    den: BigInt,
    num: Vec<BigInt>,
}

impl CycNumber {
    fn normalized(field: Arc<CycField>, mut den: BigInt, mut num: Vec<BigInt>) -> CycNumber {
        debug_assert_eq!(num.len(), field.phi);
        if num.iter().all(Zero::is_zero) {
            return CycNumber { field, den: BigInt::one(), num };
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            den /= &g;
            for c in num.iter_mut() {
                if !c.is_zero() {
                    *c /= &g;
                }
            }
        }
        CycNumber { field, den, num }
    }

    /// Builds a number from an integer polynomial in `e_N` (any length) and a denominator.
    pub fn from_poly(field: &Arc<CycField>, poly: Vec<BigInt>, den: BigInt) -> CycNumber {
        assert!(!den.is_zero(), "zero denominator");
        let num = field.reduce(poly);
        CycNumber::normalized(field.clone(), den, num)
    }

    /// Builds a number from canonical rational coefficients of length `φ(N)`.
    pub fn from_coeffs(n: u64, coeffs: &[BRational]) -> Result<CycNumber> {
        let field = CycField::new(n);
        if coeffs.len() != field.phi {
            return Err(Error::Parse(format!(
                "modulus {n} needs {} coefficients, got {}",
                field.phi,
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| (c * BRational::from_integer(den.clone())).to_integer()).collect();
        Ok(CycNumber::normalized(field, den, num))
    }

    /// Zero in `Q(e_N)`.
    pub fn zero(n: u64) -> CycNumber {
        let field = CycField::new(n);
        let num = vec![BigInt::zero(); field.phi];
        CycNumber { field, den: BigInt::one(), num }
    }

    /// The rational number `x` (modulus 1).
    pub fn from_rational(x: &BRational) -> CycNumber {
        CycNumber::normalized(CycField::new(1), x.denom().clone(), vec![x.numer().clone()])
    }

    /// The integer `x` (modulus 1).
    pub fn from_integer(x: i64) -> CycNumber {
        CycNumber::from_bigint(BigInt::from(x))
    }

    /// The integer `x` (modulus 1).
    pub fn from_bigint(x: BigInt) -> CycNumber {
        CycNumber { field: CycField::new(1), den: BigInt::one(), num: vec![x] }
    }

    /// One (modulus 1).
    pub fn one() -> CycNumber {
        CycNumber::from_integer(1)
    }

    /// The root of unity `e_N^e`.
    pub fn root_power(n: u64, e: i64) -> CycNumber {
        let field = CycField::new(n);
        CycNumber::root_power_in(&field, e)
    }

    /// The root of unity `e_N^e` in an existing field.
    pub fn root_power_in(field: &Arc<CycField>, e: i64) -> CycNumber {
        let n = field.n as i64;
        let k = e.rem_euclid(n) as usize;
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        CycNumber::from_poly(field, v, BigInt::one())
    }

    /// The field this number is stored in.
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// The modulus `N` of the field this number is stored in.
    pub fn modulus(&self) -> u64 {
        self.field.n
    }

    /// Common positive denominator.
    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// Integer numerators of the canonical coefficients.
    pub fn num(&self) -> &[BigInt] {
        &self.num
    }

    /// Canonical coefficients as rationals.
    pub fn coeffs(&self) -> Vec<BRational> {
        self.num
            .iter()
            .map(|c| BRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// True when every canonical coefficient lies in `Z[1/b]`.
    pub fn is_b_integral(&self, b: i64) -> bool {
        denominator_divides_power(&self.den, b)
    }

    /// Returns the rational value if the number is rational.
    pub fn as_rational(&self) -> Option<BRational> {
        let r = self.simplify();
        if r.modulus() <= 2 {
            Some(BRational::new(r.num[0].clone(), r.den.clone()))
        } else {
            None
        }
    }

    /// Re-expresses the number in `Q(e_K)` for a multiple `K` of `N`.
    pub fn lift(&self, k: u64) -> CycNumber {
        assert!(k.is_multiple_of(self.field.n), "lift target {k} is not a multiple of {}", self.field.n);
        if k == self.field.n {
            return self.clone();
        }
        let field = CycField::new(k);
        self.lift_into(&field)
    }

    fn lift_into(&self, field: &Arc<CycField>) -> CycNumber {
        if field.n == self.field.n {
            return self.clone();
        }
        let step = (field.n / self.field.n) as usize;
        let len = (self.field.phi.saturating_sub(1)) * step + 1;
        let mut v = vec![BigInt::zero(); len];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[i * step] = c.clone();
            }
        }
        CycNumber::from_poly(field, v, self.den.clone())
    }

    /// Brings two numbers into the field of the lcm of their moduli.
    pub fn common(a: &CycNumber, b: &CycNumber) -> (CycNumber, CycNumber) {
        if a.field.n == b.field.n {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.field.n, b.field.n);
        let field = if m == a.field.n {
            a.field.clone()
        } else if m == b.field.n {
            b.field.clone()
        } else {
            CycField::new(m)
        };
        (a.lift_into(&field), b.lift_into(&field))
    }

    fn add_same(&self, other: &CycNumber, sign: i32) -> CycNumber {
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(x, y)| if sign > 0 { x + y } else { x - y })
                .collect()
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            let v = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(x, y)| {
                    let (a, b) = (x * &fa, y * &fb);
                    if sign > 0 {
                        a + b
                    } else {
                        a - b
                    }
                })
                .collect();
            return CycNumber::normalized(self.field.clone(), l, v);
        };
        CycNumber::normalized(self.field.clone(), self.den.clone(), num)
    }

    fn mul_same(&self, other: &CycNumber) -> CycNumber {
        let phi = self.field.phi;
        if self.is_zero() || other.is_zero() {
            return CycNumber::zero_in(&self.field);
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let num = self.field.reduce(prod);
        CycNumber::normalized(self.field.clone(), &self.den * &other.den, num)
    }

    fn zero_in(field: &Arc<CycField>) -> CycNumber {
        CycNumber { field: field.clone(), den: BigInt::one(), num: vec![BigInt::zero(); field.phi] }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, s: &BRational) -> CycNumber {
        let num = self.num.iter().map(|c| c * s.numer()).collect();
        CycNumber::normalized(self.field.clone(), &self.den * s.denom(), num)
    }

    /// Multiplies by an integer scalar.
    pub fn scale_int(&self, s: i64) -> CycNumber {
        self.scale(&BRational::from_integer(BigInt::from(s)))
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inverse(&self) -> Result<CycNumber> {
        CycNumber::root_power_in(&self.field, 0).checked_div(self)
    }

    /// Exact quotient `self / other`; fails when `other` is zero.
    pub fn checked_div(&self, other: &CycNumber) -> Result<CycNumber> {
        if other.is_zero() {
            return Err(Error::DivisionByZero("cyclotomic division by zero".into()));
        }
        let (x, z) = CycNumber::common(self, other);
        let field = x.field.clone();
        let phi = field.phi;
        // columns of the multiplication-by-z matrix
        let mut cols = Vec::with_capacity(phi);
        let mut w = z.num.clone();
        for i in 0..phi {
            if i > 0 {
                w = field.shift_once(&w);
            }
            cols.push(w.clone());
        }
        let a: Vec<Vec<BigInt>> = (0..phi).map(|r| (0..phi).map(|c| cols[c][r].clone()).collect()).collect();
        let y = solve_integer_square(&a, &x.num)
            .ok_or_else(|| Error::DivisionByZero("singular multiplication matrix".into()))?;
        // x = x.num/x.den, z = z.num/z.den; y solves z.num * y = x.num
        let s = BRational::new(z.den.clone(), x.den.clone());
        let den = y.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = y
            .iter()
            .map(|c| (c * BRational::from_integer(den.clone())).to_integer())
            .collect();
        Ok(CycNumber::normalized(field, den, num).scale(&s))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<CycNumber> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = CycNumber::root_power_in(&self.field, 0);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The automorphism `e_N ↦ e_N^l`.
    pub fn galois(&self, l: i64) -> Result<CycNumber> {
        let n = self.field.n as i64;
        if gcd(l, n) != 1 {
            return Err(Error::NotCoprime(format!("galois exponent {l} and modulus {n}")));
        }
        let mut v = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                let k = ((i as i64) * l).rem_euclid(n) as usize;
                v[k] += c;
            }
        }
        Ok(CycNumber::from_poly(&self.field, v, self.den.clone()))
    }

    /// Complex conjugate, the automorphism `e_N ↦ e_N^{-1}`.
    pub fn conj(&self) -> CycNumber {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Re-expresses the number in `Q(e_M)` for a divisor `M` of `N`, if it lies there.
    pub fn descend(&self, m: u64) -> Option<CycNumber> {
        let n = self.field.n;
        if !n.is_multiple_of(m) {
            return None;
        }
        if m == n {
            return Some(self.clone());
        }
        let small = CycField::new(m);
        if small.phi == self.field.phi {
            // same field (N = 2M with M odd): map e_N = -e_M^{(M+1)/2}
            let v: Vec<BigInt> = {
                let mut v = vec![BigInt::zero(); m as usize];
                let half = m.div_ceil(2) as usize;
                for (i, c) in self.num.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let k = (i * half) % m as usize;
                    if i % 2 == 1 {
                        v[k] -= c;
                    } else {
                        v[k] += c;
                    }
                }
                v
            };
            return Some(CycNumber::from_poly(&small, v, self.den.clone()));
        }
        let step = (n / m) as usize;
        let mut a = vec![vec![BigRational::zero(); small.phi]; self.field.phi];
        for i in 0..small.phi {
            let mut v = vec![BigInt::zero(); i * step + 1];
            v[i * step] = BigInt::one();
            let col = self.field.reduce(v);
            for (r, c) in col.into_iter().enumerate() {
                a[r][i] = BigRational::from_integer(c);
            }
        }
        let rhs: Vec<BigRational> = self.num.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let sol = solve_rational(&a, &rhs)?;
        let den = sol.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = sol.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
        Some(CycNumber::normalized(small, den * &self.den, num))
    }

    /// The same number stored at the smallest modulus that contains it.
    pub fn simplify(&self) -> CycNumber {
        if self.is_zero() {
            return CycNumber::from_integer(0);
        }
        for m in divisors(self.field.n) {
            if let Some(x) = self.descend(m) {
                return x;
            }
        }
        self.clone()
    }

    /// Complex embedding sending `e_N` to `exp(2πi/N)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64().unwrap_or(f64::INFINITY) / den;
            let ang = 2.0 * std::f64::consts::PI * (i as f64) / n;
            acc += Complex64::from_polar(cf, ang);
        }
        acc
    }

    /// Canonical serialization `N:[c_0,...,c_{φ(N)-1}]`.
    pub fn to_canonical_string(&self) -> String {
        let parts: Vec<String> = self.coeffs().iter().map(fmt_rational).collect();
        format!("{}:[{}]", self.field.n, parts.join(","))
    }

    /// Parses the canonical serialization.
    pub fn parse(s: &str) -> Result<CycNumber> {
        let s = s.trim();
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in {s:?}")))?;
        let n: u64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
        if n == 0 {
            return Err(Error::Parse("modulus must be positive".into()));
        }
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("missing brackets in {s:?}")))?;
        let coeffs = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        CycNumber::from_coeffs(n, &coeffs)
    }
}

/// Formats a rational as `p` or `p/q`.
pub(crate) fn fmt_rational(x: &BRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q`.
pub(crate) fn parse_rational(t: &str) -> Result<BRational> {
    let t = t.trim();
    let bad = || Error::Parse(format!("bad rational {t:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BRational::new(p, q))
        }
        None => Ok(BRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &CycNumber) -> bool {
        if self.field.n == other.field.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = CycNumber::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNumber {}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            field: self.field.clone(),
            den: self.den.clone(),
            num: self.num.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &CycNumber) -> CycNumber {
                let f: fn(&CycNumber, &CycNumber) -> CycNumber = $body;
                if self.field.n == rhs.field.n {
                    f(self, rhs)
                } else {
                    let (a, b) = CycNumber::common(self, rhs);
                    f(&a, &b)
                }
            }
        }
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &CycNumber) -> CycNumber {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_same(b, 1));
binop!(Sub, sub, |a, b| a.add_same(b, -1));
binop!(Mul, mul, |a, b| a.mul_same(b));

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNumber> for CycNumber {
    fn sub_assign(&mut self, rhs: &CycNumber) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for CycNumber {
    fn sum<I: Iterator<Item = CycNumber>>(iter: I) -> CycNumber {
        iter.fold(CycNumber::from_integer(0), |a, b| a + b)
    }
}

/// An integer element of the group ring `Z[Z/N]`: a formal sum of powers of `e_N`.
///
/// State sums are accumulated here, where multiplying by a root of unity is a
/// rotation, and converted to a [`CycNumber`] once at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSum {
    n: u64,
    c: Vec<BigInt>,
}

impl RootSum {
    /// The zero sum over `Z/N`.
    pub fn zero(n: u64) -> RootSum {
        assert!(n >= 1);
        RootSum { n, c: vec![BigInt::zero(); n as usize] }
    }

    /// The single term `k·e_N^e`.
    pub fn monomial(n: u64, e: i64, k: i64) -> RootSum {
        let mut s = RootSum::zero(n);
        s.add_term(e, &BigInt::from(k));
        s
    }

    /// Builds from a coefficient vector of length `N`.
    pub fn from_coeffs(c: Vec<BigInt>) -> RootSum {
        assert!(!c.is_empty());
        RootSum { n: c.len() as u64, c }
    }

    /// Modulus `N`.
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Coefficient vector indexed by exponent.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    /// Adds `k·e_N^e`.
    pub fn add_term(&mut self, e: i64, k: &BigInt) {
        let i = e.rem_euclid(self.n as i64) as usize;
        self.c[i] += k;
    }

    /// Adds `k·e_N^e` for a small integer `k`.
    pub fn add_term_i64(&mut self, e: i64, k: i64) {
        let i = e.rem_euclid(self.n as i64) as usize;
        self.c[i] += k;
    }

    /// Adds `k·self'` where `self'` is `other` rotated by `e`.
    pub fn add_rotated(&mut self, other: &RootSum, e: i64, k: i64) {
        assert_eq!(self.n, other.n);
        let n = self.n as usize;
        let s = e.rem_euclid(self.n as i64) as usize;
        for (i, v) in other.c.iter().enumerate() {
            if !v.is_zero() {
                let j = (i + s) % n;
                if k == 1 {
                    self.c[j] += v;
                } else if k == -1 {
                    self.c[j] -= v;
                } else {
                    self.c[j] += v * k;
                }
            }
        }
    }

    /// Adds another sum.
    pub fn add_assign(&mut self, other: &RootSum) {
        self.add_rotated(other, 0, 1);
    }

    /// Group ring product.
    pub fn mul(&self, other: &RootSum) -> RootSum {
        assert_eq!(self.n, other.n);
        let n = self.n as usize;
        let mut out = RootSum::zero(self.n);
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.c.iter().enumerate() {
                if !y.is_zero() {
                    out.c[(i + j) % n] += x * y;
                }
            }
        }
        out
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &BigInt) -> RootSum {
        RootSum { n: self.n, c: self.c.iter().map(|x| x * k).collect() }
    }

    /// True if all coefficients vanish (the sum itself may still evaluate to zero otherwise).
    pub fn is_formally_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Re-indexes into `Z/(kN)`.
    pub fn lift(&self, k: u64) -> RootSum {
        let mut out = RootSum::zero(self.n * k);
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                out.c[i * k as usize] = x.clone();
            }
        }
        out
    }

    /// Evaluates at `e_N`, giving a canonical cyclotomic number.
    pub fn to_cyc(&self) -> CycNumber {
        let field = CycField::new(self.n);
        self.to_cyc_in(&field)
    }

    /// Evaluates at `e_N` inside an existing field of modulus `N`.
    pub fn to_cyc_in(&self, field: &Arc<CycField>) -> CycNumber {
        assert_eq!(field.modulus(), self.n);
        CycNumber::from_poly(field, self.c.clone(), BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, n: u64) -> CycNumber {
        let phi = euler_phi(n) as usize;
        let coeffs: Vec<BRational> = (0..phi)
            .map(|_| BRational::new(BigInt::from(rng.gen_range(-9..10)), BigInt::from(rng.gen_range(1..4))))
            .collect();
        CycNumber::from_coeffs(n, &coeffs).unwrap()
    }

    #[test]
    fn roots_and_basic_identities() {
        // e_3^2 = -1 - e_3
        let w = CycNumber::root_power(3, 1);
        assert_eq!(&w * &w, -(CycNumber::from_integer(1) + &w));
        // e_4^2 = -1 across moduli
        assert_eq!(CycNumber::root_power(4, 2), CycNumber::from_integer(-1));
        assert_eq!(CycNumber::root_power(12, 3), CycNumber::root_power(4, 1));
        // sum of all 5th roots is zero
        let s: CycNumber = (0..5).map(|k| CycNumber::root_power(5, k)).sum();
        assert!(s.is_zero());
    }

    #[test]
    fn galois_examples() {
        let x = CycNumber::root_power(5, 1);
        assert_eq!(x.galois(2).unwrap(), CycNumber::root_power(5, 2));
        assert_eq!(CycNumber::from_integer(7).galois(3).unwrap(), CycNumber::from_integer(7));
        assert!(x.galois(5).is_err());
    }

    #[test]
    fn galois_composition_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [5u64, 8, 12, 15, 20, 28, 36] {
            let units: Vec<i64> = (1..n as i64).filter(|l| gcd(*l, n as i64) == 1).collect();
            for _ in 0..6 {
                let x = random(&mut rng, n);
                let l = units[rng.gen_range(0..units.len())];
                let m = units[rng.gen_range(0..units.len())];
                let lhs = x.galois(l).unwrap().galois(m).unwrap();
                let rhs = x.galois((l * m).rem_euclid(n as i64)).unwrap();
                assert_eq!(lhs, rhs);
                // automorphism respects products
                let y = random(&mut rng, n);
                assert_eq!((&x * &y).galois(l).unwrap(), x.galois(l).unwrap() * y.galois(l).unwrap());
            }
        }
    }

    #[test]
    fn division_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1u64, 3, 7, 8, 20, 24] {
            for _ in 0..5 {
                let x = random(&mut rng, n);
                let y = random(&mut rng, n);
                if y.is_zero() {
                    continue;
                }
                let q = x.checked_div(&y).unwrap();
                assert_eq!(&q * &y, x);
            }
        }
        assert!(CycNumber::from_integer(1).checked_div(&CycNumber::zero(5)).is_err());
        let z = CycNumber::from_integer(1) - CycNumber::root_power(7, 1);
        assert_eq!(z.pow(3).unwrap() * z.pow(-3).unwrap(), CycNumber::from_integer(1));
    }

    #[test]
    fn lift_descend_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1u64, 3, 4, 5, 9, 12] {
            for k in [1u64, 2, 3, 4] {
                let x = random(&mut rng, n);
                let y = x.lift(n * k);
                assert_eq!(y.descend(n).unwrap().to_canonical_string(), x.to_canonical_string());
                assert_eq!(x, y);
            }
        }
        assert!(CycNumber::root_power(5, 1).lift(10).descend(2).is_none());
        assert_eq!(CycNumber::root_power(20, 4).simplify().modulus(), 5);
        assert_eq!(CycNumber::root_power(8, 2).simplify().modulus(), 4);
        assert_eq!(CycNumber::root_power(6, 1).simplify().modulus(), 3);
    }

    #[test]
    fn complex_embedding_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [3u64, 8, 15, 24] {
            for _ in 0..5 {
                let x = random(&mut rng, n);
                let y = random(&mut rng, n);
                let p = (&x * &y).to_complex();
                let q = x.to_complex() * y.to_complex();
                assert!((p - q).norm() <= 1e-9 * q.norm().max(1.0));
            }
        }
    }

    #[test]
    fn serialization_roundtrip() {
        let x = CycNumber::from_coeffs(
            5,
            &[1, -2, 0, 3].iter().map(|&v| BRational::new(BigInt::from(v), BigInt::from(2))).collect::<Vec<_>>(),
        )
        .unwrap();
        let s = x.to_canonical_string();
        assert_eq!(s, "5:[1/2,-1,0,3/2]");
        assert_eq!(CycNumber::parse(&s).unwrap(), x);
        assert!(CycNumber::parse("5:[1,2]").is_err());
        assert!(CycNumber::parse("oops").is_err());
    }

    #[test]
    fn root_sum_matches_direct() {
        let mut s = RootSum::zero(12);
        s.add_term_i64(1, 2);
        s.add_term_i64(-1, 1);
        let t = RootSum::monomial(12, 5, -1);
        let direct = (CycNumber::root_power(12, 1).scale_int(2) + CycNumber::root_power(12, -1))
            * CycNumber::root_power(12, 5).scale_int(-1);
        assert_eq!(s.mul(&t).to_cyc(), direct);
    }
}
