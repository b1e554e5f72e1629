//! The Frobenius map `F_b: q ↦ q^b` on `E = Z[1/b][q]/(Φ_n^k)`.
//!
//! `E` is free of rank `kφ(n)` on the monomials `q^0 .. q^{kφ(n)-1}`. `F_b`
//! is injective with finite cokernel on the integral lattice, so after
//! inverting `b` it becomes an isomorphism and `q^{1/b} := F_b^{-1}(q)` is a
//! `b`-th root of `q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{precondition, Error, Result};
use crate::exactalg::linalg::{det_integer, solve_integer_square};
use crate::exactalg::{cyclotomic_poly, is_b_integral, BRational, CycNumber};
use crate::numtheory::{euler_phi, gcd};

/// An element of `Q[q]/(Φ_n^k)` in the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientElement {
    pub n: u64,
    pub k: u32,
    pub coeffs: Vec<BRational>,
}

/// `Φ_n(q)^k`, monic, coefficients from `q^0` upwards.
fn modulus_poly(n: u64, k: u32) -> Vec<BigInt> {
    let phi = cyclotomic_poly(n);
    let mut m = vec![BigInt::one()];
    for _ in 0..k {
        let mut out = vec![BigInt::zero(); m.len() + phi.len() - 1];
        for (i, a) in m.iter().enumerate() {
            for (j, c) in phi.iter().enumerate() {
                out[i + j] += a * c;
            }
        }
        m = out;
    }
    m
}

/// Remainder of `p` modulo the monic `m`; the result has length `deg m`.
fn reduce<T>(mut p: Vec<T>, m: &[BigInt]) -> Vec<T>
where
    T: Clone + Zero + for<'a> std::ops::SubAssign<&'a T> + std::ops::Mul<BigInt, Output = T>,
{
    let d = m.len() - 1;
    for top in (d..p.len()).rev() {
        let c = std::mem::replace(&mut p[top], T::zero());
        if c.is_zero() {
            continue;
        }
        for (j, mj) in m.iter().enumerate().take(d) {
            if !mj.is_zero() {
                let t = c.clone() * mj.clone();
                p[top - d + j] -= &t;
            }
        }
    }
    p.resize(d, T::zero());
    p
}

fn check_args(n: u64, k: u32, b: u64) -> Result<()> {
    if n == 0 || k == 0 || b == 0 {
        return precondition(format!("need n, k, b >= 1, got ({n}, {k}, {b})"));
    }
    if gcd(n as i64, b as i64) != 1 {
        return Err(Error::NotCoprime(format!("n = {n} and b = {b}")));
    }
    Ok(())
}

impl QuotientElement {
    /// Rank `kφ(n)` of the quotient.
    pub fn rank(n: u64, k: u32) -> usize {
        k as usize * euler_phi(n) as usize
    }

    /// Reduces an arbitrary rational polynomial into the quotient.
    pub fn from_poly(n: u64, k: u32, poly: Vec<BRational>) -> QuotientElement {
        let m = modulus_poly(n, k);
        let mut p = poly;
        if p.len() < m.len() - 1 {
            p.resize(m.len() - 1, BRational::zero());
        }
        QuotientElement { n, k, coeffs: reduce(p, &m) }
    }

    /// `±q^j` reduced, for `j >= 0`.
    pub fn monomial(n: u64, k: u32, sign: i64, j: usize) -> QuotientElement {
        let mut p = vec![BRational::zero(); j + 1];
        p[j] = BRational::from_integer(BigInt::from(sign));
        QuotientElement::from_poly(n, k, p)
    }

    pub fn one(n: u64, k: u32) -> QuotientElement {
        QuotientElement::monomial(n, k, 1, 0)
    }

    pub fn neg(&self) -> QuotientElement {
        QuotientElement { n: self.n, k: self.k, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &QuotientElement) -> QuotientElement {
        assert_eq!((self.n, self.k), (other.n, other.k), "quotient rings differ");
        let mut out = vec![BRational::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in other.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    out[i + j] += a * c;
                }
            }
        }
        QuotientElement::from_poly(self.n, self.k, out)
    }

    pub fn pow(&self, e: u64) -> QuotientElement {
        let mut acc = QuotientElement::one(self.n, self.k);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Value of the representative polynomial at `q = 1`.
    pub fn augmentation(&self) -> BRational {
        self.coeffs.iter().sum()
    }

    /// All coefficients lie in `Z[1/b]`.
    pub fn is_b_integral(&self, b: i64) -> bool {
        self.coeffs.iter().all(|c| is_b_integral(c, b))
    }

    /// Image under `q ↦ ξ`, `ξ = e_n` a primitive `n`-th root of unity.
    pub fn eval_at_primitive_root(&self) -> Result<CycNumber> {
        let base = QuotientElement::from_poly(self.n, 1, self.coeffs.clone());
        CycNumber::from_coeffs(self.n, &base.coeffs)
    }
}

/// Matrix of `F_b` in the monomial basis, row-major; column `i` is `q^{bi}` reduced.
pub fn frob_matrix(n: u64, k: u32, b: u64) -> Result<Vec<Vec<BigInt>>> {
    check_args(n, k, b)?;
    let m = modulus_poly(n, k);
    let d = m.len() - 1;
    let mut rows = vec![vec![BigInt::zero(); d]; d];
    for i in 0..d {
        let e = b as usize * i;
        let mut p = vec![BigInt::zero(); (e + 1).max(d)];
        p[e] = BigInt::one();
        for (row, c) in rows.iter_mut().zip(reduce(p, &m)) {
            row[i] = c;
        }
    }
    Ok(rows)
}

/// Index of `F_b(E)` in `E` for the integral lattice, i.e. `|det F_b|`.
pub fn lattice_index(n: u64, k: u32, b: u64) -> Result<BigInt> {
    Ok(det_integer(&frob_matrix(n, k, b)?).abs())
}

/// The predicted index `b^{k(k-1)φ(n)/2}`.
pub fn expected_lattice_index(n: u64, k: u32, b: u64) -> BigInt {
    let e = k as u64 * (k as u64 - 1) * euler_phi(n) / 2;
    num_traits::pow(BigInt::from(b), e as usize)
}

/// `q^{1/b} = F_b^{-1}(q)`, checked to satisfy `y^b = q` with `Z[1/b]` coefficients.
pub fn qth_root(n: u64, k: u32, b: u64) -> Result<QuotientElement> {
    let a = frob_matrix(n, k, b)?;
    let target = QuotientElement::monomial(n, k, 1, 1);
    let rhs: Vec<BigInt> = target.coeffs.iter().map(|c| c.to_integer()).collect();
    let y = solve_integer_square(&a, &rhs)
        .ok_or_else(|| Error::Inconsistent(format!("Frobenius matrix singular at ({n}, {k}, {b})")))?;
    let y = QuotientElement { n, k, coeffs: y };
    if y.pow(b) != target {
        return Err(Error::Inconsistent(format!("y^{b} != q at ({n}, {k})")));
    }
    if !y.is_b_integral(b as i64) {
        return Err(Error::RingViolation(format!("root at ({n}, {k}, {b}) leaves Z[1/{b}]")));
    }
    // For n = 1 the augmentation is the value at the root itself; the
    // inverse Frobenius fixes 1, so it is 1 and no sign flip is ever needed.
    if n == 1 && !y.augmentation().is_one() {
        return Err(Error::Inconsistent(format!("root at ({n}, {k}, {b}) has augmentation != 1")));
    }
    Ok(y)
}

/// Every `±q^j` with `0 <= j < bound` whose `b`-th power is 1.
pub fn monomial_roots_of_unity(n: u64, k: u32, b: u64, bound: usize) -> Result<Vec<QuotientElement>> {
    check_args(n, k, b)?;
    let one = QuotientElement::one(n, k);
    let mut q_j = one.clone();
    let q = QuotientElement::monomial(n, k, 1, 1);
    let mut found = Vec::new();
    for _ in 0..bound {
        for cand in [q_j.clone(), q_j.neg()] {
            if cand.pow(b) == one && !found.contains(&cand) {
                found.push(cand);
            }
        }
        q_j = q_j.mul(&q);
    }
    Ok(found)
}

/// The monomial search finds no `b`-th root of unity besides `±1`.
pub fn rigidity_holds(n: u64, k: u32, b: u64, bound: usize) -> Result<bool> {
    let one = QuotientElement::one(n, k);
    let minus = one.neg();
    Ok(monomial_roots_of_unity(n, k, b, bound)?.iter().all(|y| *y == one || *y == minus))
}
