use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numtheory::{divisors, factorize};

/// Divides `num` by the monic polynomial `den` (coefficients low to high).
/// Returns `None` if the remainder is nonzero.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let dn = den.len() - 1;
    if num.len() <= dn {
        return if num.iter().all(Zero::is_zero) { Some(vec![]) } else { None };
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            if !d.is_zero() {
                rem[i + j] -= &c * d;
            }
        }
        quot[i] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(quot)
}

/// The `n`-th cyclotomic polynomial `Φ_n(q)`, coefficients from `q^0` upwards.
///
/// Computed by dividing `q^n - 1` exactly by `Φ_d` for every proper divisor `d`
/// of `n`, each of which is obtained the same way.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    let mut table: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
    for d in divisors(n) {
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = BigInt::from(-1);
        p[d as usize] = BigInt::one();
        for e in divisors(d) {
            if e == d {
                continue;
            }
            p = exact_div_monic(&p, &table[&e]).expect("Φ_e divides q^d - 1");
        }
        table.insert(d, p);
    }
    table.remove(&n).unwrap()
}

/// `Φ_n` as sparse `(exponent, coefficient)` pairs, built from the squarefree
/// kernel: `Φ_{mp}(q) = Φ_m(q^p)/Φ_m(q)` for a new prime `p`, and
/// `Φ_n(q) = Φ_{rad(n)}(q^{n/rad(n)})`.
pub fn cyclotomic_poly_sparse(n: u64) -> Vec<(usize, BigInt)> {
    assert!(n >= 1, "cyclotomic_poly_sparse needs n >= 1");
    let primes: Vec<u64> = factorize(n).iter().map(|&(p, _)| p).collect();
    let mut cur = vec![BigInt::from(-1), BigInt::one()];
    let mut rad = 1u64;
    for p in primes {
        let mut stretched = vec![BigInt::zero(); (cur.len() - 1) * p as usize + 1];
        for (i, c) in cur.iter().enumerate() {
            stretched[i * p as usize] = c.clone();
        }
        cur = exact_div_monic(&stretched, &cur).expect("Φ_m(q) divides Φ_m(q^p)");
        rad *= p;
    }
    let s = (n / rad) as usize;
    cur.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i * s, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::euler_phi;

    fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
    }

    #[test]
    fn product_over_divisors_and_degree() {
        for n in 1..=120u64 {
            let mut prod = vec![BigInt::one()];
            for d in divisors(n) {
                prod = mul(&prod, &cyclotomic_poly(d));
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[n as usize] = BigInt::one();
            assert_eq!(prod, expect, "n = {n}");
            assert_eq!(cyclotomic_poly(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn sparse_matches_dense() {
        for n in 1..=150u64 {
            let dense = cyclotomic_poly(n);
            let mut from_sparse = vec![BigInt::zero(); dense.len()];
            for (e, c) in cyclotomic_poly_sparse(n) {
                from_sparse[e] = c;
            }
            assert_eq!(dense, from_sparse, "n = {n}");
        }
    }
}
