//! Elementary number theory behind the closed forms.
//!
//! Everything here works on `i64`. The sign conventions follow the usual
//! lens space literature: `sn(x)` is the sign of `x`, starred inverses are
//! normalized to a fixed window, and negative continued fractions use
//! entries `m_i >= 2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{precondition, Error, Result};
use crate::exactalg::CycNumber;

/// Sign of `x` with `sn(0) = 0`.
pub fn sn(x: i64) -> i64 {
    x.signum()
}

/// Non-negative greatest common divisor.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Least common multiple of two positive integers.
pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Reduces `x` into `0..m`.
pub fn modp(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

/// Prime factorization as `(p, e)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Product of the distinct primes dividing `n` (`rad(1) = 1`).
pub fn radical(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, _)| p).product()
}

/// The prime-power factors `p^e` of `n`, smallest prime first.
pub fn prime_power_parts(n: u64) -> Vec<u64> {
    factorize(n).iter().map(|&(p, e)| p.pow(e)).collect()
}

/// Returns `Some((p, l))` when `|n| = p^l` with `p` prime and `l >= 1`.
pub fn as_prime_power(n: i64) -> Option<(u64, u32)> {
    let f = factorize(n.unsigned_abs());
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Inverse of `x` modulo `m` in `0..m`, if it exists. For `m = 1` the answer is `0`.
pub fn mod_inverse(x: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = x.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// Jacobi symbol `(a/b)` for odd positive `b`.
///
/// # Arguments
///
/// * `a` - any integer
/// * `b` - odd modulus, `b >= 1`
pub fn jacobi(a: i64, b: i64) -> Result<i32> {
    if b <= 0 || b % 2 == 0 {
        return precondition(format!("jacobi needs an odd positive modulus, got {b}"));
    }
    let mut a = a.rem_euclid(b);
    let mut n = b;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// `ε(x)`: `1` for `x ≡ 1 (mod 4)` and `i` for `x ≡ 3 (mod 4)`, as an element of `Q(e_4)`.
pub fn epsilon4(x: i64) -> Result<CycNumber> {
    Ok(CycNumber::root_power(4, epsilon4_exp(x)?))
}

/// Exponent `k` with `ε(x) = e_4^k`.
pub(crate) fn epsilon4_exp(x: i64) -> Result<i64> {
    match x.rem_euclid(4) {
        1 => Ok(0),
        3 => Ok(1),
        _ => precondition(format!("ε(x) needs odd x, got {x}")),
    }
}

/// Starred inverse `x_{*r}`: the representative of `x^{-1} mod r` in `1..r`,
/// with the convention `x_{*1} = 0`.
pub fn star_inverse(x: i64, r: i64) -> Result<i64> {
    if r < 1 {
        return precondition(format!("modulus must be positive, got {r}"));
    }
    if r == 1 {
        return Ok(0);
    }
    mod_inverse(x, r).ok_or_else(|| Error::NotCoprime(format!("{x} and {r}")))
}

/// The pair `(n_{*m}, m_{*n})` with `n·n_{*m} + m·m_{*n} = 1` and `0 < sn(n)·n_{*m} < |m|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarInversePair {
    pub n_star_m: i64,
    pub m_star_n: i64,
}

/// Computes the normalized Bezout pair of coprime `n`, `m` with `0 < |n| < |m|`.
///
/// The degenerate case `|n| = 1` is allowed for `|m| = 1` as well and gives `(sn(n), 0)`.
pub fn star_pair(n: i64, m: i64) -> Result<StarInversePair> {
    if n == 0 || (n.abs() >= m.abs() && !(n.abs() == 1 && m.abs() == 1)) {
        return precondition(format!("star_pair needs 0 < |n| < |m|, got n={n}, m={m}"));
    }
    if gcd(n, m) != 1 {
        return Err(Error::NotCoprime(format!("{n} and {m}")));
    }
    if m.abs() == 1 {
        return Ok(StarInversePair { n_star_m: sn(n), m_star_n: 0 });
    }
    let am = m.abs();
    // n·x ≡ 1 (mod |m|) with 0 < sn(n)·x < |m|
    let inv = mod_inverse(n, am).expect("coprime");
    let x = if n > 0 { inv } else { inv - am };
    let rest = 1 - n * x;
    debug_assert_eq!(rest % m, 0);
    Ok(StarInversePair { n_star_m: x, m_star_n: rest / m })
}

/// Starred inverse of `a` with respect to `b` as used in the lens formulas:
/// the first entry of [`star_pair`], extended by `a_{*b} = x` with `a·x ≡ 1 (mod |b|)`
/// and `0 < sn(a)·x < |b|` also when `|a| > |b|`.
pub fn lens_star(a: i64, b: i64) -> Result<i64> {
    if b.abs() == 1 {
        return Ok(0);
    }
    let am = b.abs();
    let inv = mod_inverse(a, am).ok_or_else(|| Error::NotCoprime(format!("{a} and {b}")))?;
    Ok(if a > 0 { inv } else { inv - am })
}

fn sawtooth(num: &BigInt, den: &BigInt) -> BigRational {
    if (num % den).is_zero() {
        return BigRational::zero();
    }
    let x = BigRational::new(num.clone(), den.clone());
    let fl = x.floor();
    x - fl - BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Dedekind sum `s(a,b) = Σ_{n=0}^{|b|-1} ((n/b))((an/b))` by the definition.
///
/// # Arguments
///
/// * `a` - integer coprime to `b`
/// * `b` - nonzero integer
pub fn dedekind_sum(a: i64, b: i64) -> Result<BigRational> {
    if b == 0 {
        return precondition("dedekind_sum needs b != 0");
    }
    if gcd(a, b) != 1 {
        return Err(Error::NotCoprime(format!("{a} and {b}")));
    }
    let bb = BigInt::from(b.abs());
    let mut s = BigRational::zero();
    for n in 0..b.abs() {
        let x = sawtooth(&BigInt::from(n), &bb);
        if x.is_zero() {
            continue;
        }
        let y = sawtooth(&(BigInt::from(a) * BigInt::from(n)), &bb);
        s += x * y;
    }
    // s(a,b) = s(a,-b): the sum only depends on |b|
    Ok(s)
}

/// Negative continued fraction of `b/a` for positive coprime `a`, `b`.
///
/// Returns `m_1..m_n` with `b/a = m_n - 1/(m_{n-1} - … - 1/m_1)`.
/// All terms are `>= 2` when `a < b`; otherwise only `m_n` may equal 1.
/// The expansion is re-evaluated and compared against `b/a` before returning.
pub fn neg_continued_fraction(b: i64, a: i64) -> Result<Vec<i64>> {
    if !(0 < a && 0 < b) {
        return precondition(format!("need positive a and b, got a={a}, b={b}"));
    }
    if gcd(a, b) != 1 {
        return Err(Error::NotCoprime(format!("{a} and {b}")));
    }
    let (mut x, mut y) = (b, a);
    let mut seq = Vec::new();
    while y != 0 {
        let m = Integer::div_ceil(&x, &y);
        seq.push(m);
        let next = m * y - x;
        x = y;
        y = next;
    }
    seq.reverse();
    let v = neg_cf_value(&seq);
    if v != BigRational::new(BigInt::from(b), BigInt::from(a)) {
        return Err(Error::Inconsistent(format!("continued fraction of {b}/{a} failed to reconstruct")));
    }
    Ok(seq)
}

/// Evaluates `m_n - 1/(m_{n-1} - … - 1/m_1)` for the sequence `m_1..m_n`.
pub fn neg_cf_value(ms: &[i64]) -> BigRational {
    let mut acc: Option<BigRational> = None;
    for &m in ms {
        let mr = BigRational::from_integer(BigInt::from(m));
        acc = Some(match acc {
            None => mr,
            Some(v) => mr - v.recip(),
        });
    }
    acc.unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legendre_euler(a: i64, p: i64) -> i32 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        let mut acc = 1i64;
        for _ in 0..(p - 1) / 2 {
            acc = acc * a % p;
        }
        if acc == 1 {
            1
        } else {
            -1
        }
    }

    fn jacobi_oracle(a: i64, b: i64) -> i32 {
        factorize(b as u64)
            .iter()
            .map(|&(p, e)| legendre_euler(a, p as i64).pow(e))
            .product()
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(7, 1).unwrap(), 1);
        assert_eq!(jacobi(3, 9).unwrap(), 0);
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert!(jacobi(2, 4).is_err());
        assert!(jacobi(2, -3).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion_product() {
        for b in (1..80).step_by(2) {
            for a in -40..40 {
                assert_eq!(jacobi(a, b).unwrap(), jacobi_oracle(a, b), "({a}/{b})");
            }
        }
    }

    #[test]
    fn jacobi_multiplicative() {
        for b in (1..40).step_by(2) {
            for a1 in 1..20 {
                for a2 in 1..20 {
                    let lhs = jacobi(a1 * a2, b).unwrap();
                    assert_eq!(lhs, jacobi(a1, b).unwrap() * jacobi(a2, b).unwrap());
                }
            }
        }
        for a in 1..30 {
            for b1 in (1..25).step_by(2) {
                for b2 in (1..25).step_by(2) {
                    let lhs = jacobi(a, b1 * b2).unwrap();
                    assert_eq!(lhs, jacobi(a, b1).unwrap() * jacobi(a, b2).unwrap());
                }
            }
        }
    }

    #[test]
    fn star_inverse_examples() {
        assert_eq!(star_inverse(4, 7).unwrap(), 2);
        assert_eq!(star_inverse(5, 1).unwrap(), 0);
        assert!(star_inverse(2, 4).is_err());
    }

    #[test]
    fn star_pair_examples_and_grid() {
        assert_eq!(star_pair(1, 7).unwrap(), StarInversePair { n_star_m: 1, m_star_n: 0 });
        assert_eq!(star_pair(2, 5).unwrap(), StarInversePair { n_star_m: 3, m_star_n: -1 });
        for m in -60i64..=60 {
            for n in -60i64..=60 {
                if n == 0 || n.abs() >= m.abs() || gcd(n, m) != 1 {
                    continue;
                }
                let p = star_pair(n, m).unwrap();
                assert_eq!(n * p.n_star_m + m * p.m_star_n, 1);
                let w = sn(n) * p.n_star_m;
                assert!(0 < w && w < m.abs(), "n={n} m={m} {p:?}");
            }
        }
        assert!(star_pair(2, 4).is_err());
        assert!(star_pair(5, 3).is_err());
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_sum(5, 1).unwrap(), BigRational::zero());
        assert_eq!(dedekind_sum(1, 2).unwrap(), BigRational::zero());
        assert_eq!(
            dedekind_sum(1, 3).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(18))
        );
        assert!(dedekind_sum(2, 4).is_err());
    }

    #[test]
    fn dedekind_symmetries_and_reciprocity() {
        for b in 1i64..30 {
            for a in -30i64..30 {
                if gcd(a, b) != 1 {
                    continue;
                }
                let s = dedekind_sum(a, b).unwrap();
                assert_eq!(s, dedekind_sum(a, -b).unwrap());
                assert_eq!(s, -dedekind_sum(-a, b).unwrap());
                if a > 0 {
                    // s(a,b) + s(b,a) = -1/4 + (a/b + b/a + 1/(ab))/12
                    let recip = dedekind_sum(b, a).unwrap();
                    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
                    let rhs = BigRational::new(BigInt::from(-1), BigInt::from(4))
                        + (BigRational::new(ab.clone(), bb.clone())
                            + BigRational::new(bb.clone(), ab.clone())
                            + BigRational::new(BigInt::one(), &ab * &bb))
                            / BigRational::from_integer(BigInt::from(12));
                    assert_eq!(s + recip, rhs, "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn continued_fraction_examples() {
        assert_eq!(neg_continued_fraction(3, 1).unwrap(), vec![3]);
        assert_eq!(neg_continued_fraction(5, 2).unwrap(), vec![2, 3]);
        assert_eq!(neg_continued_fraction(7, 3).unwrap(), vec![2, 2, 3]);
        assert!(neg_continued_fraction(3, 3).is_err());
        assert!(neg_continued_fraction(3, 0).is_err());
        assert_eq!(neg_continued_fraction(3, 5).unwrap(), vec![2, 3, 1]);
        assert_eq!(neg_continued_fraction(1, 1).unwrap(), vec![1]);
    }

    #[test]
    fn dedekind_identity_against_continued_fractions() {
        for b in 2i64..=40 {
            for a in 1..b {
                if gcd(a, b) != 1 {
                    continue;
                }
                let ms = neg_continued_fraction(b, a).unwrap();
                assert!(ms.iter().all(|&m| m >= 2));
                let n = ms.len() as i64;
                let lhs = BigRational::from_integer(BigInt::from(3 * n - ms.iter().sum::<i64>()));
                let astar = star_inverse(a, b).unwrap();
                let rhs = -BigRational::from_integer(BigInt::from(12)) * dedekind_sum(a, b).unwrap()
                    + BigRational::new(BigInt::from(a + astar), BigInt::from(b));
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn dedekind_combination_integrality() {
        for b in [-40i64, -13, -9, -8, -5, -4, -3, 2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 40] {
            for a in -45i64..45 {
                if a == 0 || gcd(a, b) != 1 {
                    continue;
                }
                let x = dedekind_sum(1, b).unwrap() - BigRational::from_integer(BigInt::from(sn(b)))
                    * dedekind_sum(a, b).unwrap();
                let bb = BigRational::from_integer(BigInt::from(b));
                let three = BigRational::from_integer(BigInt::from(3));
                let four = BigRational::from_integer(BigInt::from(4));
                assert!((&bb * &three * &x * &four).is_integer());
                let twelve = BigRational::from_integer(BigInt::from(12));
                let y = &twelve * &bb * &x;
                assert!(y.is_integer() && (y.to_integer() % BigInt::from(4)).is_zero(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn helpers() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(radical(72), 6);
        assert_eq!(prime_power_parts(360), vec![8, 9, 5]);
        assert_eq!(as_prime_power(-27), Some((3, 3)));
        assert_eq!(as_prime_power(12), None);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(lens_star(-2, 5).unwrap(), -3);
        assert!(epsilon4(2).is_err());
    }
}
