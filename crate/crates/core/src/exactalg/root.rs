use std::fmt;

use num_bigint::BigInt;

use super::brational::BRational;
use super::cycnum::{CycField, CycNumber};
use super::laurent::QuarterLaurent;
use crate::error::{precondition, Error, Result};
use crate::numtheory::gcd;

/// The two theories of quantum invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    SO3,
    SU2,
}

impl Theory {
    /// Parses `so3` / `su2` (case-insensitive).
    pub fn parse(s: &str) -> Result<Theory> {
        match s.to_ascii_lowercase().as_str() {
            "so3" => Ok(Theory::SO3),
            "su2" => Ok(Theory::SU2),
            _ => Err(Error::Parse(format!("unknown theory {s:?}"))),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::SO3 => "so3",
            Theory::SU2 => "su2",
        })
    }
}

/// A root of unity `ξ = e_r^l` with fixed fourth root `ξ^{1/4} = e_{4r}^l`.
///
/// `l` is stored reduced modulo `4r`, since that determines the fourth root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSpec {
    pub r: u64,
    pub l: i64,
    pub theory: Theory,
}

impl RootSpec {
    /// Validates `gcd(l, r) = 1` and, for SO(3), odd `r`.
    pub fn new(r: u64, l: i64, theory: Theory) -> Result<RootSpec> {
        if r == 0 {
            return precondition("root order must be positive");
        }
        if gcd(l, r as i64) != 1 {
            return Err(Error::NotCoprime(format!("l = {l} and r = {r}")));
        }
        if theory == Theory::SO3 && r.is_multiple_of(2) {
            return precondition(format!("SO(3) needs odd order, got r = {r}"));
        }
        Ok(RootSpec { r, l: l.rem_euclid(4 * r as i64), theory })
    }

    /// The modulus `4r` carrying the fourth root.
    pub fn quarter_modulus(&self) -> u64 {
        4 * self.r
    }

    /// `ξ` itself.
    pub fn xi(&self) -> CycNumber {
        CycNumber::root_power(self.r, self.l)
    }

    /// `ξ^e` for an integer exponent.
    pub fn xi_pow(&self, e: i64) -> CycNumber {
        CycNumber::root_power(self.r, self.l * e)
    }

    /// `ξ^{e/4} = e_{4r}^{l·e}`.
    pub fn xi_quarter_pow(&self, e: i64) -> CycNumber {
        if e % 4 == 0 {
            self.xi_pow(e / 4)
        } else {
            CycNumber::root_power(4 * self.r, self.l * e)
        }
    }

    /// The same root in the other theory (`None` if SO(3) is inadmissible).
    pub fn with_theory(&self, theory: Theory) -> Result<RootSpec> {
        RootSpec::new(self.r, self.l, theory)
    }

    /// Exponents `l` in `0..4r` with `gcd(l, 4r) = 1`: the roots reachable from
    /// `e_r` by a Galois automorphism of `Q(e_{4r})`.
    pub fn galois_exponents(r: u64) -> Vec<i64> {
        let m = 4 * r as i64;
        (1..m).filter(|&l| gcd(l, m) == 1).collect()
    }
}

impl fmt::Display for RootSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_{}^{} ({})", self.r, self.l, self.theory)
    }
}

/// Substitutes `u ↦ e_{4r}^l` and reduces.
///
/// If every exponent is divisible by 4 the value is built directly at modulus `r`.
pub fn eval_at_root(f: &QuarterLaurent, xi: &RootSpec) -> CycNumber {
    let integral_q = f.exps_divisible_by(4);
    let (n, scale) = if integral_q { (xi.r, 4) } else { (4 * xi.r, 1) };
    let field = CycField::new(n);
    let den = f.common_denominator();
    let mut v = vec![BigInt::from(0); n as usize];
    for (e, c) in f.terms() {
        let k = ((e / scale) * xi.l).rem_euclid(n as i64) as usize;
        let scaled = c * BRational::from_integer(den.clone());
        v[k] += scaled.to_integer();
    }
    CycNumber::from_poly(&field, v, den)
}

/// [`eval_at_root`] with a ring check: coefficients must lie in `Z[1/b]`.
pub fn eval_at_root_checked(f: &QuarterLaurent, xi: &RootSpec, b: i64) -> Result<CycNumber> {
    if !f.is_b_integral(b) {
        return Err(Error::RingViolation(format!("coefficient denominator is not a power of {b}")));
    }
    Ok(eval_at_root(f, xi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qcalc::qint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        // [r] vanishes at every root of order r >= 2 ([1] = 1 at ξ = 1)
        for r in 2..12u64 {
            for l in 1..(r as i64 + 1) {
                if gcd(l, r as i64) != 1 {
                    continue;
                }
                let xi = RootSpec::new(r, l, Theory::SU2).unwrap();
                assert!(eval_at_root(&qint(r as i64), &xi).is_zero(), "r={r}");
            }
        }
        let e3 = RootSpec::new(3, 1, Theory::SO3).unwrap();
        assert_eq!(eval_at_root(&QuarterLaurent::q_pow(1), &e3), CycNumber::root_power(3, 1));
        assert_eq!(eval_at_root(&QuarterLaurent::q_pow(1), &e3).modulus(), 3);
        let e5 = RootSpec::new(5, 1, Theory::SU2).unwrap();
        let quarter = eval_at_root(&QuarterLaurent::u_pow(1), &e5);
        assert_eq!(quarter.modulus(), 20);
        assert_eq!(quarter, CycNumber::root_power(20, 1));
        assert!(RootSpec::new(4, 1, Theory::SO3).is_err());
        assert!(RootSpec::new(6, 3, Theory::SU2).is_err());
        assert!(eval_at_root_checked(&QuarterLaurent::monomial(0, BRational::new(1.into(), 3.into())), &e5, 2).is_err());
    }

    fn random_laurent(rng: &mut ChaCha8Rng) -> QuarterLaurent {
        let mut p = QuarterLaurent::zero();
        for _ in 0..rng.gen_range(1..7) {
            p.add_term(rng.gen_range(-20..20), BRational::new(rng.gen_range(-5..6).into(), rng.gen_range(1..3).into()));
        }
        p
    }

    #[test]
    fn evaluation_is_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..40 {
            let f = random_laurent(&mut rng);
            let g = random_laurent(&mut rng);
            let r = rng.gen_range(1..15u64);
            let l = loop {
                let l = rng.gen_range(1..60i64);
                if gcd(l, r as i64) == 1 {
                    break l;
                }
            };
            let xi = RootSpec::new(r, l, Theory::SU2).unwrap();
            assert_eq!(eval_at_root(&(&f * &g), &xi), eval_at_root(&f, &xi) * eval_at_root(&g, &xi));
            assert_eq!(eval_at_root(&(&f + &g), &xi), eval_at_root(&f, &xi) + eval_at_root(&g, &xi));
        }
    }
}
