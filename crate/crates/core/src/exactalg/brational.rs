use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Rational number used as a coefficient. The ring `Z[1/b]` is not a separate
/// type; membership is checked with [`is_b_integral`] where it matters.
pub type BRational = BigRational;

/// True when every prime factor of the denominator of `x` divides `b`.
///
/// `b = 1` (or `-1`) forces an integral value.
pub fn is_b_integral(x: &BRational, b: i64) -> bool {
    denominator_divides_power(x.denom(), b)
}

/// True when `den` divides some power of `b`.
pub(crate) fn denominator_divides_power(den: &BigInt, b: i64) -> bool {
    let mut d = den.abs();
    let b = BigInt::from(b.unsigned_abs());
    if b.is_one() {
        return d.is_one();
    }
    loop {
        if d.is_one() {
            return true;
        }
        let g = d.gcd(&b);
        if g.is_one() {
            return false;
        }
        while (&d % &g) == BigInt::from(0) {
            d /= &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BRational {
        BRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn b_integrality() {
        assert!(is_b_integral(&r(3, 1), 1));
        assert!(!is_b_integral(&r(1, 2), 1));
        assert!(is_b_integral(&r(1, 8), 2));
        assert!(is_b_integral(&r(1, 12), 6));
        assert!(!is_b_integral(&r(1, 12), 3));
        assert!(is_b_integral(&r(5, 27), -9));
    }
}
