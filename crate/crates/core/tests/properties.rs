use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use uwrt_core::exactalg::{BRational, CycNumber};
use uwrt_core::numtheory::{dedekind_sum, gcd, neg_cf_value, neg_continued_fraction};

/// `Σ (a_i/d_i) e_n^i`, reduced into canonical form.
fn cyc(n: u64, coeffs: &[(i64, i64)]) -> CycNumber {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &(a, d))| CycNumber::root_power(n, i as i64).scale(&BRational::new(BigInt::from(a), BigInt::from(d))))
        .sum()
}

fn element() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws(n in 1u64..=24, a in element(), b in element(), c in element()) {
        let (x, y, z) = (cyc(n, &a), cyc(n, &b), cyc(n, &c));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
    }

    #[test]
    fn galois_is_multiplicative(n in 1u64..=24, a in element(), b in element(), l in 1i64..60) {
        prop_assume!(gcd(l, n as i64) == 1);
        let (x, y) = (cyc(n, &a), cyc(n, &b));
        prop_assert_eq!((&x * &y).galois(l).unwrap(), &x.galois(l).unwrap() * &y.galois(l).unwrap());
    }

    #[test]
    fn division_inverts_multiplication(n in 1u64..=20, a in element(), b in element()) {
        let (x, y) = (cyc(n, &a), cyc(n, &b));
        prop_assume!(!y.is_zero());
        prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x);
    }

    #[test]
    fn canonical_string_round_trip(n in 1u64..=30, a in element()) {
        let x = cyc(n, &a);
        prop_assert_eq!(CycNumber::parse(&x.to_canonical_string()).unwrap(), x);
    }

    #[test]
    fn embedding_respects_products(n in 1u64..=30, a in element(), b in element()) {
        let (x, y) = (cyc(n, &a), cyc(n, &b));
        let lhs = (&x * &y).to_complex();
        let rhs = x.to_complex() * y.to_complex();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn dedekind_reciprocity(a in 1i64..200, b in 1i64..200) {
        prop_assume!(gcd(a, b) == 1);
        let lhs = dedekind_sum(a, b).unwrap() + dedekind_sum(b, a).unwrap();
        let r = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
        let rhs = r(-1, 4) + (r(a, b) + r(b, a) + r(1, a * b)) / BigInt::from(12);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn continued_fraction_round_trip(a in 1i64..500, b in 1i64..500) {
        prop_assume!(gcd(a, b) == 1);
        let ms = neg_continued_fraction(b, a).unwrap();
        prop_assert_eq!(neg_cf_value(&ms), BigRational::new(BigInt::from(b), BigInt::from(a)));
    }
}
