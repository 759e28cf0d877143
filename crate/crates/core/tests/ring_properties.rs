use num_bigint::BigInt;
use proptest::prelude::*;

use stcalc_core::LaurentPoly;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-8i64..=8, -40i64..=40), 0..6).prop_map(LaurentPoly::from_terms)
}

fn even_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -40i64..=40), 0..6)
        .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (2 * e, c))))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributive(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn identities_and_inverses(a in poly()) {
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert!((&a * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn leading_terms_multiply(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (ea, ca) = a.leading().unwrap();
        let (eb, cb) = b.leading().unwrap();
        prop_assert_eq!((&a * &b).leading().unwrap(), (ea + eb, ca * cb));
        let (ta, _) = a.trailing().unwrap();
        let (tb, _) = b.trailing().unwrap();
        prop_assert_eq!((&a * &b).trailing().unwrap().0, ta + tb);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly(), b in poly(), x in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 5])) {
        // shifted so every exponent is non-negative
        let shift = 8;
        let a2 = a.shift(shift);
        let b2 = b.shift(shift);
        let x = BigInt::from(x);
        let ev = |p: &LaurentPoly| p.eval_v(&x).unwrap();
        prop_assert_eq!(ev(&(&a2 + &b2)), ev(&a2) + ev(&b2));
        prop_assert_eq!(ev(&(&a2 * &b2)), ev(&a2) * ev(&b2));
    }

    #[test]
    fn text_round_trips(a in poly()) {
        prop_assert_eq!(a.to_v_string().parse::<LaurentPoly>().unwrap(), a.clone());
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn q_rendering_for_integral_polys(a in even_poly()) {
        prop_assert!(a.is_integral_in_q());
        prop_assert!(!a.to_string().contains('v'));
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn json_round_trips(a in poly()) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&text).unwrap(), a);
    }

    #[test]
    fn pow_matches_repeated_product(a in poly(), k in 0u32..5) {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = &acc * &a;
        }
        prop_assert_eq!(a.pow(k), acc);
    }

    #[test]
    fn monomials_compose(m in -20i64..20, n in -20i64..20) {
        prop_assert_eq!(LaurentPoly::q_pow(m) * LaurentPoly::q_pow(n), LaurentPoly::q_pow(m + n));
        prop_assert!((LaurentPoly::v_pow(m) * LaurentPoly::v_pow(-m)).is_one());
    }
}
