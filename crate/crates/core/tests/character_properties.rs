use std::sync::Arc;

use proptest::prelude::*;

use stcalc_core::hecke::{char_thm43, steinberg_module, trivial_module};
use stcalc_core::{
    unipotent_expansion, x_w, AffineWeylGroup, Cochar, DatumSpec, LaurentPoly, SteinbergCalculator,
    UnipotentData, WeylGroup, WeylId,
};

const SPECS: &[&str] = &["A1", "A2:adjoint", "A3", "B2:adjoint", "B3", "C3:adjoint", "G2", "D4"];

struct Setup {
    affine: Arc<AffineWeylGroup>,
    calc: SteinbergCalculator,
}

thread_local! {
    static SETUPS: Vec<Setup> = SPECS
        .iter()
        .map(|s| {
            let d = s.parse::<DatumSpec>().unwrap().build().unwrap();
            let w = Arc::new(WeylGroup::enumerate(Arc::new(d)).unwrap());
            Setup {
                affine: Arc::new(AffineWeylGroup::new(w.clone()).unwrap()),
                calc: SteinbergCalculator::new(w),
            }
        })
        .collect();
}

fn with_setup<R>(i: usize, f: impl FnOnce(&Setup) -> R) -> R {
    SETUPS.with(|s| f(&s[i % s.len()]))
}

/// Dominant conjugate of the element with the given basis coordinates.
fn dominant(s: &Setup, coords: &[i64]) -> Cochar {
    let d = s.calc.datum();
    let y = d.cochar(&coords[..d.rank()]).unwrap();
    s.calc.weyl().dominant_conjugate(&y).1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn three_routes_agree(si in 0usize..8, coords in prop::collection::vec(-7i64..=7, 4)) {
        with_setup(si, |s| {
            let y = dominant(s, &coords);
            let [a, b, c] = s.calc.all_methods(&y).unwrap();
            prop_assert_eq!(&a.value, &b.value);
            prop_assert_eq!(&a.value, &c.value);
            prop_assert_eq!(&a.value, &s.calc.corollary34_split(&y).unwrap().value);
            Ok(())
        })?;
    }

    #[test]
    fn closed_form_is_weyl_invariant(si in 0usize..8, coords in prop::collection::vec(-5i64..=5, 4), wi in 0usize..10_000) {
        with_setup(si, |s| {
            let g = s.calc.weyl();
            let d = s.calc.datum();
            let y = d.cochar(&coords[..d.rank()]).unwrap();
            let w = WeylId((wi % g.order()) as u32);
            let wy = g.act_cochar(w, &y);
            prop_assert_eq!(s.calc.closed_form(&y).unwrap().value, s.calc.closed_form(&wy).unwrap().value);
            Ok(())
        })?;
    }

    #[test]
    fn value_is_a_single_negative_power(si in 0usize..8, coords in prop::collection::vec(0i64..=6, 4)) {
        with_setup(si, |s| {
            let y = dominant(s, &coords);
            let v = s.calc.alternating_sum(&y).unwrap().value;
            let (c, e) = v.as_monomial().unwrap();
            prop_assert_eq!(c, 1.into());
            prop_assert_eq!(e, -2 * s.calc.datum().pair_two_rho(&y));
            Ok(())
        })?;
    }

    #[test]
    fn module_traces(si in 0usize..8, coords in prop::collection::vec(0i64..=4, 4)) {
        with_setup(si, |s| {
            let y = dominant(s, &coords);
            let g = &s.affine;
            let sign = char_thm43(g, &y, &steinberg_module(g)).unwrap();
            prop_assert_eq!(sign, s.calc.closed_form(&y).unwrap().value);
            prop_assert!(char_thm43(g, &y, &trivial_module(g)).unwrap().is_one());
            Ok(())
        })?;
    }

    #[test]
    fn unipotent_leading_term(si in 0usize..8, raw in prop::collection::vec(1u64..=8, 12)) {
        with_setup(si, |s| {
            let d = s.calc.datum();
            let npos = d.positive_roots().count();
            let u = UnipotentData::new(d, raw[..npos].to_vec()).unwrap();
            let value = unipotent_expansion(s.calc.weyl(), &u);
            let (e, c) = value.leading().unwrap();
            prop_assert_eq!(e, u.total() as i64);
            prop_assert_eq!(c, (s.calc.weyl().order() as i64).into());
            // only J = I reaches the constant term
            let sign: i64 = if d.rank() % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(value.coeff(0), sign.into());
            Ok(())
        })?;
    }
}

#[test]
fn x_w_is_antidominant_sum() {
    for si in 0..SPECS.len() {
        with_setup(si, |s| {
            let g = s.calc.weyl();
            let d = s.calc.datum();
            for w in g.ids() {
                let x = x_w(g, w);
                assert!(x.0.iter().all(|&c| c <= 0));
                assert_eq!(x.0.iter().all(|&c| c == 0), w == g.identity());
                let height: i64 = x.0.iter().sum();
                assert!(-height >= 2 * g.length(w) as i64);
            }
            assert_eq!(x_w(g, g.longest()), d.two_rho().scaled(-2));
        });
    }
}

#[test]
fn unipotent_uniform_a2() {
    with_setup(1, |s| {
        let u = UnipotentData::uniform(s.calc.datum(), 2).unwrap();
        let expected = LaurentPoly::from_terms([(12, 6), (8, -6), (0, 1)]);
        assert_eq!(unipotent_expansion(s.calc.weyl(), &u), expected);
    });
}
