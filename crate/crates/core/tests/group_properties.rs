use std::sync::Arc;

use proptest::prelude::*;

use stcalc_core::hecke::{direct_sum, steinberg_module, trace_word, trivial_module};
use stcalc_core::{AffineElt, AffineWeylGroup, DatumSpec, HeckeAlgebra, NodeSet, WeylGroup};

const SPECS: &[&str] = &["A2", "A3:adjoint", "B2:adjoint", "B3", "C3:adjoint", "G2", "D4:adjoint"];

fn weyl(spec: &str) -> Arc<WeylGroup> {
    let d = spec.parse::<DatumSpec>().unwrap().build().unwrap();
    Arc::new(WeylGroup::enumerate(Arc::new(d)).unwrap())
}

thread_local! {
    static GROUPS: Vec<Arc<AffineWeylGroup>> =
        SPECS.iter().map(|s| Arc::new(AffineWeylGroup::new(weyl(s)).unwrap())).collect();
}

fn group(i: usize) -> Arc<AffineWeylGroup> {
    GROUPS.with(|g| g[i % g.len()].clone())
}

fn elt(g: &AffineWeylGroup, word: &[usize], omega: usize) -> AffineElt {
    let k = g.num_generators();
    let w: Vec<usize> = word.iter().map(|x| x % k).collect();
    g.compose(&w, omega % g.omega().len())
}

fn word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..8, 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn finite_length_symmetries(gi in 0usize..7, w in word(), i in 0usize..4) {
        let g = group(gi);
        let wg = g.weyl();
        let r = wg.rank();
        let letters: Vec<usize> = w.iter().map(|x| x % r).collect();
        let x = wg.from_word(&letters).unwrap();
        prop_assert_eq!(wg.length(x), wg.length(wg.inverse(x)));
        let s = i % r;
        let sx = wg.left_mul(s, x);
        prop_assert_eq!(wg.length(sx).abs_diff(wg.length(x)), 1);
        prop_assert_eq!(wg.ascent_set(x).contains(s), wg.length(sx) > wg.length(x));
        let lw0 = wg.length(wg.longest());
        prop_assert_eq!(wg.length(wg.mul(x, wg.longest())), lw0 - wg.length(x));
    }

    #[test]
    fn parabolic_factorization(gi in 0usize..7, w in word(), mask in 0u32..16) {
        let g = group(gi);
        let wg = g.weyl();
        let r = wg.rank();
        let j = NodeSet(mask & ((1 << r) - 1));
        let letters: Vec<usize> = w.iter().map(|x| x % r).collect();
        let x = wg.from_word(&letters).unwrap();
        let reps = wg.min_coset_reps(j);
        let sub = wg.parabolic_subgroup(j);
        let hits: Vec<_> = sub
            .iter()
            .flat_map(|&u| reps.iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| wg.mul(u, v) == x)
            .collect();
        prop_assert_eq!(hits.len(), 1);
        let (u, v) = hits[0];
        prop_assert_eq!(wg.length(x), wg.length(u) + wg.length(v));
        prop_assert!(j.is_subset_of(wg.ascent_set(v)));
    }

    #[test]
    fn affine_group_axioms(gi in 0usize..7, a in word(), b in word(), c in word(), oa in 0usize..4, ob in 0usize..4) {
        let g = group(gi);
        let (x, y, z) = (elt(&g, &a, oa), elt(&g, &b, ob), elt(&g, &c, 0));
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
        prop_assert_eq!(g.im_length(&x), g.im_length(&g.inverse(&x)));
        let l = g.im_length(&g.mul(&x, &y));
        prop_assert!(l <= g.im_length(&x) + g.im_length(&y));
    }

    #[test]
    fn decomposition_is_reduced(gi in 0usize..7, a in word(), oa in 0usize..4) {
        let g = group(gi);
        let x = elt(&g, &a, oa);
        let dec = g.decompose(&x);
        prop_assert_eq!(dec.word.len(), g.im_length(&x));
        prop_assert_eq!(g.compose(&dec.word, dec.omega), x.clone());
        prop_assert_eq!(g.parse(&g.format(&x)).unwrap(), x);
    }

    #[test]
    fn generator_steps_change_length_by_one(gi in 0usize..7, a in word(), k in 0usize..8) {
        let g = group(gi);
        let x = elt(&g, &a, 0);
        let k = k % g.num_generators();
        let sx = g.left_mul_generator(k, &x);
        prop_assert_eq!(g.im_length(&sx).abs_diff(g.im_length(&x)), 1);
    }

    #[test]
    fn braid_moves_preserve_elements_and_traces(gi in 0usize..7, a in word(), oa in 0usize..4) {
        let g = group(gi);
        let x = elt(&g, &a, oa);
        let dec = g.decompose(&x);
        let h = HeckeAlgebra::new(g.clone());
        let m = direct_sum(&steinberg_module(&g), &trivial_module(&g));
        let tx = h.mul_basis(&g.compose(&dec.word, 0), &g.omega()[dec.omega]);
        let mut current = dec.word.clone();
        for _ in 0..4 {
            let Some(next) = g.braid_move(&current) else { break };
            prop_assert_eq!(next.len(), current.len());
            prop_assert_eq!(g.compose(&next, dec.omega), x.clone());
            prop_assert_eq!(trace_word(&next, dec.omega, &m), trace_word(&dec.word, dec.omega, &m));
            let mut t = h.one();
            for &k in next.iter().rev() {
                t = h.left_mul_generator(k, &t);
            }
            let t = h.mul(&t, &stcalc_core::HeckeElt::basis(g.omega()[dec.omega].clone()));
            prop_assert_eq!(&t, &tx);
            current = next;
        }
    }
}
