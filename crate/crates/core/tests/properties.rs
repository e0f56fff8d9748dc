use std::collections::BTreeSet;

use proptest::prelude::*;

use evencox::coxeter::{enumerate_ball, CoxeterGroup, Gen, GenSet};
use evencox::davis::BallComplex;
use evencox::fixtures;
use evencox::homology::{homology, ChainComplex, Simplex};
use evencox::ruins::ColorMap;

fn group(text: &str) -> CoxeterGroup {
    CoxeterGroup::new(fixtures::load(text))
}

fn words(rank: usize, max: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(0..rank as Gen, 0..=max)
}

fn systems() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec![fixtures::SYS_A, fixtures::SYS_B, fixtures::SYS_D, fixtures::SYS_F])
}

fn system_and_words(n: usize, max: usize) -> impl Strategy<Value = (&'static str, Vec<Vec<Gen>>)> {
    systems().prop_flat_map(move |text| {
        let rank = fixtures::load(text).rank();
        (Just(text), prop::collection::vec(words(rank, max), n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent((text, w) in system_and_words(1, 14)) {
        let g = group(text);
        let e = g.normal_form(&w[0]);
        prop_assert!(g.is_reduced(e.word()));
        prop_assert_eq!(g.normal_form(e.word()), e.clone());
        prop_assert!(e.len() <= w[0].len() && (w[0].len() - e.len()).is_multiple_of(2));
    }

    #[test]
    fn multiplication_is_associative((text, w) in system_and_words(3, 8)) {
        let g = group(text);
        let [a, b, c] = [0, 1, 2].map(|i| g.normal_form(&w[i]));
        prop_assert_eq!(g.multiply(&g.multiply(&a, &b), &c), g.multiply(&a, &g.multiply(&b, &c)));
    }

    #[test]
    fn inverses_cancel((text, w) in system_and_words(1, 12)) {
        let g = group(text);
        let e = g.normal_form(&w[0]);
        let inv = g.inverse(&e);
        prop_assert!(g.multiply(&e, &inv).is_identity());
        prop_assert!(g.multiply(&inv, &e).is_identity());
        prop_assert_eq!(inv.len(), e.len());
    }

    #[test]
    fn reduced_words_form_one_braid_class((text, w) in system_and_words(1, 9)) {
        let g = group(text);
        let e = g.normal_form(&w[0]);
        let all = g.reduced_words(&e);
        prop_assert!(all.contains(e.word()));
        for v in all.iter() {
            prop_assert_eq!(v.len(), e.len());
            prop_assert_eq!(g.from_reduced(v), e.clone());
        }
        let mut braid = g.braid_class(e.word());
        braid.sort();
        let mut sorted = all.to_vec();
        sorted.sort();
        prop_assert_eq!(braid, sorted);
    }

    #[test]
    fn exchange_condition((text, w) in system_and_words(1, 10), s in 0..4u8) {
        let g = group(text);
        let s = s % g.rank() as Gen;
        let e = g.normal_form(&w[0]);
        let es = g.mul_gen(&e, s);
        if es.len() < e.len() {
            prop_assert!(g.has_right_descent(&e, s));
            let hit = (0..e.len()).any(|i| {
                let mut v = e.word().to_vec();
                v.remove(i);
                g.normal_form(&v) == es
            });
            prop_assert!(hit);
        } else {
            prop_assert_eq!(es.len(), e.len() + 1);
        }
    }

    #[test]
    fn deletion_is_a_homomorphism((text, w) in system_and_words(2, 10), mask in 0u32..256) {
        let g = group(text);
        if !g.is_even() {
            return Ok(());
        }
        let t = GenSet::from_gens((0..g.rank() as Gen).filter(|i| mask & (1 << i) != 0));
        let all = g.matrix().all();
        let a = g.normal_form(&w[0]);
        let c = g.normal_form(&w[1]);
        let lhs = g.g_vt(&g.multiply(&a, &c), all, t).unwrap();
        let rhs = g.multiply(&g.g_vt(&a, all, t).unwrap(), &g.g_vt(&c, all, t).unwrap());
        prop_assert_eq!(lhs, rhs);
        let raw: Vec<Gen> = w[0].iter().copied().filter(|&x| t.contains(x)).collect();
        prop_assert_eq!(g.g_vt(&a, all, t).unwrap(), g.normal_form(&raw));
    }

    #[test]
    fn parity_is_well_defined((text, w) in system_and_words(1, 12), t in 0..4u8) {
        let g = group(text);
        if !g.is_even() {
            return Ok(());
        }
        let t = t % g.rank() as Gen;
        let e = g.normal_form(&w[0]);
        let raw = w[0].iter().filter(|&&x| x == t).count();
        prop_assert_eq!(e.count(t) % 2, raw % 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn colors_ignore_the_expression(w in words(3, 8), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let m = fixtures::load(fixtures::SYS_B);
        let g = CoxeterGroup::new(m.clone());
        let b = BallComplex::new(&m, 8);
        let map = ColorMap::new(&b, 0).unwrap();
        let e = g.normal_form(&w);
        let expressions = g.reduced_words(&e);
        let canonical = map.color(e.word());
        for pick in picks {
            prop_assert_eq!(map.color(pick.get(&expressions)), canonical.clone());
        }
        prop_assert_eq!(map.color(&w), canonical);
    }

    #[test]
    fn balls_grow_monotonically(text in systems(), r in 0usize..5) {
        let m = fixtures::load(text);
        let small = enumerate_ball(&m, r);
        let big = enumerate_ball(&m, r + 1);
        prop_assert!(small.len() <= big.len());
        prop_assert_eq!(&big.elements()[..small.len()], small.elements());
        let sizes = small.layer_sizes();
        prop_assert_eq!(&big.layer_sizes()[..sizes.len()], &sizes[..]);
        prop_assert_eq!(sizes.iter().sum::<usize>(), small.len());
    }

    #[test]
    fn random_complexes_have_nilpotent_boundary(
        facets in prop::collection::vec(prop::collection::btree_set(0u32..7, 1..=4), 1..8)
    ) {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for f in &facets {
            let f: Vec<u32> = f.iter().copied().collect();
            for mask in 1u32..(1 << f.len()) {
                all.insert(f.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect());
            }
        }
        let x = ChainComplex::from_simplices(all.iter().cloned()).unwrap();
        prop_assert!(x.boundary_squares_to_zero());
        let h = homology(&x);
        let alt: i64 = x.dims().iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        prop_assert_eq!(h.euler_characteristic(), alt);
        prop_assert!(h.betti[0] >= 1);
    }
}
