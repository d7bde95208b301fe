mod common;

use ccm_core::fixtures::{self, affine};
use ccm_core::internal::{double, homogeneous_witness, is_homogeneous};
use ccm_core::{
    check_axioms, classify_finite, derived_magma, doubling_additivity_check, extract_group, generate_quasigroup,
    groups_isomorphic, idempotent_parity_audit, idempotent_subalgebra, idempotents, internal_group, internal_monoid,
    invariant_factors, is_ccm, is_homomorphism, monoid_isomorphism, pair_hom, weak_maltsev_p, FiniteMagma,
    GroupTable, Label,
};
use common::{hom, homomorphisms};
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn magma_and_element(max_order: usize) -> impl Strategy<Value = (FiniteMagma, usize, u64)> {
    (1..=max_order, any::<u64>()).prop_flat_map(|(n, seed)| {
        let (m, _) = generate_quasigroup(n, seed).unwrap();
        (Just(m), 0..n, Just(seed))
    })
}

fn rows_are_bijections(m: &FiniteMagma) -> bool {
    m.elements().all(|x| {
        let mut seen = vec![false; m.order()];
        m.row(x).iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_magmas_are_ccm(n in 1usize..=64, seed in any::<u64>()) {
        let (m, params) = generate_quasigroup(n, seed).unwrap();
        let report = check_axioms(&m);
        prop_assert!(report.is_ccm(), "{report:?}");
        prop_assert!(rows_are_bijections(&m));
        prop_assert!(m.elements().all(|x| m.elements().all(|y| m.op(x, y) == m.op(y, x))));
        prop_assert!(idempotent_parity_audit(&m));
        prop_assert_eq!(params.table().unwrap(), m);
    }

    #[test]
    fn generation_is_deterministic(n in 1usize..=32, seed in any::<u64>()) {
        prop_assert_eq!(generate_quasigroup(n, seed).unwrap(), generate_quasigroup(n, seed).unwrap());
    }

    #[test]
    fn idempotents_form_a_subalgebra((m, _, _) in magma_and_element(24)) {
        let ids = idempotent_subalgebra(&m).unwrap();
        for &x in &ids {
            for &y in &ids {
                prop_assert!(ids.contains(&m.op(x, y)));
            }
        }
    }

    #[test]
    fn extraction_recovers_generating_group(n in 1usize..=32, seed in any::<u64>(), e in any::<prop::sample::Index>()) {
        let (m, params) = generate_quasigroup(n, seed).unwrap();
        let e = e.index(n);
        let g = extract_group(&m, e).unwrap().expect("abelian group");
        prop_assert_eq!(g.identity, e);
        g.verify().unwrap();
        prop_assert!(groups_isomorphic(&g, &params.group.table()).unwrap());
        prop_assert_eq!(invariant_factors(&g).unwrap(), params.group.factors().to_vec());
    }

    #[test]
    fn extracted_groups_agree_across_units((m, e, _) in magma_and_element(20), other in any::<prop::sample::Index>()) {
        let e2 = other.index(m.order());
        let g1 = extract_group(&m, e).unwrap().unwrap();
        let g2 = extract_group(&m, e2).unwrap().unwrap();
        prop_assert!(groups_isomorphic(&g1, &g2).unwrap());
    }

    #[test]
    fn weak_maltsev_identities((m, _, _) in magma_and_element(16)) {
        for x in m.elements() {
            for y in m.elements() {
                prop_assert_eq!(weak_maltsev_p(&m, x, y, y), weak_maltsev_p(&m, y, y, x));
            }
        }
        for a in m.elements() {
            let images: Vec<usize> = m.elements().map(|x| weak_maltsev_p(&m, x, a, a)).collect();
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), images.len());
        }
    }

    #[test]
    fn finite_magmas_are_homogeneous((m, e, _) in magma_and_element(24), u in any::<prop::sample::Index>()) {
        prop_assert!(is_homogeneous(&m));
        // Doubling at any base point is a bijection.
        let images: Vec<usize> = m.elements().map(|a| double(&m, e, a).unwrap()).collect();
        let mut sorted = images.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, m.elements().collect::<Vec<_>>());
        let u = u.index(m.order());
        let v = (u + 1) % m.order();
        let w = homogeneous_witness(&m, e, u, v).unwrap();
        prop_assert_eq!(m.op(w, u), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn internal_monoid_matches_extraction_and_reconstruction(n in 1usize..=24, seed in any::<u64>()) {
        let (m, _) = generate_quasigroup(n, seed).unwrap();
        for e in idempotents(&m) {
            let monoid = internal_monoid(&m, e).unwrap().expect("finite ccm-magmas have internal monoids");
            monoid.verify().unwrap();
            let g = extract_group(&m, e).unwrap().unwrap();
            prop_assert_eq!(monoid.star_magma(), &g.table);
            GroupTable { table: monoid.star_magma().clone(), identity: e }.verify().unwrap();
            prop_assert!(internal_group(&m, e).unwrap().is_some());
            // Independent reconstruction: each θ with θ ⊕ e = x ⊕ y is unique.
            for x in m.elements() {
                for y in m.elements() {
                    let sols: Vec<usize> = m.elements().filter(|&t| m.op(t, e) == m.op(x, y)).collect();
                    prop_assert_eq!(sols, vec![monoid.star(x, y)]);
                }
            }
            // Doubling at an idempotent is an automorphism.
            let d = hom(&m, &m, m.elements().map(|a| double(&m, e, a).unwrap()).collect());
            prop_assert!(d.check().holds);
            prop_assert!(doubling_additivity_check(&m, e, e));
            prop_assert_eq!(classify_finite(&m, e).unwrap().label, Label::I);
        }
    }

    #[test]
    fn monoid_isomorphisms_compose_to_identity(n in 1usize..=27, seed in any::<u64>()) {
        let (m, _) = generate_quasigroup(n, seed).unwrap();
        let ids = idempotents(&m);
        for &u in &ids {
            for &v in &ids {
                let f = monoid_isomorphism(&m, u, v).unwrap();
                let g = monoid_isomorphism(&m, v, u).unwrap();
                for a in m.elements() {
                    prop_assert_eq!(g.apply(f.apply(a)), a);
                }
            }
        }
    }

    #[test]
    fn affine_mod_n_is_ccm_iff_slope_invertible(n in 1usize..=12, alpha in 0usize..12, beta in 0usize..12) {
        let (alpha, beta) = (alpha % n, beta % n);
        let m = affine(n, alpha, beta);
        let report = check_axioms(&m);
        let invertible = alpha.gcd(&n) == 1;
        prop_assert_eq!(report.is_ccm(), invertible);
        prop_assert!(report.commutative.holds && report.medial.holds);
        prop_assert_eq!(report.cancellative.witness.is_some(), !invertible);
    }
}

fn fixture_homs() -> Vec<(FiniteMagma, FiniteMagma, Vec<Vec<usize>>)> {
    let mags: Vec<FiniteMagma> = fixtures::all().into_iter().map(|(_, m)| m).collect();
    let mut out = Vec::new();
    for s in &mags {
        for t in &mags {
            let hs = homomorphisms(s, t);
            if !hs.is_empty() {
                out.push((s.clone(), t.clone(), hs));
            }
        }
    }
    out
}

#[test]
fn pair_hom_on_fixtures_is_homomorphism() {
    let all = fixture_homs();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tested = 0;
    for _ in 0..200 {
        let (s1, t, h1s) = &all[rng.random_range(0..all.len())];
        let partners: Vec<_> = all.iter().filter(|(_, t2, _)| t2 == t).collect();
        let (s2, _, h2s) = partners[rng.random_range(0..partners.len())];
        let f1 = hom(s1, t, h1s[rng.random_range(0..h1s.len())].clone());
        let f2 = hom(s2, t, h2s[rng.random_range(0..h2s.len())].clone());
        let p = pair_hom(&f1, &f2).unwrap();
        assert!(is_homomorphism(&p).holds);
        tested += 1;
    }
    assert_eq!(tested, 200);
}

#[test]
fn derived_magmas_of_injective_endomorphisms_are_ccm() {
    for (name, m) in fixtures::all() {
        if !is_ccm(&m) {
            continue;
        }
        for map in homomorphisms(&m, &m) {
            let g = hom(&m, &m, map);
            if !g.is_injective() {
                continue;
            }
            for a in m.elements() {
                let d = derived_magma(&m, &g, a).unwrap();
                assert!(is_ccm(&d), "{name}, a={a}");
            }
        }
    }
}

#[test]
fn fixture_invariants() {
    for (name, m) in fixtures::all() {
        assert!(is_ccm(&m), "{name}");
        assert!(rows_are_bijections(&m), "{name}");
        assert!(idempotent_parity_audit(&m), "{name}");
        for e in idempotents(&m) {
            assert_eq!(classify_finite(&m, e).unwrap().label, Label::I, "{name} at {e}");
        }
    }
}
