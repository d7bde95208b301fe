use ccm_core::catalog::{
    catalog, classify_family, default_samples, lookup, q, qi, sampled_axiom_check, Mode, Value, Q,
};
use ccm_core::{Error, Label};
use proptest::prelude::*;

#[test]
fn every_family_satisfies_axioms_on_samples() {
    for f in catalog() {
        let r = sampled_axiom_check(&f, &default_samples(&f, 16)).unwrap();
        assert!(r.samples >= 5, "{}: only {} samples", f.id, r.samples);
        assert!(r.axioms_hold(), "{}: {r:?}", f.id);
        assert!(r.idempotents.samples_agree, "{}", f.id);
        if let Some(a) = f.expected_associative {
            assert_eq!(r.associative.holds, a, "{}: {:?}", f.id, r.associative);
        }
        if f.mode() == Mode::Float {
            assert!(r.worst_residual <= 1e-9, "{}", f.id);
        }
    }
}

#[test]
fn every_unit_classifies_as_expected() {
    let mut seen = Vec::new();
    for f in catalog() {
        if f.unit.is_none() {
            continue;
        }
        let c = classify_family(&f, &default_samples(&f, 16)).unwrap();
        assert_eq!(c.matches_expected, Some(true), "{}: {c:?}", f.id);
        seen.push(c.label);
        if c.monoid.value {
            assert_eq!(c.star_associative, Some(true), "{}", f.id);
        }
        // Sampled and analytic verdicts never contradict each other.
        for ev in [&c.expansive, &c.symmetric] {
            if let Some(a) = ev.analytic {
                assert!(a || !ev.value, "{}", f.id);
                if a {
                    assert!(ev.sampled, "{}: {ev:?}", f.id);
                }
            }
        }
    }
    for l in [Label::I, Label::II, Label::III, Label::IV, Label::V, Label::VI] {
        assert!(seen.contains(&l), "no family with label {l:?}");
    }
}

#[test]
fn idempotent_free_families_report_no_points() {
    for f in catalog().into_iter().filter(|f| f.unit.is_none() && f.id != "geometric-(0,1)") {
        let r = sampled_axiom_check(&f, &default_samples(&f, 8)).unwrap();
        assert!(!r.idempotents.every_element, "{}", f.id);
        assert!(r.idempotents.points.is_empty(), "{}: {:?}", f.id, r.idempotents.points);
    }
}

#[test]
fn bad_unit_and_bad_samples() {
    let mut f = lookup("third-[0,1]").unwrap();
    f.unit = Some(q(1, 2));
    assert!(matches!(
        classify_family(&f, &[qi(0)]),
        Err(Error::UnitNotIdempotent { .. })
    ));
    let f = lookup("harmonic-(0,1]").unwrap();
    assert!(matches!(
        sampled_axiom_check(&f, &[qi(2)]),
        Err(Error::OutsideDomain { .. })
    ));
}

fn unit_interval_point() -> impl Strategy<Value = Q> {
    (1i64..=64).prop_map(|k| q(k, 64))
}

proptest! {
    // In the harmonic family every left division that lands in the domain
    // inverts the operation exactly.
    #[test]
    fn harmonic_solve_inverts(x in unit_interval_point(), a in unit_interval_point()) {
        let f = lookup("harmonic-(0,1]").unwrap();
        let b = f.evaluate(&Value::Exact(x.clone()), &Value::Exact(a.clone())).unwrap();
        prop_assert_eq!(f.solve_left(&Value::Exact(a), &b).unwrap(), Some(Value::Exact(x)));
    }

    // Affine operations over the rationals satisfy the axioms for any
    // non-zero slope.
    #[test]
    fn rational_affine_axioms(n in 1i64..6, d in 1i64..6, neg in any::<bool>(), b in -3i64..=3) {
        let alpha = if neg { -n } else { n };
        let f = lookup(&format!("affine-Q:{alpha}/{d},{b}")).unwrap();
        let r = sampled_axiom_check(&f, &default_samples(&f, 6)).unwrap();
        prop_assert!(r.axioms_hold());
        prop_assert_eq!(r.associative.holds, alpha == d);
    }
}
