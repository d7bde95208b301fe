use serde::{Deserialize, Serialize};

use super::domain::{to_f64, Bound, Domain, Q};
use super::entries::harmonic_unit_interval;
use super::family::{Arith, ExactArith, Family, FloatArith, Formula, Mode, Value};
use super::formula::Diagonal;
use crate::classify::{classify, Label, PropertyFlags};
use crate::error::{Error, Result};
use crate::magma::Check;

/// Sampled axiom evidence for one family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub family: String,
    pub mode: Mode,
    pub samples: usize,
    pub commutative: Check<(String, String)>,
    /// Fails with `(x, y, a)` when distinct samples `x, y` give `x ⊕ a = y ⊕ a`.
    pub cancellative: Check<(String, String, String)>,
    pub medial: Check<(String, String, String, String)>,
    pub associative: Check<(String, String, String)>,
    /// Round trips `solve(a, x ⊕ a)` attempted, and those that reproduced
    /// neither `x` nor `x ⊕ a`.
    pub solver_checks: usize,
    pub solver_mismatches: usize,
    pub closure_violations: usize,
    pub degenerate: usize,
    /// Largest residual among comparisons that passed; zero in exact mode.
    pub worst_residual: f64,
    pub idempotents: IdempotentSummary,
}

impl SampleReport {
    /// M1, M2 and M3 on the samples, with closure and solver consistency.
    pub fn axioms_hold(&self) -> bool {
        self.commutative.holds
            && self.cancellative.holds
            && self.medial.holds
            && self.solver_mismatches == 0
            && self.closure_violations == 0
            && self.degenerate == 0
    }
}

/// Idempotents in the domain, from the closed form, and whether every sample
/// agreed with it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentSummary {
    pub every_element: bool,
    pub points: Vec<String>,
    pub samples_agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagEvidence {
    pub value: bool,
    pub sampled: bool,
    /// Verdict from the closed-form solver's image, where one is available.
    pub analytic: Option<bool>,
    pub witness: Option<String>,
}

impl FlagEvidence {
    fn new(sampled: Option<String>, analytic: Option<bool>) -> Self {
        let s = sampled.is_none();
        FlagEvidence {
            value: s && analytic.unwrap_or(true),
            sampled: s,
            analytic,
            witness: sampled,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyClassification {
    pub family: String,
    pub unit: String,
    pub flags: PropertyFlags,
    pub label: Label,
    pub expected: Option<Label>,
    pub matches_expected: Option<bool>,
    pub expansive: FlagEvidence,
    pub symmetric: FlagEvidence,
    pub monoid: FlagEvidence,
    /// Associativity of `x * y = 2_e(x ⊕ y)` on the witnesses, when it is
    /// defined on all of them.
    pub star_associative: Option<bool>,
}

/// Grid points of the domain (see [`super::Domain::grid`]) plus the unit.
pub fn default_samples(family: &Family, steps: usize) -> Vec<Q> {
    let mut pts = match &family.sample_window {
        Some((lo, hi)) => Domain {
            lo: Bound::Closed(lo.clone()),
            hi: Bound::Closed(hi.clone()),
            integral: family.domain.integral,
        }
        .grid(steps)
        .into_iter()
        .filter(|x| family.domain.contains(x))
        .collect(),
        None => family.domain.grid(steps),
    };
    if let Some(e) = &family.unit {
        if !pts.contains(e) {
            pts.push(e.clone());
            pts.sort();
        }
    }
    pts
}

fn check_samples(family: &Family, samples: &[Q]) -> Result<()> {
    if let Some(x) = samples.iter().find(|x| !family.domain.contains(x)) {
        return Err(Error::OutsideDomain {
            value: x.to_string(),
            domain: family.domain.to_string(),
        });
    }
    Ok(())
}

pub fn sampled_axiom_check(family: &Family, samples: &[Q]) -> Result<SampleReport> {
    check_samples(family, samples)?;
    let (diagonal, mut report) = match &family.formula {
        Formula::Exact(f) => {
            let a = ExactArith {
                formula: f,
                domain: &family.domain,
            };
            (f.diagonal(), sample_axioms(&a, samples.to_vec()))
        }
        Formula::Float(f) => {
            let a = FloatArith {
                formula: *f,
                domain: &family.domain,
            };
            let pts = samples.iter().map(to_f64).collect();
            (f.diagonal(), sample_axioms(&a, pts))
        }
    };
    let (every, points) = match diagonal {
        Diagonal::Everywhere => (true, vec![]),
        Diagonal::Points(p) => (
            false,
            p.into_iter().filter(|x| family.domain.contains(x)).collect::<Vec<_>>(),
        ),
    };
    let agree = samples.iter().all(|x| {
        let v = family.value(x);
        let idem = family.evaluate(&v, &v).map(|y| same_value(&y, &v)).unwrap_or(false);
        idem == (every || points.contains(x))
    });
    report.idempotents = IdempotentSummary {
        every_element: every,
        points: points.iter().map(ToString::to_string).collect(),
        samples_agree: agree,
    };
    report.family = family.id.clone();
    report.mode = family.mode();
    Ok(report)
}

fn same_value(x: &Value, y: &Value) -> bool {
    match (x, y) {
        (Value::Exact(a), Value::Exact(b)) => a == b,
        (Value::Float(a), Value::Float(b)) => (a - b).abs() <= super::family::FLOAT_TOLERANCE,
        _ => false,
    }
}

struct Tracker {
    worst: f64,
}

impl Tracker {
    fn eq<A: Arith>(&mut self, a: &A, x: &A::V, y: &A::V) -> bool {
        let same = a.same(x, y);
        if same {
            self.worst = self.worst.max(a.residual(x, y));
        }
        same
    }
}

fn sample_axioms<A: Arith>(a: &A, pts: Vec<A::V>) -> SampleReport {
    let n = pts.len();
    let mut t = Tracker { worst: 0.0 };
    let mut degenerate = 0;
    let mut closure_violations = 0;
    let mut table: Vec<Option<A::V>> = Vec::with_capacity(n * n);
    for x in &pts {
        for y in &pts {
            let v = a.op(x, y);
            match &v {
                None => degenerate += 1,
                Some(v) if !a.contains(v) => closure_violations += 1,
                _ => {}
            }
            table.push(v);
        }
    }
    let at = |i: usize, j: usize| table[i * n + j].as_ref();
    let s = |i: usize| a.show(&pts[i]);

    let mut commutative = None;
    'comm: for i in 0..n {
        for j in 0..n {
            if let (Some(u), Some(v)) = (at(i, j), at(j, i)) {
                if !t.eq(a, u, v) {
                    commutative = Some((s(i), s(j)));
                    break 'comm;
                }
            }
        }
    }

    let mut cancellative = None;
    'canc: for i in 0..n {
        for j in 0..n {
            if i == j || a.same(&pts[i], &pts[j]) {
                continue;
            }
            for k in 0..n {
                if let (Some(u), Some(v)) = (at(i, k), at(j, k)) {
                    if a.same(u, v) {
                        cancellative = Some((s(i), s(j), s(k)));
                        break 'canc;
                    }
                }
            }
        }
    }

    let mut solver_checks = 0;
    let mut solver_mismatches = 0;
    for i in 0..n {
        for k in 0..n {
            if let Some(b) = at(i, k).filter(|b| a.contains(b)) {
                solver_checks += 1;
                // Cube-root inverses lose precision near 0, so a solution is
                // also accepted when it reproduces `b` within tolerance.
                match a.solve(&pts[k], b) {
                    Some(x) if t.eq(a, &x, &pts[i]) => {}
                    Some(x) if a.op(&x, &pts[k]).is_some_and(|y| a.same(&y, b)) => {}
                    _ => solver_mismatches += 1,
                }
            }
        }
    }

    let mut medial = None;
    'med: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let (Some(ab), Some(cd), Some(ac), Some(bd)) = (at(i, j), at(k, l), at(i, k), at(j, l))
                    else {
                        continue;
                    };
                    let lhs = a.op(ab, cd);
                    let rhs = a.op(ac, bd);
                    if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
                        if !t.eq(a, &lhs, &rhs) {
                            medial = Some((s(i), s(j), s(k), s(l)));
                            break 'med;
                        }
                    }
                }
            }
        }
    }

    let mut associative = None;
    'assoc: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (Some(ab), Some(bc)) = (at(i, j), at(j, k)) else {
                    continue;
                };
                if let (Some(lhs), Some(rhs)) = (a.op(ab, &pts[k]), a.op(&pts[i], bc)) {
                    if !a.same(&lhs, &rhs) {
                        associative = Some((s(i), s(j), s(k)));
                        break 'assoc;
                    }
                }
            }
        }
    }

    SampleReport {
        family: String::new(),
        mode: Mode::Exact,
        samples: n,
        commutative: Check::from_counterexample(commutative),
        cancellative: Check::from_counterexample(cancellative),
        medial: Check::from_counterexample(medial),
        associative: Check::from_counterexample(associative),
        solver_checks,
        solver_mismatches,
        closure_violations,
        degenerate,
        worst_residual: t.worst,
        idempotents: IdempotentSummary {
            every_element: false,
            points: vec![],
            samples_agree: true,
        },
    }
}

struct Sampled {
    expansive: Option<String>,
    symmetric: Option<String>,
    monoid: Option<String>,
    star_associative: Option<bool>,
}

fn sample_flags<A: Arith>(a: &A, e: &A::V, pts: &[A::V]) -> Sampled {
    let s = |v: &A::V| a.show(v);
    let expansive = pts.iter().find(|x| a.solve(e, x).is_none()).map(s);
    let symmetric = pts.iter().find(|x| a.solve(x, e).is_none()).map(s);
    let star = |x: &A::V, y: &A::V| a.op(x, y).and_then(|v| a.solve(e, &v));
    let monoid = pts
        .iter()
        .flat_map(|x| pts.iter().map(move |y| (x, y)))
        .find(|(x, y)| star(x, y).is_none())
        .map(|(x, y)| format!("({}, {})", s(x), s(y)));
    let star_associative = if monoid.is_some() {
        None
    } else {
        let mut verdict = Some(true);
        'outer: for x in pts {
            for y in pts {
                for z in pts {
                    let lhs = star(x, y).and_then(|xy| star(&xy, z));
                    let rhs = star(y, z).and_then(|yz| star(x, &yz));
                    match (lhs, rhs) {
                        (Some(l), Some(r)) if a.same_derived(&l, &r) => {}
                        (Some(_), Some(_)) => {
                            verdict = Some(false);
                            break 'outer;
                        }
                        _ => {
                            verdict = None;
                            break 'outer;
                        }
                    }
                }
            }
        }
        verdict
    };
    Sampled {
        expansive,
        symmetric,
        monoid,
        star_associative,
    }
}

/// Flags at the family's unit from witnesses and, for rational formulas,
/// from the image of the closed-form doubling and negation maps.
pub fn classify_family(family: &Family, witnesses: &[Q]) -> Result<FamilyClassification> {
    let e = family
        .unit
        .clone()
        .ok_or_else(|| Error::MissingUnit(family.id.clone()))?;
    let ev = family.value(&e);
    let idempotent = family.domain.contains(&e)
        && family
            .evaluate(&ev, &ev)
            .map(|v| same_value(&v, &ev))
            .unwrap_or(false);
    if !idempotent {
        return Err(Error::UnitNotIdempotent {
            family: family.id.clone(),
            unit: e.to_string(),
        });
    }
    check_samples(family, witnesses)?;
    let (sampled, expansive_analytic, symmetric_analytic) = match &family.formula {
        Formula::Exact(f) => {
            let a = ExactArith {
                formula: f,
                domain: &family.domain,
            };
            let exp = f.doubling_map(&e).and_then(|m| m.maps_into(&family.domain));
            let sym = f.negation_map(&e).and_then(|m| m.maps_into(&family.domain));
            (sample_flags(&a, &e, witnesses), exp, sym)
        }
        Formula::Float(f) => {
            let a = FloatArith {
                formula: *f,
                domain: &family.domain,
            };
            let pts: Vec<f64> = witnesses.iter().map(to_f64).collect();
            (sample_flags(&a, &to_f64(&e), &pts), None, None)
        }
    };
    let expansive = FlagEvidence::new(sampled.expansive, expansive_analytic);
    let symmetric = FlagEvidence::new(sampled.symmetric, symmetric_analytic);
    // A total doubling map makes every θ = 2_e(x ⊕ y) exist.
    let monoid_analytic = (expansive_analytic == Some(true)).then_some(true);
    let monoid = FlagEvidence::new(sampled.monoid, monoid_analytic);
    let flags = PropertyFlags {
        expansive: expansive.value,
        symmetric: symmetric.value,
        monoid: monoid.value,
        group: monoid.value && symmetric.value,
    };
    let label = classify(flags)?.label;
    Ok(FamilyClassification {
        family: family.id.clone(),
        unit: e.to_string(),
        flags,
        label,
        expected: family.expected,
        matches_expected: family.expected.map(|x| x == label),
        expansive,
        symmetric,
        monoid,
        star_associative: sampled.star_associative,
    })
}

/// For the harmonic family on `]0, 1]` with unit 1, compares the internal
/// monoid `θ` with `θ ⊕ 1 = x ⊕ y` against `xy / (x + y - xy)` on all pairs.
pub fn monoid_formula_check(samples: &[Q]) -> Result<Check<(String, String)>> {
    let h = harmonic_unit_interval();
    check_samples(&h, samples)?;
    let one = h.value(&Q::from_integer(1.into()));
    for x in samples {
        for y in samples {
            let v = h.evaluate(&h.value(x), &h.value(y))?;
            let theta = h.solve_left(&one, &v)?;
            let closed = x * y / (x + y - x * y);
            if theta != Some(Value::Exact(closed)) {
                return Ok(Check::fail((x.to_string(), y.to_string())));
            }
        }
    }
    Ok(Check::pass())
}

/// In the monoid above, `1/2` has no inverse while `1` does. Checked both
/// through the magma (`x ⊕ c = 1 ⊕ 1` has no solution for `c = 1/2`) and
/// through the closed form `m(x, c) = 1 ⟺ x (2c - 1) = c`.
pub fn half_has_no_inverse_check() -> bool {
    let h = harmonic_unit_interval();
    let one = Q::from_integer(1.into());
    let half = Q::new(1.into(), 2.into());
    let inverse_via_magma = |c: &Q| h.solve_left(&h.value(c), &h.value(&one)).ok().flatten();
    let inverse_closed_form = |c: &Q| {
        let coeff = c * Q::from_integer(2.into()) - &one;
        if coeff == Q::from_integer(0.into()) {
            None
        } else {
            Some(c / coeff).filter(|x| h.domain.contains(x))
        }
    };
    inverse_via_magma(&half).is_none()
        && inverse_closed_form(&half).is_none()
        && inverse_via_magma(&one) == Some(Value::Exact(one.clone()))
        && inverse_closed_form(&one) == Some(one.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::domain::{q, qi};
    use crate::catalog::entries::{lookup, midpoint_unit_interval};
    use crate::catalog::formula::FloatFormula;

    #[test]
    fn harmonic_samples_exact() {
        let h = harmonic_unit_interval();
        let pts: Vec<Q> = (1..=8).map(|k| q(k, 8)).collect();
        let r = sampled_axiom_check(&h, &pts).unwrap();
        assert!(r.axioms_hold(), "{r:?}");
        assert_eq!(r.worst_residual, 0.0);
        assert!(r.idempotents.every_element);
        assert!(!r.associative.holds);
    }

    #[test]
    fn midpoint_samples() {
        let pts: Vec<Q> = (0..=4).map(|k| q(k, 4)).collect();
        let r = sampled_axiom_check(&midpoint_unit_interval(), &pts).unwrap();
        assert!(r.axioms_hold());
    }

    #[test]
    fn geometric_mean_float() {
        let f = Family {
            id: "g".into(),
            formula: Formula::Float(FloatFormula::Geometric),
            domain: Domain::new(Bound::Open(qi(0)), Bound::Open(qi(1))),
            unit: None,
            expected: None,
            expected_associative: None,
            sample_window: None,
        };
        let pts: Vec<Q> = (1..=16).map(|k| q(k, 17)).collect();
        let r = sampled_axiom_check(&f, &pts).unwrap();
        assert!(r.axioms_hold(), "{r:?}");
        assert!(r.worst_residual <= 1e-9);
    }

    #[test]
    fn labels_for_spec_examples() {
        for (id, label) in [
            ("harmonic-(0,1]", Label::II),
            ("midpoint-[0,1]", Label::III),
            ("doubling-Z", Label::VI),
            ("doubling-N0", Label::V),
        ] {
            let f = lookup(id).unwrap();
            let c = classify_family(&f, &default_samples(&f, 16)).unwrap();
            assert_eq!(c.label, label, "{id}: {c:?}");
        }
    }

    #[test]
    fn midpoint_expansive_witness() {
        let f = midpoint_unit_interval();
        let c = classify_family(&f, &default_samples(&f, 4)).unwrap();
        assert_eq!(c.expansive.analytic, Some(false));
        assert_eq!(c.expansive.witness.as_deref(), Some("0"));
    }

    #[test]
    fn monoid_formula() {
        let pts: Vec<Q> = (1..=8).map(|k| q(k, 8)).collect();
        assert!(monoid_formula_check(&pts).unwrap().holds);
        assert!(half_has_no_inverse_check());
    }

    #[test]
    fn non_idempotent_unit_rejected() {
        let mut f = midpoint_unit_interval();
        f.formula = Formula::Exact(super::super::formula::ExactFormula::Affine {
            alpha: q(1, 3),
            beta: qi(0),
        });
        assert!(matches!(
            classify_family(&f, &[qi(0)]),
            Err(Error::UnitNotIdempotent { .. })
        ));
        f.unit = None;
        assert!(matches!(classify_family(&f, &[qi(0)]), Err(Error::MissingUnit(_))));
    }
}
