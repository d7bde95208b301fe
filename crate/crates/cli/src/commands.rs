use std::fs;
use std::path::{Path, PathBuf};

use ccm_core::axioms::{
    associativity_counterexample, cancellation_counterexample, commutativity_counterexample,
    mediality_counterexample,
};
use ccm_core::catalog::{
    self, classify_family, default_samples, half_has_no_inverse_check, monoid_formula_check, sampled_axiom_check,
    Family,
};
use ccm_core::internal::{double, negate};
use ccm_core::{
    classify, extract_group, finite_flags, generate_quasigroup, idempotent_parity_audit, idempotent_subalgebra,
    idempotents, internal_group, internal_monoid, invariant_factors, subalgebra_relation, transitivity_criterion,
    Check, Error, FiniteMagma,
};
use serde_json::{json, Value};

use crate::report::{sha256_hex, Report, Status};

/// A failure that ends the command with exit status 2.
pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub details: Value,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: "usage",
            message: message.into(),
            details: Value::Null,
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: "io",
            message: format!("{}: {e}", path.display()),
            details: Value::Null,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, details) = match &e {
            Error::Parse { .. } | Error::EmptyCarrier | Error::EntryOutOfRange { .. } => ("parse", Value::Null),
            Error::ElementOutOfRange { .. } => ("usage", Value::Null),
            Error::NotIdempotent(_) | Error::UnitNotIdempotent { .. } => ("unit-not-idempotent", Value::Null),
            Error::NotClosed { closure } => ("not-closed", json!({ "closure": closure })),
            Error::UnitNotInSubset(_) => ("unit-not-in-subset", Value::Null),
            Error::UnknownFamily { available, .. } => ("unknown-family", json!({ "available": available })),
            _ => ("internal", Value::Null),
        };
        Failure {
            code,
            message: e.to_string(),
            details,
        }
    }
}

pub type Outcome = Result<Status, Failure>;

fn load(report: &mut Report, path: &Path) -> Result<FiniteMagma, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::io(path, e))?;
    report.digest(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| Failure {
        code: "parse",
        message: format!("{}: not valid UTF-8", path.display()),
        details: Value::Null,
    })?;
    Ok(FiniteMagma::parse(&text)?)
}

fn in_range(m: &FiniteMagma, e: usize) -> Result<(), Failure> {
    if e < m.order() {
        Ok(())
    } else {
        Err(Failure::usage(format!("unit {e} is out of range for order {}", m.order())))
    }
}

/// Records M1–M3 and associativity; returns whether M1–M3 hold.
fn axiom_checks(report: &mut Report, m: &FiniteMagma) -> bool {
    let c = report.check("commutative", || witnessed(commutativity_counterexample(m)));
    let k = report.check("cancellative", || witnessed(cancellation_counterexample(m)));
    let d = report.check("medial", || witnessed(mediality_counterexample(m)));
    report.check("associative", || witnessed(associativity_counterexample(m)));
    c && k && d
}

fn witnessed<W>(counterexample: Option<W>) -> (bool, Option<W>) {
    (counterexample.is_none(), counterexample)
}

fn from_check<W>(c: Check<W>) -> (bool, Option<W>) {
    (c.holds, c.witness)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn check(report: &mut Report, path: &Path) -> Outcome {
    let m = load(report, path)?;
    let ccm = axiom_checks(report, &m);
    let ids = idempotents(&m);
    let subalgebra = if ccm { idempotent_subalgebra(&m).ok() } else { None };
    report.check("idempotent_parity", || (idempotent_parity_audit(&m), Some(ids.len())));
    report.result(json!({
        "order": m.order(),
        "ccm": ccm,
        "idempotents": ids,
        "idempotent_subalgebra": subalgebra,
    }));
    report.say(format!(
        "{}: order {}, ccm-magma: {}, idempotents {:?}",
        path.display(),
        m.order(),
        yes_no(ccm),
        ids
    ));
    Ok(if ccm { Status::Ok } else { Status::Violation })
}

/// Non-ccm input ends a command that needs M1–M3 with a violation.
fn require_ccm(report: &mut Report, m: &FiniteMagma) -> Option<Status> {
    if axiom_checks(report, m) {
        None
    } else {
        report.say("input is not a ccm-magma; see checks");
        Some(Status::Violation)
    }
}

pub fn classify_cmd(report: &mut Report, path: &Path, unit: usize) -> Outcome {
    let m = load(report, path)?;
    in_range(&m, unit)?;
    if let Some(s) = require_ccm(report, &m) {
        return Ok(s);
    }
    if m.op(unit, unit) != unit {
        return Err(Error::NotIdempotent(unit).into());
    }
    let flags = finite_flags(&m, unit)?;
    let label = classify(flags)?.label;
    report.check("expansive", || {
        let w = m.elements().find(|&a| double(&m, unit, a).is_none());
        (w.is_none(), w)
    });
    report.check("symmetric", || {
        let w = m.elements().find(|&a| negate(&m, unit, a).is_none());
        (w.is_none(), w)
    });
    let monoid = internal_monoid(&m, unit)?;
    let group = internal_group(&m, unit)?;
    report.check("monoid", || (monoid.is_some(), None::<()>));
    report.check("group", || (group.is_some(), None::<()>));
    report.label(label);
    report.result(json!({
        "unit": unit,
        "flags": flags,
        "label": label,
        "star": monoid.as_ref().map(|s| s.star_magma().rows()),
        "inverse": group.as_ref().map(|g| g.inverse().to_vec()),
    }));
    report.say(format!("{}: unit {unit}, flags {flags}, label {label}", path.display()));
    Ok(Status::Ok)
}

pub fn generate(report: &mut Report, order: usize, seed: u64, out: &Path) -> Outcome {
    if order == 0 {
        return Err(Failure::usage("--order must be at least 1"));
    }
    let (m, params) = generate_quasigroup(order, seed)?;
    let text = m.to_text();
    report.digest(text.as_bytes());
    fs::write(out, &text).map_err(|e| Failure::io(out, e))?;
    let sidecar = sidecar_path(out);
    let mut params_json = serde_json::to_string_pretty(&params).map_err(|e| Failure::usage(e.to_string()))?;
    params_json.push('\n');
    fs::write(&sidecar, params_json).map_err(|e| Failure::io(&sidecar, e))?;
    let round_trip = FiniteMagma::parse(&text)? == m;
    report.check("round_trip", || (round_trip, None::<()>));
    let ccm = axiom_checks(report, &m);
    report.result(json!({
        "order": order,
        "seed": seed,
        "table_sha256": sha256_hex(text.as_bytes()),
        "group_factors": params.group.factors(),
        "multipliers": params.multipliers,
        "translation": params.translation,
        "idempotents": idempotents(&m),
    }));
    report.say(format!(
        "wrote {} and {} (order {order}, group factors {:?})",
        out.display(),
        sidecar.display(),
        params.group.factors()
    ));
    Ok(if ccm && round_trip { Status::Ok } else { Status::Violation })
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".toyoda.json");
    PathBuf::from(s)
}

pub fn extract(report: &mut Report, path: &Path, unit: usize, out: Option<&Path>) -> Outcome {
    let m = load(report, path)?;
    in_range(&m, unit)?;
    if let Some(s) = require_ccm(report, &m) {
        return Ok(s);
    }
    if m.op(unit, unit) != unit {
        report.warn(format!("unit {unit} is not idempotent; the group is still defined"));
    }
    let group = extract_group(&m, unit)?;
    let Some(g) = group else {
        report.check("abelian_group", || (false, None::<()>));
        report.say("extracted table is not an abelian group");
        return Ok(Status::Violation);
    };
    report.check("abelian_group", || (true, None::<()>));
    let factors = invariant_factors(&g)?;
    if let Some(out) = out {
        fs::write(out, g.table.to_text()).map_err(|e| Failure::io(out, e))?;
    }
    report.result(json!({
        "unit": unit,
        "identity": g.identity,
        "order": g.order(),
        "invariant_factors": factors,
        "table": g.table.rows(),
    }));
    report.say(format!(
        "{}: group of order {} with identity {unit}, invariant factors {factors:?}",
        path.display(),
        g.order()
    ));
    Ok(Status::Ok)
}

pub fn parse_subset(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Failure::usage(format!("--subalgebra: '{t}' is not an element index")))
        })
        .collect()
}

pub fn relation(report: &mut Report, path: &Path, subset: &[usize], unit: usize) -> Outcome {
    let m = load(report, path)?;
    in_range(&m, unit)?;
    if let Some(s) = require_ccm(report, &m) {
        return Ok(s);
    }
    let sr = subalgebra_relation(&m, subset, unit)?;
    let r = &sr.relation;
    let internal = report.check("internal", || from_check(r.is_internal()));
    let reflexive = report.check("reflexive", || from_check(r.is_reflexive().expect("square")));
    let symmetric = report.check("symmetric", || from_check(r.is_symmetric().expect("square")));
    let transitive = report.check("transitive", || from_check(r.is_transitive().expect("square")));
    report.check("difunctional", || from_check(r.is_difunctional()));
    let congruence = internal && reflexive && symmetric && transitive;
    report.check("congruence", || (congruence, None::<()>));
    let criterion = transitivity_criterion(&m, subset, unit)?;
    report.check("transitivity_criterion_agrees", || {
        (criterion == transitive, Some(json!({ "criterion": criterion, "direct": transitive })))
    });
    let mut members: Vec<usize> = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    let classes = r.equivalence_classes();
    report.result(json!({
        "subalgebra": members,
        "unit": unit,
        "pairs": r.len(),
        "congruence": congruence,
        "classes": classes,
        "relation": m.elements().map(|a| m.elements().map(|b| u8::from(r.contains(a, b))).collect::<Vec<_>>()).collect::<Vec<_>>(),
    }));
    report.say(format!(
        "{}: X = {members:?}, e = {unit}, congruence: {}, {} classes",
        path.display(),
        yes_no(congruence),
        classes.as_ref().map_or(0, Vec::len)
    ));
    Ok(Status::Ok)
}

fn family_entry(f: &Family) -> Value {
    json!({
        "id": f.id,
        "formula": f.describe(),
        "domain": f.domain.to_string(),
        "mode": f.mode(),
        "unit": f.unit.as_ref().map(ToString::to_string),
        "expected_label": f.expected,
        "expected_associative": f.expected_associative,
    })
}

pub fn catalog_list(report: &mut Report) -> Outcome {
    let families: Vec<Value> = catalog::catalog().iter().map(family_entry).collect();
    report.digest(b"catalog");
    report.say(format!("{} families", families.len()));
    report.result(json!({ "families": families }));
    Ok(Status::Ok)
}

pub fn catalog_family(report: &mut Report, id: &str, steps: usize) -> Outcome {
    let f = catalog::lookup(id)?;
    report.digest(format!("{id}\n{steps}").as_bytes());
    let samples = default_samples(&f, steps);
    let s = sampled_axiom_check(&f, &samples)?;
    report.check("commutative", || from_check(s.commutative.clone()));
    report.check("cancellative", || from_check(s.cancellative.clone()));
    report.check("medial", || from_check(s.medial.clone()));
    report.check("associative", || from_check(s.associative.clone()));
    report.check("solver_round_trip", || (s.solver_mismatches == 0, Some(s.solver_mismatches)));
    report.check("closure", || (s.closure_violations == 0, Some(s.closure_violations)));
    report.check("non_degenerate", || (s.degenerate == 0, Some(s.degenerate)));
    let mut ok = s.axioms_hold();
    let classification = match &f.unit {
        Some(_) => {
            let c = classify_family(&f, &samples)?;
            report.label(c.label);
            if c.matches_expected == Some(false) {
                ok = false;
            }
            Some(c)
        }
        None => None,
    };
    if f.id == catalog::harmonic_unit_interval().id {
        let formula = monoid_formula_check(&samples)?;
        ok &= report.check("monoid_formula", || from_check(formula));
        ok &= report.check("half_has_no_inverse", || (half_has_no_inverse_check(), None::<()>));
    }
    report.result(json!({
        "family": family_entry(&f),
        "samples": s.samples,
        "sample_report": s,
        "classification": classification,
    }));
    let verdict = match &classification {
        Some(c) => format!(
            "label {} (expected {})",
            c.label,
            c.expected.map_or("none".to_string(), |l| l.to_string())
        ),
        None => "no unit, axioms only".to_string(),
    };
    report.say(format!(
        "{id}: {} on {}, {} samples, axioms {}, {verdict}",
        f.describe(),
        f.domain,
        s.samples,
        if s.axioms_hold() { "hold" } else { "fail" }
    ));
    Ok(if ok { Status::Ok } else { Status::Violation })
}
