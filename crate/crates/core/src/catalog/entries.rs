use std::str::FromStr;

use num_traits::Zero;

use super::domain::{q, qi, Bound, Domain, Q};
use super::family::{Family, Formula};
use super::formula::{Diagonal, ExactFormula, FloatFormula};
use crate::classify::Label;
use crate::error::{Error, Result};

fn closed(lo: Q, hi: Q) -> Domain {
    Domain::new(Bound::Closed(lo), Bound::Closed(hi))
}

fn half_open_left(lo: Q, hi: Q) -> Domain {
    Domain::new(Bound::Open(lo), Bound::Closed(hi))
}

fn affine(alpha: Q, beta: Q) -> Formula {
    Formula::Exact(ExactFormula::Affine { alpha, beta })
}

fn harmonic(k: i64) -> Formula {
    Formula::Exact(ExactFormula::Harmonic { k: qi(k) })
}

fn bilinear(s: i64) -> Formula {
    Formula::Exact(ExactFormula::Bilinear { s: qi(s) })
}

struct Entry {
    id: &'static str,
    formula: Formula,
    domain: Domain,
    unit: Option<Q>,
    expected: Option<Label>,
    associative: bool,
}

impl From<Entry> for Family {
    fn from(e: Entry) -> Family {
        Family {
            id: e.id.to_string(),
            formula: e.formula,
            domain: e.domain,
            unit: e.unit,
            expected: e.expected,
            expected_associative: Some(e.associative),
            sample_window: None,
        }
    }
}

fn entry(
    id: &'static str,
    formula: Formula,
    domain: Domain,
    unit: Option<Q>,
    expected: Option<Label>,
    associative: bool,
) -> Family {
    Entry {
        id,
        formula,
        domain,
        unit,
        expected,
        associative,
    }
    .into()
}

/// `2xy / (x + y)` on `]0, 1]` with unit 1.
pub fn harmonic_unit_interval() -> Family {
    entry(
        "harmonic-(0,1]",
        harmonic(2),
        half_open_left(qi(0), qi(1)),
        Some(qi(1)),
        Some(Label::II),
        false,
    )
}

/// `(x + y) / 2` on `[0, 1]` with unit 1/2.
pub fn midpoint_unit_interval() -> Family {
    entry(
        "midpoint-[0,1]",
        affine(q(1, 2), qi(0)),
        closed(qi(0), qi(1)),
        Some(q(1, 2)),
        Some(Label::III),
        false,
    )
}

/// Every cataloged family. Midpoint algebras on `]0, ∞[` have no preferred
/// unit; they are classified at 1, where the verdict is the same as at any
/// other point.
pub fn catalog() -> Vec<Family> {
    let half = || q(1, 2);
    let third = || q(1, 3);
    let float = |f| Formula::Float(f);
    let mut logsumexp = entry(
        "logsumexp-R",
        float(FloatFormula::LogSumExp),
        Domain::reals(),
        None,
        None,
        true,
    );
    logsumexp.sample_window = Some((qi(-10), qi(10)));
    vec![
        // Midpoint algebras.
        entry("mean-R", affine(half(), qi(0)), Domain::reals(), Some(qi(0)), Some(Label::I), false),
        entry("cubic-mean-R", float(FloatFormula::CubicMean), Domain::reals(), Some(qi(0)), Some(Label::I), false),
        entry("mean-[0,inf)", affine(half(), qi(0)), Domain::non_negative(), Some(qi(0)), Some(Label::II), false),
        harmonic_unit_interval(),
        midpoint_unit_interval(),
        entry(
            "harmonic-(1,inf)",
            harmonic(2),
            Domain::new(Bound::Open(qi(1)), Bound::Unbounded),
            Some(qi(2)),
            Some(Label::III),
            false,
        ),
        entry("mean-R+", affine(half(), qi(0)), Domain::positive(), Some(qi(1)), Some(Label::IV), false),
        entry("harmonic-R+", harmonic(2), Domain::positive(), Some(qi(1)), Some(Label::IV), false),
        // Idempotents present, not every element idempotent.
        entry("doubling-R", affine(qi(2), qi(0)), Domain::reals(), Some(qi(0)), Some(Label::I), false),
        entry("cubic-doubling-R", float(FloatFormula::CubicDouble), Domain::reals(), Some(qi(0)), Some(Label::I), false),
        entry("doubling-[0,inf)", affine(qi(2), qi(0)), Domain::non_negative(), Some(qi(0)), Some(Label::II), false),
        entry("third-[-1,1]", affine(third(), qi(0)), closed(qi(-1), qi(1)), Some(qi(0)), Some(Label::III), false),
        entry("third-[0,1]", affine(third(), qi(0)), closed(qi(0), qi(1)), Some(qi(0)), Some(Label::IV), false),
        entry("doubling-N0", affine(qi(2), qi(0)), Domain::naturals(), Some(qi(0)), Some(Label::V), false),
        entry("doubling-Z", affine(qi(2), qi(0)), Domain::integers(), Some(qi(0)), Some(Label::VI), false),
        entry("sum-R", affine(qi(1), qi(0)), Domain::reals(), Some(qi(0)), Some(Label::I), true),
        entry("sum-[0,inf)", affine(qi(1), qi(0)), Domain::non_negative(), Some(qi(0)), Some(Label::II), true),
        entry(
            "probabilistic-sum-[0,1)",
            bilinear(-1),
            Domain::new(Bound::Closed(qi(0)), Bound::Open(qi(1))),
            Some(qi(0)),
            Some(Label::II),
            true,
        ),
        // No idempotents.
        entry("mean-plus-one-R", affine(half(), qi(1)), Domain::reals(), None, None, false),
        entry("harmonic3-R+", harmonic(3), Domain::positive(), None, None, false),
        entry("doubling-R+", affine(qi(2), qi(0)), Domain::positive(), None, None, false),
        entry("sum-plus-one-[0,inf)", affine(qi(1), qi(1)), Domain::non_negative(), None, None, true),
        entry("half-harmonic-R+", harmonic(1), Domain::positive(), None, None, true),
        entry("half-harmonic-(0,1]", harmonic(1), half_open_left(qi(0), qi(1)), None, None, true),
        entry("sum-plus-product-R+", bilinear(1), Domain::positive(), None, None, true),
        entry("sum-R+", affine(qi(1), qi(0)), Domain::positive(), None, None, true),
        entry(
            "einstein-(0,1)",
            Formula::Exact(ExactFormula::Einstein),
            Domain::new(Bound::Open(qi(0)), Bound::Open(qi(1))),
            None,
            None,
            true,
        ),
        logsumexp,
        // Midpoint algebra without a tabulated unit.
        entry(
            "geometric-(0,1)",
            float(FloatFormula::Geometric),
            Domain::new(Bound::Open(qi(0)), Bound::Open(qi(1))),
            None,
            None,
            false,
        ),
    ]
}

pub fn ids() -> Vec<String> {
    catalog().into_iter().map(|f| f.id).collect()
}

/// A cataloged family, or an affine family `affine-Q:α,β` on the rationals
/// or `affine-Z:α,β` on the integers. Affine families get an idempotent
/// unit when one exists in their domain.
pub fn lookup(id: &str) -> Result<Family> {
    if let Some(f) = catalog().into_iter().find(|f| f.id == id) {
        return Ok(f);
    }
    let unknown = || Error::UnknownFamily {
        id: id.to_string(),
        available: ids()
            .into_iter()
            .chain(["affine-Q:<alpha>,<beta>".into(), "affine-Z:<alpha>,<beta>".into()])
            .collect(),
    };
    let (domain, params) = if let Some(p) = id.strip_prefix("affine-Q:") {
        (Domain::reals(), p)
    } else if let Some(p) = id.strip_prefix("affine-Z:") {
        (Domain::integers(), p)
    } else {
        return Err(unknown());
    };
    let (a, b) = params.split_once(',').ok_or_else(unknown)?;
    let alpha = Q::from_str(a.trim()).map_err(|_| unknown())?;
    let beta = Q::from_str(b.trim()).map_err(|_| unknown())?;
    if domain.integral && (!alpha.is_integer() || !beta.is_integer()) {
        return Err(unknown());
    }
    let formula = ExactFormula::Affine {
        alpha: alpha.clone(),
        beta,
    };
    let unit = match formula.diagonal() {
        Diagonal::Everywhere => Some(Q::zero()),
        Diagonal::Points(p) => p.into_iter().find(|x| domain.contains(x)),
    };
    Ok(Family {
        id: id.to_string(),
        formula: Formula::Exact(formula),
        domain,
        unit,
        expected: None,
        expected_associative: Some(alpha == qi(1)),
        sample_window: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique() {
        let mut all = ids();
        let n = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), n);
    }

    #[test]
    fn affine_ids() {
        let f = lookup("affine-Z:2,0").unwrap();
        assert!(f.domain.integral);
        assert_eq!(f.unit, Some(qi(0)));
        let f = lookup("affine-Q:1/2,0").unwrap();
        assert_eq!(f.unit, Some(qi(0)));
        // 2(x+y)+1 on Z: idempotent at x = -1/3, not an integer.
        assert_eq!(lookup("affine-Z:2,1").unwrap().unit, None);
        assert!(matches!(lookup("affine-Z:1/2,0"), Err(Error::UnknownFamily { .. })));
        assert!(matches!(lookup("nope"), Err(Error::UnknownFamily { .. })));
    }
}
