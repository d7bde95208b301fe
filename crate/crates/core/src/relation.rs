//! Binary relations between finite magmas, stored as dense membership grids.

use serde::{Deserialize, Serialize};

use crate::axioms::{is_closed, is_idempotent, subalgebra_closure};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::magma::{content_lines, join, parse_header, parse_indices, product_magma, Check, FiniteMagma};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryRelation {
    left: FiniteMagma,
    right: FiniteMagma,
    member: Vec<bool>,
}

type Pair = (usize, usize);

impl BinaryRelation {
    pub fn from_fn(left: &FiniteMagma, right: &FiniteMagma, pred: impl Fn(usize, usize) -> bool) -> Self {
        let member = left
            .elements()
            .flat_map(|a| right.elements().map(move |b| (a, b)))
            .map(|(a, b)| pred(a, b))
            .collect();
        BinaryRelation {
            left: left.clone(),
            right: right.clone(),
            member,
        }
    }

    pub fn from_pairs(left: &FiniteMagma, right: &FiniteMagma, pairs: &[Pair]) -> Result<Self> {
        let mut rel = Self::from_fn(left, right, |_, _| false);
        for &(a, b) in pairs {
            left.check_element(a)?;
            right.check_element(b)?;
            rel.member[a * right.order() + b] = true;
        }
        Ok(rel)
    }

    pub fn identity(m: &FiniteMagma) -> Self {
        Self::from_fn(m, m, |a, b| a == b)
    }

    pub fn full(left: &FiniteMagma, right: &FiniteMagma) -> Self {
        Self::from_fn(left, right, |_, _| true)
    }

    pub fn left(&self) -> &FiniteMagma {
        &self.left
    }

    pub fn right(&self) -> &FiniteMagma {
        &self.right
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.member[a * self.right.order() + b]
    }

    pub fn pairs(&self) -> Vec<Pair> {
        self.left
            .elements()
            .flat_map(|a| self.right.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| self.contains(a, b))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn require_square(&self) -> Result<()> {
        if self.left == self.right {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    /// Whether the member set is a subalgebra of `left × right`. The witness
    /// is a pair of members whose componentwise combination falls outside.
    pub fn is_internal(&self) -> Check<(Pair, Pair)> {
        let pairs = self.pairs();
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                if !self.contains(self.left.op(a, c), self.right.op(b, d)) {
                    return Check::fail(((a, b), (c, d)));
                }
            }
        }
        Check::pass()
    }

    pub fn is_reflexive(&self) -> Result<Check<usize>> {
        self.require_square()?;
        Ok(Check::from_counterexample(
            self.left.elements().find(|&a| !self.contains(a, a)),
        ))
    }

    pub fn is_symmetric(&self) -> Result<Check<Pair>> {
        self.require_square()?;
        Ok(Check::from_counterexample(
            self.pairs().into_iter().find(|&(a, b)| !self.contains(b, a)),
        ))
    }

    /// Witness `(a, b, c)` with `aRb`, `bRc` but not `aRc`.
    pub fn is_transitive(&self) -> Result<Check<(usize, usize, usize)>> {
        self.require_square()?;
        let n = self.left.order();
        for a in 0..n {
            for b in (0..n).filter(|&b| self.contains(a, b)) {
                for c in (0..n).filter(|&c| self.contains(b, c)) {
                    if !self.contains(a, c) {
                        return Ok(Check::fail((a, b, c)));
                    }
                }
            }
        }
        Ok(Check::pass())
    }

    /// `xRy, zRy, zRw ⟹ xRw`; witness `(x, y, z, w)`.
    pub fn is_difunctional(&self) -> Check<(usize, usize, usize, usize)> {
        let (nl, nr) = (self.left.order(), self.right.order());
        for x in 0..nl {
            for y in (0..nr).filter(|&y| self.contains(x, y)) {
                for z in (0..nl).filter(|&z| self.contains(z, y)) {
                    for w in (0..nr).filter(|&w| self.contains(z, w)) {
                        if !self.contains(x, w) {
                            return Check::fail((x, y, z, w));
                        }
                    }
                }
            }
        }
        Check::pass()
    }

    pub fn is_congruence(&self) -> Result<CongruenceReport> {
        Ok(CongruenceReport {
            reflexive: self.is_reflexive()?,
            symmetric: self.is_symmetric()?,
            transitive: self.is_transitive()?,
            internal: self.is_internal(),
        })
    }

    /// Classes of an equivalence relation, each sorted, in order of their
    /// smallest element. `None` unless the relation is an equivalence.
    pub fn equivalence_classes(&self) -> Option<Vec<Vec<usize>>> {
        let equivalence = self.is_reflexive().ok()?.holds
            && self.is_symmetric().ok()?.holds
            && self.is_transitive().ok()?.holds;
        if !equivalence {
            return None;
        }
        let mut seen = vec![false; self.left.order()];
        let mut classes = Vec::new();
        for a in self.left.elements() {
            if seen[a] {
                continue;
            }
            let class: Vec<usize> = self.left.elements().filter(|&b| self.contains(a, b)).collect();
            for &b in &class {
                seen[b] = true;
            }
            classes.push(class);
        }
        Some(classes)
    }

    /// Text form: a `rows cols` header followed by rows of `0`/`1` flags.
    pub fn to_text(&self) -> String {
        let (nl, nr) = (self.left.order(), self.right.order());
        let mut out = format!("{nl} {nr}\n");
        for a in 0..nl {
            let row: Vec<usize> = (0..nr).map(|b| usize::from(self.contains(a, b))).collect();
            out.push_str(&join(&row));
            out.push('\n');
        }
        out
    }

    /// Reads a grid written by [`BinaryRelation::to_text`] for the given carriers.
    pub fn parse(text: &str, left: &FiniteMagma, right: &FiniteMagma) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing size header".into(),
        })?;
        let dims = parse_header(line_no, header, 2)?;
        if dims != [left.order(), right.order()] {
            return Err(Error::Parse {
                line: line_no,
                message: format!(
                    "grid is {}x{} but carriers have orders {} and {}",
                    dims[0],
                    dims[1],
                    left.order(),
                    right.order()
                ),
            });
        }
        let mut member = Vec::with_capacity(dims[0] * dims[1]);
        for _ in 0..dims[0] {
            let (line_no, line) = lines.next().ok_or(Error::Parse {
                line: line_no,
                message: "missing grid rows".into(),
            })?;
            let row = parse_indices(line_no, line)?;
            if row.len() != dims[1] || row.iter().any(|&v| v > 1) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {} flags of 0 or 1", dims[1]),
                });
            }
            member.extend(row.into_iter().map(|v| v == 1));
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse {
                line: line_no,
                message: "unexpected content after grid".into(),
            });
        }
        Ok(BinaryRelation {
            left: left.clone(),
            right: right.clone(),
            member,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub internal: Check<(Pair, Pair)>,
    pub reflexive: Check<usize>,
    pub symmetric: Check<Pair>,
    pub transitive: Check<(usize, usize, usize)>,
}

impl CongruenceReport {
    pub fn holds(&self) -> bool {
        self.internal.holds && self.reflexive.holds && self.symmetric.holds && self.transitive.holds
    }
}

/// `x R y ⟺ f(x, y) = g(x, y)` for `f, g: left × right -> B`.
pub fn equalizer_relation(
    left: &FiniteMagma,
    right: &FiniteMagma,
    f: &Homomorphism,
    g: &Homomorphism,
) -> Result<BinaryRelation> {
    let product = product_magma(left, right);
    if f.source() != &product || g.source() != &product {
        return Err(Error::SignatureMismatch(
            "equalizer maps must be defined on left × right".into(),
        ));
    }
    if f.target() != g.target() {
        return Err(Error::TargetMismatch);
    }
    let n = right.order();
    Ok(BinaryRelation::from_fn(left, right, |x, y| {
        f.apply(x * n + y) == g.apply(x * n + y)
    }))
}

/// The relation `a R b ⟺ ∃ x ∈ X, a ⊕ e = x ⊕ b` together with the first
/// witness `x` (in increasing order) for each member pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraRelation {
    pub relation: BinaryRelation,
    pub witnesses: Vec<Option<usize>>,
}

impl SubalgebraRelation {
    pub fn witness(&self, a: usize, b: usize) -> Option<usize> {
        self.witnesses[a * self.relation.right.order() + b]
    }
}

fn validate_subalgebra(m: &FiniteMagma, subset: &[usize], e: usize) -> Result<Vec<usize>> {
    let mut xs = subset.to_vec();
    xs.sort_unstable();
    xs.dedup();
    for &x in &xs {
        m.check_element(x)?;
    }
    m.check_element(e)?;
    if !is_closed(m, &xs) {
        return Err(Error::NotClosed {
            closure: subalgebra_closure(m, &xs)?,
        });
    }
    if xs.binary_search(&e).is_err() {
        return Err(Error::UnitNotInSubset(e));
    }
    if !is_idempotent(m, e) {
        return Err(Error::NotIdempotent(e));
    }
    Ok(xs)
}

pub fn subalgebra_relation(m: &FiniteMagma, subset: &[usize], e: usize) -> Result<SubalgebraRelation> {
    let xs = validate_subalgebra(m, subset, e)?;
    let n = m.order();
    let mut witnesses = vec![None; n * n];
    for a in 0..n {
        let ae = m.op(a, e);
        for b in 0..n {
            witnesses[a * n + b] = xs.iter().copied().find(|&x| m.op(x, b) == ae);
        }
    }
    let relation = BinaryRelation {
        left: m.clone(),
        right: m.clone(),
        member: witnesses.iter().map(Option::is_some).collect(),
    };
    Ok(SubalgebraRelation {
        relation,
        witnesses,
    })
}

/// Evaluates the transitivity criterion for the subalgebra relation: for all
/// `x, y ∈ X` and `c ∈ A`, whenever `a ⊕ e = x ⊕ b` and `b ⊕ e = y ⊕ c` are
/// solvable there must be `z ∈ X` with `z ⊕ e = x ⊕ y`. The verdict is
/// cross-checked against direct transitivity of the relation.
pub fn transitivity_criterion(m: &FiniteMagma, subset: &[usize], e: usize) -> Result<bool> {
    let xs = validate_subalgebra(m, subset, e)?;
    let criterion = xs.iter().all(|&x| {
        xs.iter().all(|&y| {
            let has_z = xs.iter().any(|&z| m.op(z, e) == m.op(x, y));
            has_z
                || !m.elements().any(|c| {
                    m.elements().any(|b| {
                        m.op(b, e) == m.op(y, c)
                            && m.elements().any(|a| m.op(a, e) == m.op(x, b))
                    })
                })
        })
    });
    let direct = subalgebra_relation(m, &xs, e)?.relation.is_transitive()?.holds;
    if criterion != direct {
        return Err(Error::Invariant(format!(
            "transitivity criterion {criterion} disagrees with direct check {direct}"
        )));
    }
    Ok(criterion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a2, f5a, z9a};
    use crate::hom::pair_hom;

    fn f5a_mul(k: usize) -> Homomorphism {
        Homomorphism::from_fn(f5a(), f5a(), |x| (k * x) % 5).unwrap()
    }

    #[test]
    fn identity_and_full_are_internal() {
        assert!(BinaryRelation::identity(&f5a()).is_internal().holds);
        assert!(BinaryRelation::full(&a2(), &f5a()).is_internal().holds);
    }

    #[test]
    fn non_internal_witness() {
        let r = BinaryRelation::from_pairs(&f5a(), &f5a(), &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(r.is_internal(), Check::fail(((0, 0), (1, 1))));
    }

    #[test]
    fn order_relation_on_a2() {
        let m = a2();
        let r = BinaryRelation::from_fn(&m, &m, |a, b| a <= b);
        assert!(r.is_reflexive().unwrap().holds);
        assert!(r.is_transitive().unwrap().holds);
        assert_eq!(r.is_symmetric().unwrap(), Check::fail((0, 1)));
        assert!(!r.is_congruence().unwrap().holds());
    }

    #[test]
    fn graph_of_bijection_is_difunctional() {
        let m = f5a();
        let r = BinaryRelation::from_fn(&m, &m, |x, y| x == (3 * y) % 5);
        assert!(r.is_difunctional().holds);
        let not = BinaryRelation::from_pairs(&m, &m, &[(0, 0), (1, 0), (1, 1)]).unwrap();
        assert_eq!(not.is_difunctional(), Check::fail((0, 0, 1, 1)));
    }

    #[test]
    fn square_predicates_reject_mismatched_carriers() {
        let r = BinaryRelation::full(&a2(), &f5a());
        assert_eq!(r.is_reflexive(), Err(Error::CarrierMismatch));
        assert_eq!(r.is_transitive(), Err(Error::CarrierMismatch));
        assert!(r.is_congruence().is_err());
        assert!(r.is_difunctional().holds);
    }

    #[test]
    fn equalizer_examples() {
        let m = f5a();
        let f = pair_hom(&f5a_mul(1), &f5a_mul(1)).unwrap();
        // 2(2x + 3y)
        let g = pair_hom(&f5a_mul(2), &f5a_mul(3)).unwrap();
        let r = equalizer_relation(&m, &m, &f, &g).unwrap();
        assert_eq!(r, BinaryRelation::from_fn(&m, &m, |x, y| x == (3 * y) % 5));
        assert!(r.is_difunctional().holds);

        let r = equalizer_relation(&m, &m, &f, &f).unwrap();
        assert_eq!(r, BinaryRelation::full(&m, &m));

        let g = pair_hom(&f5a_mul(2), &f5a_mul(1)).unwrap();
        let r = equalizer_relation(&m, &m, &f, &g).unwrap();
        assert_eq!(r, BinaryRelation::from_fn(&m, &m, |x, _| x == 0));
        assert!(r.is_difunctional().holds);
    }

    #[test]
    fn equalizer_signature_checks() {
        let f = pair_hom(&f5a_mul(1), &f5a_mul(1)).unwrap();
        assert!(matches!(
            equalizer_relation(&a2(), &f5a(), &f, &f),
            Err(Error::SignatureMismatch(_))
        ));
    }

    #[test]
    fn z9a_mod_three() {
        let m = z9a();
        let s = subalgebra_relation(&m, &[0, 3, 6], 0).unwrap();
        let expected = BinaryRelation::from_fn(&m, &m, |a, b| (a + 9 - b) % 3 == 0);
        assert_eq!(s.relation, expected);
        assert!(s.relation.is_congruence().unwrap().holds());
        assert_eq!(s.relation.equivalence_classes().unwrap().len(), 3);
        // 4 ⊕ 0 = 8 = x ⊕ 1 needs 2(x + 1) = 8, x = 3.
        assert_eq!(s.witness(4, 1), Some(3));
        assert!(transitivity_criterion(&m, &[0, 3, 6], 0).unwrap());
    }

    #[test]
    fn trivial_subalgebra_gives_identity() {
        let m = f5a();
        let s = subalgebra_relation(&m, &[0], 0).unwrap();
        assert_eq!(s.relation, BinaryRelation::identity(&m));
        assert!(transitivity_criterion(&m, &[0], 0).unwrap());
    }

    #[test]
    fn whole_carrier_gives_full_relation() {
        let m = a2();
        for e in 0..3 {
            let s = subalgebra_relation(&m, &[0, 1, 2], e).unwrap();
            assert_eq!(s.relation, BinaryRelation::full(&m, &m));
        }
    }

    #[test]
    fn subalgebra_preconditions() {
        let m = z9a();
        assert_eq!(
            subalgebra_relation(&m, &[0, 3], 0).unwrap_err(),
            Error::NotClosed {
                closure: vec![0, 3, 6]
            }
        );
        assert_eq!(
            subalgebra_relation(&m, &[0, 3, 6], 1).unwrap_err(),
            Error::UnitNotInSubset(1)
        );
        assert_eq!(
            subalgebra_relation(&m, &(0..9).collect::<Vec<_>>(), 1).unwrap_err(),
            Error::NotIdempotent(1)
        );
    }

    #[test]
    fn text_round_trip() {
        let m = z9a();
        let r = subalgebra_relation(&m, &[0, 3, 6], 0).unwrap().relation;
        let text = r.to_text();
        assert!(text.starts_with("9 9\n1 0 0 1 0 0 1 0 0\n"));
        assert_eq!(BinaryRelation::parse(&text, &m, &m).unwrap(), r);
        assert!(BinaryRelation::parse("2 2\n0 1\n1 0\n", &m, &m).is_err());
        let r = BinaryRelation::full(&a2(), &f5a());
        assert_eq!(BinaryRelation::parse(&r.to_text(), &a2(), &f5a()).unwrap(), r);
    }
}
