//! Exhaustive axiom checks on finite magmas.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magma::{Check, FiniteMagma};

/// Result of checking commutativity (M1), cancellation (M2), mediality (M3)
/// and associativity. Counterexamples are lexicographically smallest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub commutative: Check<(usize, usize)>,
    pub cancellative: Check<(usize, usize, usize)>,
    pub medial: Check<(usize, usize, usize, usize)>,
    pub associative: Check<(usize, usize, usize)>,
    pub idempotents: Vec<usize>,
}

impl AxiomReport {
    /// M1, M2 and M3 all hold.
    pub fn is_ccm(&self) -> bool {
        self.commutative.holds && self.cancellative.holds && self.medial.holds
    }
}

pub fn check_axioms(m: &FiniteMagma) -> AxiomReport {
    AxiomReport {
        commutative: Check::from_counterexample(commutativity_counterexample(m)),
        cancellative: Check::from_counterexample(cancellation_counterexample(m)),
        medial: Check::from_counterexample(mediality_counterexample(m)),
        associative: Check::from_counterexample(associativity_counterexample(m)),
        idempotents: idempotents(m),
    }
}

/// Shorthand for `check_axioms(m).is_ccm()`.
pub fn is_ccm(m: &FiniteMagma) -> bool {
    commutativity_counterexample(m).is_none()
        && cancellation_counterexample(m).is_none()
        && mediality_counterexample(m).is_none()
}

pub fn commutativity_counterexample(m: &FiniteMagma) -> Option<(usize, usize)> {
    let n = m.order();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| m.op(a, b) != m.op(b, a))
}

// Columns and rows are checked separately so that non-commutative input is
// still judged on both sides.
pub fn cancellation_counterexample(m: &FiniteMagma) -> Option<(usize, usize, usize)> {
    let n = m.order();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            for c in 0..n {
                if m.op(a, c) == m.op(b, c) || m.op(c, a) == m.op(c, b) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

pub fn mediality_counterexample(m: &FiniteMagma) -> Option<(usize, usize, usize, usize)> {
    let n = m.order();
    for a in 0..n {
        for b in 0..n {
            let ab = m.op(a, b);
            for c in 0..n {
                let ac = m.op(a, c);
                for d in 0..n {
                    if m.op(ab, m.op(c, d)) != m.op(ac, m.op(b, d)) {
                        return Some((a, b, c, d));
                    }
                }
            }
        }
    }
    None
}

pub fn associativity_counterexample(m: &FiniteMagma) -> Option<(usize, usize, usize)> {
    let n = m.order();
    for a in 0..n {
        for b in 0..n {
            let ab = m.op(a, b);
            for c in 0..n {
                if m.op(ab, c) != m.op(a, m.op(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

pub fn is_associative(m: &FiniteMagma) -> bool {
    associativity_counterexample(m).is_none()
}

/// Elements with `x ⊕ x = x`, ascending.
pub fn idempotents(m: &FiniteMagma) -> Vec<usize> {
    m.elements().filter(|&x| m.op(x, x) == x).collect()
}

pub fn is_idempotent(m: &FiniteMagma, x: usize) -> bool {
    m.op(x, x) == x
}

/// The idempotent set, after confirming that it is closed under the
/// operation (which mediality and commutativity guarantee).
pub fn idempotent_subalgebra(m: &FiniteMagma) -> Result<Vec<usize>> {
    let ids = idempotents(m);
    for &x in &ids {
        for &y in &ids {
            let z = m.op(x, y);
            if !is_idempotent(m, z) {
                return Err(Error::Invariant(format!(
                    "idempotents {x} and {y} combine to non-idempotent {z}"
                )));
            }
        }
    }
    Ok(ids)
}

/// Smallest subset containing `seed` and closed under the operation.
pub fn subalgebra_closure(m: &FiniteMagma, seed: &[usize]) -> Result<Vec<usize>> {
    for &s in seed {
        m.check_element(s)?;
    }
    let mut members: BTreeSet<usize> = seed.iter().copied().collect();
    loop {
        let current: Vec<usize> = members.iter().copied().collect();
        let before = members.len();
        for &x in &current {
            for &y in &current {
                members.insert(m.op(x, y));
            }
        }
        if members.len() == before {
            return Ok(current);
        }
    }
}

pub fn is_closed(m: &FiniteMagma, subset: &[usize]) -> bool {
    let mut inside = vec![false; m.order()];
    for &s in subset {
        if s >= m.order() {
            return false;
        }
        inside[s] = true;
    }
    subset
        .iter()
        .all(|&x| subset.iter().all(|&y| inside[m.op(x, y)]))
}

/// The ternary term `p(x, y, z) = (y ⊕ x) ⊕ (z ⊕ y)`.
pub fn weak_maltsev_p(m: &FiniteMagma, x: usize, y: usize, z: usize) -> usize {
    m.op(m.op(y, x), m.op(z, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a2, a3, cyclic_group, f5a, z9a};

    #[test]
    fn a2_report() {
        let r = check_axioms(&a2());
        assert!(r.is_ccm());
        assert_eq!(r.associative, Check::fail((0, 0, 1)));
        assert_eq!(r.idempotents, vec![0, 1, 2]);
    }

    #[test]
    fn f5a_report() {
        let r = check_axioms(&f5a());
        assert!(r.is_ccm());
        assert!(!r.associative.holds);
        assert_eq!(r.idempotents, vec![0]);
    }

    #[test]
    fn a3_report() {
        let r = check_axioms(&a3());
        assert!(r.is_ccm());
        assert!(r.idempotents.is_empty());
        assert!(!r.associative.holds);
    }

    #[test]
    fn group_table_is_associative() {
        assert!(check_axioms(&cyclic_group(5)).associative.holds);
    }

    #[test]
    fn counterexamples_are_lexicographically_smallest() {
        // 0 1 / 0 1 : not commutative at (0,1); 0⊕0 = 1⊕0 so cancellation fails at (0,1,0).
        let m = FiniteMagma::from_rows(&[[0, 1], [0, 1]]).unwrap();
        let r = check_axioms(&m);
        assert_eq!(r.commutative, Check::fail((0, 1)));
        assert_eq!(r.cancellative, Check::fail((0, 1, 0)));
        // Brute-force the first medial failure independently.
        let mut expected = None;
        'outer: for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        if m.op(m.op(a, b), m.op(c, d)) != m.op(m.op(a, c), m.op(b, d)) {
                            expected = Some((a, b, c, d));
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert_eq!(r.medial.witness, expected);
    }

    #[test]
    fn row_only_cancellation_failure_detected() {
        // Columns injective but rows are not: x ⊕ y = x + 0*y style table.
        let m = FiniteMagma::from_rows(&[[0, 0], [1, 1]]).unwrap();
        assert!(!check_axioms(&m).cancellative.holds);
    }

    #[test]
    fn idempotent_sets() {
        assert_eq!(idempotent_subalgebra(&a2()).unwrap(), vec![0, 1, 2]);
        assert!(idempotent_subalgebra(&a3()).unwrap().is_empty());
        assert_eq!(idempotent_subalgebra(&z9a()).unwrap(), vec![0, 3, 6]);
    }

    #[test]
    fn idempotent_closure_failure_is_reported() {
        // Not medial: idempotents 0 and 1 combine to 2 which is not idempotent.
        let m = FiniteMagma::from_rows(&[[0, 2, 1], [2, 1, 0], [1, 0, 0]]).unwrap();
        assert!(matches!(idempotent_subalgebra(&m), Err(Error::Invariant(_))));
    }

    #[test]
    fn closures() {
        // 3 ⊕ 3 = 12 = 3 (mod 9), so {3} is already closed.
        assert_eq!(subalgebra_closure(&z9a(), &[3]).unwrap(), vec![3]);
        assert_eq!(subalgebra_closure(&a2(), &[0]).unwrap(), vec![0]);
        assert_eq!(subalgebra_closure(&f5a(), &[1]).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(subalgebra_closure(&z9a(), &[0, 3]).unwrap(), vec![0, 3, 6]);
        assert!(subalgebra_closure(&z9a(), &[9]).is_err());
        assert!(is_closed(&z9a(), &[0, 3, 6]));
        assert!(!is_closed(&z9a(), &[0, 3]));
    }

    #[test]
    fn weak_maltsev_examples() {
        let m = a3();
        assert_eq!(weak_maltsev_p(&m, 0, 1, 1), 2);
        assert_eq!(weak_maltsev_p(&m, 1, 1, 0), 2);
        let f = f5a();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(weak_maltsev_p(&f, x, y, y), weak_maltsev_p(&f, y, y, x));
            }
        }
        let m = a2();
        for x in idempotents(&m) {
            assert_eq!(weak_maltsev_p(&m, x, x, x), x);
        }
    }
}
