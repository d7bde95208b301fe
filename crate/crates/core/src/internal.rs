//! Doubling and negation maps, and the internal monoid and group structures
//! a ccm-magma carries over an idempotent unit.
//!
//! For a unit `e`, the doubling `2_e(a)` is the solution of `x ⊕ e = a` and
//! the negation `-_e(a)` the solution of `x ⊕ a = e`. Both are unique when
//! they exist, by cancellation. The internal monoid over an idempotent `e`
//! is the operation `x *_e y` determined by `(x *_e y) ⊕ e = x ⊕ y`.

use serde::{Deserialize, Serialize};

use crate::axioms::{is_associative, is_idempotent};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::magma::FiniteMagma;

/// For fixed `a`, the table `v ↦ x` with `x ⊕ a = v` (first solution).
pub(crate) fn solver_for(m: &FiniteMagma, a: usize) -> Vec<Option<usize>> {
    let mut out = vec![None; m.order()];
    for x in m.elements() {
        let v = m.op(x, a);
        if out[v].is_none() {
            out[v] = Some(x);
        }
    }
    out
}

/// `2_e(a)`: the `x` with `x ⊕ e = a`, if any.
pub fn double(m: &FiniteMagma, e: usize, a: usize) -> Option<usize> {
    m.elements().find(|&x| m.op(x, e) == a)
}

/// `-_e(a)`: the `x` with `x ⊕ a = e`, if any.
pub fn negate(m: &FiniteMagma, e: usize, a: usize) -> Option<usize> {
    m.elements().find(|&x| m.op(x, a) == e)
}

pub fn is_expansive(m: &FiniteMagma, e: usize) -> bool {
    solver_for(m, e).iter().all(Option::is_some)
}

pub fn is_symmetric(m: &FiniteMagma, e: usize) -> bool {
    m.elements().all(|a| negate(m, e, a).is_some())
}

pub fn is_homogeneous(m: &FiniteMagma) -> bool {
    m.elements().all(|e| is_expansive(m, e))
}

/// Solution of `x ⊕ u = v` assembled from doublings and a negation at `e`:
/// `x = 2_e(2_e(v ⊕ (e ⊕ -_e(u))))`. Exists whenever the magma is
/// `e`-expansive and `e`-symmetric.
pub fn homogeneous_witness(m: &FiniteMagma, e: usize, u: usize, v: usize) -> Option<usize> {
    let neg_u = negate(m, e, u)?;
    let inner = double(m, e, m.op(v, m.op(e, neg_u)))?;
    double(m, e, inner)
}

/// An internal monoid `(A, *_e, e)` compatible with `⊕`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidStructure {
    base: FiniteMagma,
    unit: usize,
    star: FiniteMagma,
}

impl MonoidStructure {
    pub fn base(&self) -> &FiniteMagma {
        &self.base
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn star(&self, x: usize, y: usize) -> usize {
        self.star.op(x, y)
    }

    /// The star operation as a magma in its own right.
    pub fn star_magma(&self) -> &FiniteMagma {
        &self.star
    }

    /// Checks every monoid invariant exhaustively and reports the first
    /// violation.
    pub fn verify(&self) -> Result<()> {
        let (m, e, n) = (&self.base, self.unit, self.base.order());
        let bad = |what: String| Err(Error::Invariant(what));
        if !is_idempotent(m, e) {
            return bad(format!("unit {e} is not idempotent"));
        }
        for x in 0..n {
            if self.star(e, x) != x || self.star(x, e) != x {
                return bad(format!("unit law fails at {x}"));
            }
            for y in 0..n {
                if self.star(x, y) != self.star(y, x) {
                    return bad(format!("star not commutative at ({x}, {y})"));
                }
                if m.op(self.star(x, y), e) != m.op(x, y) {
                    return bad(format!("defining identity fails at ({x}, {y})"));
                }
                for z in 0..n {
                    if self.star(self.star(x, y), z) != self.star(x, self.star(y, z)) {
                        return bad(format!("star not associative at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.star(x, y);
                for z in 0..n {
                    let xz = m.op(x, z);
                    for w in 0..n {
                        if m.op(xy, self.star(z, w)) != self.star(xz, m.op(y, w)) {
                            return bad(format!(
                                "compatibility with the base fails at ({x}, {y}, {z}, {w})"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// An internal monoid in which every element has an inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStructure {
    monoid: MonoidStructure,
    inverse: Vec<usize>,
}

impl GroupStructure {
    pub fn monoid(&self) -> &MonoidStructure {
        &self.monoid
    }

    pub fn inverse(&self) -> &[usize] {
        &self.inverse
    }
}

fn require_idempotent(m: &FiniteMagma, e: usize) -> Result<()> {
    m.check_element(e)?;
    if is_idempotent(m, e) {
        Ok(())
    } else {
        Err(Error::NotIdempotent(e))
    }
}

/// The internal monoid over `e`, if `θ ⊕ e = x ⊕ y` is solvable for every
/// pair. A non-idempotent `e` is an error rather than an absence.
pub fn internal_monoid(m: &FiniteMagma, e: usize) -> Result<Option<MonoidStructure>> {
    require_idempotent(m, e)?;
    let solve = solver_for(m, e);
    let n = m.order();
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            match solve[m.op(x, y)] {
                Some(t) => table.push(t),
                None => return Ok(None),
            }
        }
    }
    let monoid = MonoidStructure {
        base: m.clone(),
        unit: e,
        star: FiniteMagma::from_flat(n, table)?,
    };
    monoid.verify()?;
    Ok(Some(monoid))
}

/// The internal group over `e`: the internal monoid with inverses
/// `-_e(a)`. Present iff the monoid exists and the magma is `e`-symmetric.
pub fn internal_group(m: &FiniteMagma, e: usize) -> Result<Option<GroupStructure>> {
    let Some(monoid) = internal_monoid(m, e)? else {
        return Ok(None);
    };
    let mut inverse = Vec::with_capacity(m.order());
    for a in m.elements() {
        match negate(m, e, a) {
            Some(x) => inverse.push(x),
            None => return Ok(None),
        }
    }
    for (a, &inv) in inverse.iter().enumerate() {
        if monoid.star(inv, a) != e {
            return Err(Error::Invariant(format!(
                "-_e({a}) = {inv} is not an inverse for the star operation"
            )));
        }
    }
    Ok(Some(GroupStructure { monoid, inverse }))
}

/// The isomorphism `a ↦ 2_u(a ⊕ v)` from the monoid over `u` to the monoid
/// over `v`, returned as a homomorphism between the two star tables.
///
/// Before returning, confirms that `f(u) = v`, that `f` preserves the star
/// operation, that `a ↦ 2_v(a ⊕ u)` inverts it on both sides, and that
/// `a *_u b = (a *_v b) *_u v` for all pairs.
pub fn monoid_isomorphism(m: &FiniteMagma, u: usize, v: usize) -> Result<Homomorphism> {
    require_idempotent(m, u)?;
    require_idempotent(m, v)?;
    let missing = |w: usize| Error::Invariant(format!("no internal monoid over {w}"));
    let mu = internal_monoid(m, u)?.ok_or_else(|| missing(u))?;
    let mv = internal_monoid(m, v)?.ok_or_else(|| missing(v))?;

    let solve_u = solver_for(m, u);
    let solve_v = solver_for(m, v);
    let undefined = |w: usize, a: usize| Error::Invariant(format!("2_{w}({a}) does not exist"));
    let forward = m
        .elements()
        .map(|a| solve_u[m.op(a, v)].ok_or_else(|| undefined(u, m.op(a, v))))
        .collect::<Result<Vec<_>>>()?;
    let backward = m
        .elements()
        .map(|a| solve_v[m.op(a, u)].ok_or_else(|| undefined(v, m.op(a, u))))
        .collect::<Result<Vec<_>>>()?;

    if forward[u] != v {
        return Err(Error::Invariant(format!("f({u}) = {} != {v}", forward[u])));
    }
    for a in m.elements() {
        if backward[forward[a]] != a || forward[backward[a]] != a {
            return Err(Error::Invariant(format!("inverse map fails at {a}")));
        }
        for b in m.elements() {
            if mu.star(a, b) != mu.star(mv.star(a, b), v) {
                return Err(Error::Invariant(format!(
                    "a *_u b = (a *_v b) *_u v fails at ({a}, {b})"
                )));
            }
        }
    }
    let f = Homomorphism::new(mu.star_magma().clone(), mv.star_magma().clone(), forward)?;
    if let Some((a, b)) = f.check().witness {
        return Err(Error::NotHomomorphism(a, b));
    }
    Ok(f)
}

/// Whether `2_u(a) ⊕ 2_v(b) = 2_{u⊕v}(a ⊕ b)` for every pair `(a, b)`.
/// Any missing doubling makes the answer `false`.
pub fn doubling_additivity_check(m: &FiniteMagma, u: usize, v: usize) -> bool {
    let solve_u = solver_for(m, u);
    let solve_v = solver_for(m, v);
    let solve_uv = solver_for(m, m.op(u, v));
    m.elements().all(|a| {
        m.elements().all(|b| {
            match (solve_u[a], solve_v[b], solve_uv[m.op(a, b)]) {
                (Some(da), Some(db), Some(dab)) => m.op(da, db) == dab,
                _ => false,
            }
        })
    })
}

/// The four conditions that are equivalent for an idempotent `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityEquivalences {
    pub associative: bool,
    pub unit_for_operation: bool,
    pub doubling_is_identity: bool,
    pub operation_is_internal_monoid: bool,
}

impl AssociativityEquivalences {
    pub fn consistent(&self) -> bool {
        let v = self.associative;
        self.unit_for_operation == v
            && self.doubling_is_identity == v
            && self.operation_is_internal_monoid == v
    }
}

pub fn associativity_equivalences(m: &FiniteMagma, e: usize) -> Result<AssociativityEquivalences> {
    require_idempotent(m, e)?;
    let report = AssociativityEquivalences {
        associative: is_associative(m),
        unit_for_operation: m.elements().all(|a| m.op(a, e) == a && m.op(e, a) == a),
        doubling_is_identity: m.elements().all(|a| double(m, e, a) == Some(a)),
        operation_is_internal_monoid: MonoidStructure {
            base: m.clone(),
            unit: e,
            star: m.clone(),
        }
        .verify()
        .is_ok(),
    };
    if report.consistent() {
        Ok(report)
    } else {
        Err(Error::Invariant(format!(
            "associativity equivalences disagree: {report:?}"
        )))
    }
}

/// Returns `(every element idempotent, star distributes over ⊕)`; the two
/// must agree.
pub fn midpoint_distributivity_check(
    m: &FiniteMagma,
    monoid: &MonoidStructure,
) -> Result<(bool, bool)> {
    if monoid.base() != m {
        return Err(Error::SignatureMismatch(
            "monoid was built over a different magma".into(),
        ));
    }
    let all_idempotent = m.elements().all(|a| is_idempotent(m, a));
    let distributive = m.elements().all(|x| {
        m.elements().all(|y| {
            m.elements().all(|z| {
                monoid.star(x, m.op(y, z)) == m.op(monoid.star(x, y), monoid.star(x, z))
            })
        })
    });
    if all_idempotent != distributive {
        return Err(Error::Invariant(format!(
            "midpoint flag {all_idempotent} differs from distributivity flag {distributive}"
        )));
    }
    Ok((all_idempotent, distributive))
}
