//! The kite diagram: two split epimorphisms onto `B`, their pullback, and
//! the comparison map `θ` into `D`.

use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::magma::FiniteMagma;

/// The seven maps of a kite. Magmas are read off their sources and targets:
/// `f: A -> B`, `r: B -> A`, `g: C -> B`, `s: B -> C`, `u: A -> D`,
/// `v: B -> D`, `w: C -> D`.
#[derive(Debug, Clone)]
pub struct KiteMaps {
    pub f: Homomorphism,
    pub r: Homomorphism,
    pub g: Homomorphism,
    pub s: Homomorphism,
    pub u: Homomorphism,
    pub v: Homomorphism,
    pub w: Homomorphism,
}

#[derive(Debug, Clone)]
pub struct KiteInput {
    maps: KiteMaps,
}

fn same(x: &FiniteMagma, y: &FiniteMagma, what: &str) -> Result<()> {
    if x == y {
        Ok(())
    } else {
        Err(Error::Kite(format!("{what} do not match")))
    }
}

impl KiteInput {
    /// Checks signatures, that every map is a homomorphism, `fr = 1 = gs`
    /// and `ur = v = ws`.
    pub fn new(maps: KiteMaps) -> Result<Self> {
        let KiteMaps { f, r, g, s, u, v, w } = &maps;
        let (a, b, c, d) = (f.source(), f.target(), g.source(), u.target());
        same(g.target(), b, "targets of f and g")?;
        same(r.source(), b, "source of r and B")?;
        same(s.source(), b, "source of s and B")?;
        same(v.source(), b, "source of v and B")?;
        same(r.target(), a, "target of r and A")?;
        same(u.source(), a, "source of u and A")?;
        same(s.target(), c, "target of s and C")?;
        same(w.source(), c, "source of w and C")?;
        same(v.target(), d, "target of v and D")?;
        same(w.target(), d, "target of w and D")?;
        for (name, h) in [("f", f), ("r", r), ("g", g), ("s", s), ("u", u), ("v", v), ("w", w)] {
            if let Some((x, y)) = h.check().witness {
                return Err(Error::Kite(format!("{name} is not a homomorphism at ({x}, {y})")));
            }
        }
        let id = Homomorphism::identity(b);
        if f.compose(r)? != id {
            return Err(Error::Kite("f r is not the identity on B".into()));
        }
        if g.compose(s)? != id {
            return Err(Error::Kite("g s is not the identity on B".into()));
        }
        if u.compose(r)?.map() != v.map() {
            return Err(Error::Kite("u r differs from v".into()));
        }
        if w.compose(s)?.map() != v.map() {
            return Err(Error::Kite("w s differs from v".into()));
        }
        Ok(KiteInput { maps })
    }

    pub fn maps(&self) -> &KiteMaps {
        &self.maps
    }
}

/// `A ×_B C` with its projections and the two sections `e₁(a) = (a, s f(a))`
/// and `e₂(c) = (r g(c), c)`. Elements of `magma` index into `carrier`.
#[derive(Debug, Clone)]
pub struct PullbackSpan {
    pub carrier: Vec<(usize, usize)>,
    pub magma: FiniteMagma,
    pub pi1: Homomorphism,
    pub pi2: Homomorphism,
    pub e1: Homomorphism,
    pub e2: Homomorphism,
}

impl PullbackSpan {
    pub fn index_of(&self, a: usize, c: usize) -> Option<usize> {
        self.carrier.binary_search(&(a, c)).ok()
    }
}

pub fn build_pullback(k: &KiteInput) -> Result<PullbackSpan> {
    let KiteMaps { f, r, g, s, .. } = &k.maps;
    let (a_mag, c_mag) = (f.source(), g.source());
    let carrier: Vec<(usize, usize)> = a_mag
        .elements()
        .flat_map(|a| c_mag.elements().map(move |c| (a, c)))
        .filter(|&(a, c)| f.apply(a) == g.apply(c))
        .collect();
    let index = |a: usize, c: usize| carrier.binary_search(&(a, c)).ok();
    let n = carrier.len();
    let mut table = Vec::with_capacity(n * n);
    for &(a, c) in &carrier {
        for &(a2, c2) in &carrier {
            let (x, y) = (a_mag.op(a, a2), c_mag.op(c, c2));
            let p = index(x, y).ok_or_else(|| {
                Error::Kite(format!("pullback not closed: ({a},{c}) ⊕ ({a2},{c2}) = ({x},{y})"))
            })?;
            table.push(p);
        }
    }
    let magma = FiniteMagma::from_flat(n, table)?;
    let pi1 = Homomorphism::new(magma.clone(), a_mag.clone(), carrier.iter().map(|p| p.0).collect())?;
    let pi2 = Homomorphism::new(magma.clone(), c_mag.clone(), carrier.iter().map(|p| p.1).collect())?;
    let missing = || Error::Kite("section leaves the pullback".into());
    let e1_map = a_mag
        .elements()
        .map(|a| index(a, s.apply(f.apply(a))).ok_or_else(missing))
        .collect::<Result<Vec<_>>>()?;
    let e2_map = c_mag
        .elements()
        .map(|c| index(r.apply(g.apply(c)), c).ok_or_else(missing))
        .collect::<Result<Vec<_>>>()?;
    let e1 = Homomorphism::new(a_mag.clone(), magma.clone(), e1_map)?;
    let e2 = Homomorphism::new(c_mag.clone(), magma.clone(), e2_map)?;
    if pi1.compose(&e1)? != Homomorphism::identity(a_mag) {
        return Err(Error::Kite("π₁ e₁ is not the identity".into()));
    }
    if pi2.compose(&e2)? != Homomorphism::identity(c_mag) {
        return Err(Error::Kite("π₂ e₂ is not the identity".into()));
    }
    Ok(PullbackSpan {
        carrier,
        magma,
        pi1,
        pi2,
        e1,
        e2,
    })
}

/// `θ(a, c)` is the solution `x` of `x ⊕ v(b) = u(a) ⊕ w(c)` with
/// `b = f(a) = g(c)`. Returns `None` when some equation has no solution.
/// Each equation is checked to have at most one solution, and the result is
/// checked to be a homomorphism with `θ e₁ = u` and `θ e₂ = w`.
pub fn kite_theta(k: &KiteInput) -> Result<Option<(PullbackSpan, Homomorphism)>> {
    let span = build_pullback(k)?;
    let KiteMaps { f, u, v, w, .. } = &k.maps;
    let d = u.target();
    let mut map = Vec::with_capacity(span.carrier.len());
    for &(a, c) in &span.carrier {
        let vb = v.apply(f.apply(a));
        let rhs = d.op(u.apply(a), w.apply(c));
        let mut solutions = d.elements().filter(|&x| d.op(x, vb) == rhs);
        let Some(x) = solutions.next() else {
            return Ok(None);
        };
        if let Some(y) = solutions.next() {
            return Err(Error::Invariant(format!(
                "θ({a}, {c}) has two solutions {x} and {y}"
            )));
        }
        map.push(x);
    }
    let theta = Homomorphism::new(span.magma.clone(), d.clone(), map)?;
    if let Some((x, y)) = theta.check().witness {
        return Err(Error::Invariant(format!(
            "θ is not a homomorphism at carrier indices ({x}, {y})"
        )));
    }
    if theta.compose(&span.e1)?.map() != u.map() {
        return Err(Error::Invariant("θ e₁ differs from u".into()));
    }
    if theta.compose(&span.e2)?.map() != w.map() {
        return Err(Error::Invariant("θ e₂ differs from w".into()));
    }
    Ok(Some((span, theta)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a2, f5a};
    use crate::internal::internal_monoid;
    use crate::magma::product_magma;

    fn corollary_kite(m: &FiniteMagma, e: usize) -> KiteInput {
        let one = FiniteMagma::singleton();
        let to_one = Homomorphism::constant(m, &one, 0).unwrap();
        let from_one = Homomorphism::constant(&one, m, e).unwrap();
        let id = Homomorphism::identity(m);
        KiteInput::new(KiteMaps {
            f: to_one.clone(),
            r: from_one.clone(),
            g: to_one,
            s: from_one.clone(),
            u: id.clone(),
            v: from_one,
            w: id,
        })
        .unwrap()
    }

    #[test]
    fn singleton_base_gives_product_and_star() {
        let m = f5a();
        let k = corollary_kite(&m, 0);
        let (span, theta) = kite_theta(&k).unwrap().unwrap();
        assert_eq!(span.carrier.len(), 25);
        let monoid = internal_monoid(&m, 0).unwrap().unwrap();
        for (p, &(a, c)) in span.carrier.iter().enumerate() {
            assert_eq!(theta.apply(p), (a + c) % 5);
            assert_eq!(theta.apply(p), monoid.star(a, c));
        }
    }

    #[test]
    fn all_identity_kite_is_diagonal() {
        let m = a2();
        let id = Homomorphism::identity(&m);
        let k = KiteInput::new(KiteMaps {
            f: id.clone(),
            r: id.clone(),
            g: id.clone(),
            s: id.clone(),
            u: id.clone(),
            v: id.clone(),
            w: id,
        })
        .unwrap();
        let (span, theta) = kite_theta(&k).unwrap().unwrap();
        assert_eq!(span.carrier, vec![(0, 0), (1, 1), (2, 2)]);
        for (p, &(a, _)) in span.carrier.iter().enumerate() {
            assert_eq!(theta.apply(p), a);
        }
    }

    #[test]
    fn product_over_a2_has_27_pairs() {
        let b = a2();
        let a = product_magma(&b, &b);
        let f = Homomorphism::from_fn(a.clone(), b.clone(), |p| p / 3).unwrap();
        let r = Homomorphism::from_fn(b.clone(), a.clone(), |x| x * 3).unwrap();
        let id = Homomorphism::identity(&a);
        let k = KiteInput::new(KiteMaps {
            f: f.clone(),
            r: r.clone(),
            g: f,
            s: r.clone(),
            u: id.clone(),
            v: r,
            w: id,
        })
        .unwrap();
        let (span, theta) = kite_theta(&k).unwrap().unwrap();
        assert_eq!(span.carrier.len(), 27);
        assert!(theta.check().holds);
    }

    #[test]
    fn invalid_kites_rejected() {
        let m = f5a();
        let one = FiniteMagma::singleton();
        let to_one = Homomorphism::constant(&m, &one, 0).unwrap();
        let id = Homomorphism::identity(&m);
        let bad_section = Homomorphism::constant(&one, &m, 1).unwrap();
        let err = KiteInput::new(KiteMaps {
            f: to_one.clone(),
            r: bad_section.clone(),
            g: to_one,
            s: bad_section.clone(),
            u: id.clone(),
            v: bad_section,
            w: id,
        })
        .unwrap_err();
        assert!(matches!(err, Error::Kite(_)));
    }

    #[test]
    fn mismatched_v_rejected() {
        let m = a2();
        let one = FiniteMagma::singleton();
        let to_one = Homomorphism::constant(&m, &one, 0).unwrap();
        let at = |e| Homomorphism::constant(&one, &m, e).unwrap();
        let id = Homomorphism::identity(&m);
        let err = KiteInput::new(KiteMaps {
            f: to_one.clone(),
            r: at(0),
            g: to_one,
            s: at(0),
            u: id.clone(),
            v: at(1),
            w: id,
        })
        .unwrap_err();
        assert_eq!(err, Error::Kite("u r differs from v".into()));
    }
}
