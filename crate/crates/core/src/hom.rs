//! Maps between finite magmas and the constructions built from them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magma::{decode_pair, product_magma, Check, FiniteMagma};

/// A map `source -> target` given by the image of each source element.
/// Construction validates shape only; use [`Homomorphism::check`] for the
/// homomorphism identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homomorphism {
    source: FiniteMagma,
    target: FiniteMagma,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: FiniteMagma, target: FiniteMagma, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::MapLength {
                expected: source.order(),
                found: map.len(),
            });
        }
        for &v in &map {
            target.check_element(v)?;
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn from_fn(
        source: FiniteMagma,
        target: FiniteMagma,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let map = source.elements().map(f).collect();
        Self::new(source, target, map)
    }

    pub fn identity(m: &FiniteMagma) -> Self {
        Homomorphism {
            source: m.clone(),
            target: m.clone(),
            map: m.elements().collect(),
        }
    }

    /// Constant map onto `value`; a homomorphism iff `value` is idempotent.
    pub fn constant(source: &FiniteMagma, target: &FiniteMagma, value: usize) -> Result<Self> {
        Self::new(source.clone(), target.clone(), vec![value; source.order()])
    }

    pub fn source(&self) -> &FiniteMagma {
        &self.source
    }

    pub fn target(&self) -> &FiniteMagma {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Exhaustively tests `h(x ⊕ y) = h(x) ⊕' h(y)`; the witness is the
    /// lexicographically smallest failing pair.
    pub fn check(&self) -> Check<(usize, usize)> {
        let n = self.source.order();
        let failure = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| {
                self.map[self.source.op(x, y)] != self.target.op(self.map[x], self.map[y])
            });
        Check::from_counterexample(failure)
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_failure().is_none()
    }

    fn injectivity_failure(&self) -> Option<(usize, usize)> {
        let mut seen = vec![None; self.target.order()];
        for (x, &y) in self.map.iter().enumerate() {
            if let Some(prev) = seen[y] {
                return Some((prev, x));
            }
            seen[y] = Some(x);
        }
        None
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Homomorphism) -> Result<Homomorphism> {
        if inner.target != self.source {
            return Err(Error::SignatureMismatch(
                "inner target differs from outer source".into(),
            ));
        }
        Homomorphism::new(
            inner.source.clone(),
            self.target.clone(),
            inner.map.iter().map(|&x| self.map[x]).collect(),
        )
    }
}

pub fn is_homomorphism(h: &Homomorphism) -> Check<(usize, usize)> {
    h.check()
}

/// From `f1: M -> B` and `f2: M' -> B` builds `M × M' -> B`,
/// `(x, y) ↦ f1(x) ⊕ f2(y)`. Mediality of `B` makes this a homomorphism;
/// the result is verified before it is returned.
pub fn pair_hom(f1: &Homomorphism, f2: &Homomorphism) -> Result<Homomorphism> {
    if f1.target != f2.target {
        return Err(Error::TargetMismatch);
    }
    let right = f2.source.order();
    let source = product_magma(&f1.source, &f2.source);
    let target = f1.target.clone();
    let map = (0..source.order())
        .map(|p| {
            let (x, y) = decode_pair(p, right);
            target.op(f1.apply(x), f2.apply(y))
        })
        .collect();
    let h = Homomorphism::new(source, target, map)?;
    match h.check().witness {
        None => Ok(h),
        Some((x, y)) => Err(Error::NotHomomorphism(x, y)),
    }
}

/// The magma `(x, y) ↦ g(x ⊕ y) ⊕ a` for an injective endomorphism `g`.
pub fn derived_magma(m: &FiniteMagma, g: &Homomorphism, a: usize) -> Result<FiniteMagma> {
    if g.source() != m || g.target() != m {
        return Err(Error::SignatureMismatch(
            "derived magma needs an endomorphism of the base".into(),
        ));
    }
    m.check_element(a)?;
    if let Some((x, y)) = g.injectivity_failure() {
        return Err(Error::NotInjective(x, y));
    }
    if let Some((x, y)) = g.check().witness {
        return Err(Error::NotHomomorphism(x, y));
    }
    FiniteMagma::from_fn(m.order(), |x, y| m.op(g.apply(m.op(x, y)), a))
}
