//! Finite abelian groups: invariant-factor specs, verification of group
//! tables, and isomorphism testing through invariant factors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magma::FiniteMagma;

/// `Z_{d₁} × … × Z_{d_k}` with `d₁ | d₂ | … | d_k` and every `dᵢ ≥ 2`.
/// Elements are mixed-radix: the last factor varies fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupSpec {
    factors: Vec<usize>,
}

impl AbelianGroupSpec {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::NotAbelianGroup(format!(
                "cyclic factors must have order at least 2: {factors:?}"
            )));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::NotAbelianGroup(format!(
                "factors {factors:?} are not in invariant-factor form"
            )));
        }
        Ok(AbelianGroupSpec { factors })
    }

    /// Normalizes any list of cyclic orders (for instance prime powers) to
    /// invariant-factor form.
    pub fn from_cyclic_orders(orders: &[usize]) -> Result<Self> {
        let mut powers: Vec<(usize, u32)> = Vec::new();
        for &d in orders.iter().filter(|&&d| d > 1) {
            for (p, k) in factorize(d) {
                powers.push((p, k));
            }
        }
        Self::new(invariant_from_prime_powers(&powers))
    }

    pub fn trivial() -> Self {
        AbelianGroupSpec { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut digits = vec![0; self.factors.len()];
        for (i, &d) in self.factors.iter().enumerate().rev() {
            digits[i] = x % d;
            x /= d;
        }
        digits
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        self.factors
            .iter()
            .zip(digits)
            .fold(0, |acc, (&d, &v)| acc * d + v % d)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (dx, dy) = (self.decode(x), self.decode(y));
        let sum: Vec<usize> = dx.iter().zip(&dy).map(|(a, b)| a + b).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, x: usize) -> usize {
        let digits: Vec<usize> = self
            .decode(x)
            .iter()
            .zip(&self.factors)
            .map(|(&v, &d)| (d - v) % d)
            .collect();
        self.encode(&digits)
    }

    pub fn table(&self) -> GroupTable {
        let n = self.order();
        GroupTable {
            table: FiniteMagma::from_fn(n, |x, y| self.add(x, y)).expect("sum stays in range"),
            identity: 0,
        }
    }
}

/// A Cayley table claimed to be an abelian group with the given identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub table: FiniteMagma,
    pub identity: usize,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.table.order()
    }

    /// Exhaustively checks unit, commutativity, associativity and inverses.
    pub fn verify(&self) -> Result<()> {
        let m = &self.table;
        let e = self.identity;
        m.check_element(e)?;
        let fail = |what: String| Err(Error::NotAbelianGroup(what));
        for x in m.elements() {
            if m.op(e, x) != x || m.op(x, e) != x {
                return fail(format!("{e} is not a unit at {x}"));
            }
            if !m.elements().any(|y| m.op(x, y) == e) {
                return fail(format!("{x} has no inverse"));
            }
            for y in m.elements() {
                if m.op(x, y) != m.op(y, x) {
                    return fail(format!("not commutative at ({x}, {y})"));
                }
                let xy = m.op(x, y);
                for z in m.elements() {
                    if m.op(xy, z) != m.op(x, m.op(y, z)) {
                        return fail(format!("not associative at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        Ok(())
    }

    fn element_orders(&self) -> Vec<usize> {
        let m = &self.table;
        m.elements()
            .map(|x| {
                let mut acc = x;
                let mut k = 1;
                while acc != self.identity {
                    acc = m.op(acc, x);
                    k += 1;
                }
                k
            })
            .collect()
    }
}

/// Invariant factors `d₁ | … | d_k`, ascending, read off the element orders.
/// For each prime `p`, `|G[p^j]| / |G[p^{j-1}]| = p^{m_j}` where `m_j` is
/// the number of primary factors of exponent at least `j`.
pub fn invariant_factors(g: &GroupTable) -> Result<Vec<usize>> {
    g.verify()?;
    let orders = g.element_orders();
    let n = g.order();
    let mut powers = Vec::new();
    for (p, max_k) in factorize(n) {
        let mut counts = vec![1usize];
        let mut q = 1;
        for _ in 0..max_k {
            q *= p;
            counts.push(orders.iter().filter(|&&o| q % o == 0).count());
        }
        let at_least: Vec<u32> = counts
            .windows(2)
            .map(|w| exact_log(w[1] / w[0], p))
            .collect::<Result<_>>()?;
        for (j, &m) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..m - next {
                powers.push((p, j as u32 + 1));
            }
        }
    }
    let factors = invariant_from_prime_powers(&powers);
    if factors.iter().product::<usize>() != n {
        return Err(Error::Invariant(format!(
            "invariant factors {factors:?} do not multiply to {n}"
        )));
    }
    Ok(factors)
}

pub fn groups_isomorphic(g1: &GroupTable, g2: &GroupTable) -> Result<bool> {
    Ok(invariant_factors(g1)? == invariant_factors(g2)?)
}

fn exact_log(mut v: usize, p: usize) -> Result<u32> {
    let mut k = 0;
    while v > 1 {
        if v % p != 0 {
            return Err(Error::NotAbelianGroup(format!(
                "element count ratio is not a power of {p}"
            )));
        }
        v /= p;
        k += 1;
    }
    Ok(k)
}

/// Prime factorization in ascending prime order.
pub(crate) fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Combines primary cyclic factors `p^k` into ascending invariant factors.
pub(crate) fn invariant_from_prime_powers(powers: &[(usize, u32)]) -> Vec<usize> {
    let mut by_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    for &(p, k) in powers.iter().filter(|&&(_, k)| k > 0) {
        match by_prime.iter_mut().find(|(q, _)| *q == p) {
            Some((_, ks)) => ks.push(k),
            None => by_prime.push((p, vec![k])),
        }
    }
    let len = by_prime.iter().map(|(_, ks)| ks.len()).max().unwrap_or(0);
    let mut factors = vec![1usize; len];
    for (p, ks) in &mut by_prime {
        ks.sort_unstable_by(|a, b| b.cmp(a));
        for (i, &k) in ks.iter().enumerate() {
            factors[len - 1 - i] *= p.pow(k);
        }
    }
    debug_assert!(factors.windows(2).all(|w| w[1] % w[0] == 0));
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::cyclic_group;

    fn klein() -> GroupTable {
        AbelianGroupSpec::new(vec![2, 2]).unwrap().table()
    }

    #[test]
    fn spec_validation() {
        assert!(AbelianGroupSpec::new(vec![2, 3]).is_err());
        assert!(AbelianGroupSpec::new(vec![1]).is_err());
        assert_eq!(AbelianGroupSpec::new(vec![2, 6]).unwrap().order(), 12);
        assert_eq!(
            AbelianGroupSpec::from_cyclic_orders(&[2, 3, 4]).unwrap().factors(),
            &[2, 12]
        );
        assert_eq!(AbelianGroupSpec::from_cyclic_orders(&[]).unwrap().order(), 1);
    }

    #[test]
    fn mixed_radix_round_trip() {
        let g = AbelianGroupSpec::new(vec![2, 4, 8]).unwrap();
        for x in 0..g.order() {
            assert_eq!(g.encode(&g.decode(x)), x);
            assert_eq!(g.add(x, g.neg(x)), 0);
        }
    }

    #[test]
    fn factor_examples() {
        let z5 = GroupTable {
            table: cyclic_group(5),
            identity: 0,
        };
        assert_eq!(invariant_factors(&z5).unwrap(), vec![5]);
        assert_eq!(invariant_factors(&klein()).unwrap(), vec![2, 2]);
        let trivial = AbelianGroupSpec::trivial().table();
        assert_eq!(invariant_factors(&trivial).unwrap(), Vec::<usize>::new());
        for f in [vec![2, 6], vec![3, 9], vec![2, 2, 4], vec![12], vec![2, 4, 8]] {
            let g = AbelianGroupSpec::new(f.clone()).unwrap().table();
            assert_eq!(invariant_factors(&g).unwrap(), f);
        }
    }

    #[test]
    fn isomorphism_by_factors() {
        let z4 = GroupTable {
            table: cyclic_group(4),
            identity: 0,
        };
        assert!(!groups_isomorphic(&z4, &klein()).unwrap());
        assert!(groups_isomorphic(&z4, &z4).unwrap());
        let z6 = GroupTable {
            table: cyclic_group(6),
            identity: 0,
        };
        let z2z3 = AbelianGroupSpec::from_cyclic_orders(&[2, 3]).unwrap().table();
        assert!(groups_isomorphic(&z6, &z2z3).unwrap());
    }

    #[test]
    fn non_groups_rejected() {
        let g = GroupTable {
            table: crate::fixtures::f5a(),
            identity: 0,
        };
        assert!(matches!(invariant_factors(&g), Err(Error::NotAbelianGroup(_))));
    }
}
