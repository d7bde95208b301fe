//! Random commutative medial quasigroups in Toyoda form
//! `x ⊕ y = φ(x + y) + c`, and recovery of the underlying abelian group.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::axioms::idempotents;
use crate::error::{Error, Result};
use crate::group::{factorize, invariant_from_prime_powers, AbelianGroupSpec, GroupTable};
use crate::magma::FiniteMagma;

/// Provenance of a generated quasigroup. The automorphism multiplies the
/// coordinate of the `i`-th invariant factor by the unit `multipliers[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToyodaParams {
    pub group: AbelianGroupSpec,
    pub multipliers: Vec<usize>,
    pub translation: usize,
    pub relabeling: Vec<usize>,
}

impl ToyodaParams {
    pub fn automorphism(&self, x: usize) -> usize {
        let digits: Vec<usize> = self
            .group
            .decode(x)
            .iter()
            .zip(&self.multipliers)
            .map(|(&v, &u)| v * u)
            .collect();
        self.group.encode(&digits)
    }

    /// Checks the multipliers are units, the translation is in range, and
    /// the relabeling is a permutation.
    pub fn validate(&self) -> Result<()> {
        let n = self.group.order();
        let factors = self.group.factors();
        if self.multipliers.len() != factors.len() {
            return Err(Error::MapLength {
                expected: factors.len(),
                found: self.multipliers.len(),
            });
        }
        for (&u, &d) in self.multipliers.iter().zip(factors) {
            if u >= d || u.gcd(&d) != 1 {
                return Err(Error::Invariant(format!("{u} is not a unit modulo {d}")));
            }
        }
        if self.translation >= n {
            return Err(Error::ElementOutOfRange {
                element: self.translation,
                order: n,
            });
        }
        let mut seen = vec![false; n];
        if self.relabeling.len() != n {
            return Err(Error::MapLength {
                expected: n,
                found: self.relabeling.len(),
            });
        }
        for &p in &self.relabeling {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invariant("relabeling is not a permutation".into()));
            }
        }
        Ok(())
    }

    /// The relabeled Cayley table.
    pub fn table(&self) -> Result<FiniteMagma> {
        self.validate()?;
        let g = &self.group;
        let base = FiniteMagma::from_fn(g.order(), |x, y| {
            g.add(self.automorphism(g.add(x, y)), self.translation)
        })?;
        base.relabel(&self.relabeling)
    }
}

/// Builds a random quasigroup of the given order, deterministically from `seed`.
pub fn generate_quasigroup(order: usize, seed: u64) -> Result<(FiniteMagma, ToyodaParams)> {
    if order == 0 {
        return Err(Error::EmptyCarrier);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let group = random_group(order, &mut rng)?;
    let multipliers = group
        .factors()
        .iter()
        .map(|&d| random_unit(d, &mut rng))
        .collect();
    let translation = rng.random_range(0..order);
    let mut relabeling: Vec<usize> = (0..order).collect();
    relabeling.shuffle(&mut rng);
    let params = ToyodaParams {
        group,
        multipliers,
        translation,
        relabeling,
    };
    let table = params.table()?;
    Ok((table, params))
}

/// An abelian group of the given order, choosing for each prime power `p^k`
/// in the order a uniformly random partition of `k`.
pub fn random_group<R: Rng>(order: usize, rng: &mut R) -> Result<AbelianGroupSpec> {
    let mut powers = Vec::new();
    for (p, k) in factorize(order) {
        let parts = partitions(k);
        let chosen = &parts[rng.random_range(0..parts.len())];
        powers.extend(chosen.iter().map(|&e| (p, e)));
    }
    AbelianGroupSpec::new(invariant_from_prime_powers(&powers))
}

fn random_unit<R: Rng>(d: usize, rng: &mut R) -> usize {
    loop {
        let u = rng.random_range(1..d);
        if u.gcd(&d) == 1 {
            return u;
        }
    }
}

/// All partitions of `k`, parts in non-increasing order.
fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// The table `A(i, j) = k` where `k ⊕ e = i ⊕ j`. Returns `None` if the
/// result fails abelian-group verification.
pub fn extract_group(m: &FiniteMagma, e: usize) -> Result<Option<GroupTable>> {
    m.check_element(e)?;
    let n = m.order();
    let mut solve = vec![None; n];
    for k in m.elements() {
        let v = m.op(k, e);
        if let Some(prev) = solve[v].replace(k) {
            return Err(Error::NotCancellative("column", prev, k));
        }
    }
    let solve: Vec<usize> = solve
        .into_iter()
        .enumerate()
        .map(|(v, k)| k.ok_or(Error::NotCancellative("column", e, v)))
        .collect::<Result<_>>()?;
    let group = GroupTable {
        table: FiniteMagma::from_fn(n, |i, j| solve[m.op(i, j)])?,
        identity: e,
    };
    Ok(group.verify().ok().map(|_| group))
}

/// True when the number of idempotents is zero or odd.
pub fn idempotent_parity_audit(m: &FiniteMagma) -> bool {
    let count = idempotents(m).len();
    count == 0 || count % 2 == 1
}
