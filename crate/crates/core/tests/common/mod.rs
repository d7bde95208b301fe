#![allow(dead_code)]

use ccm_core::{
    generate_quasigroup, idempotents, subalgebra_closure, FiniteMagma, Homomorphism, ToyodaParams,
};

/// Every homomorphism `src -> tgt`, by assigning images one element at a
/// time and propagating `h(i ⊕ j) = h(i) ⊕ h(j)`.
pub fn homomorphisms(src: &FiniteMagma, tgt: &FiniteMagma) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search(src, tgt, vec![None; src.order()], &mut out);
    out
}

fn propagate(src: &FiniteMagma, tgt: &FiniteMagma, map: &mut [Option<usize>]) -> bool {
    loop {
        let mut changed = false;
        for i in src.elements() {
            let Some(hi) = map[i] else { continue };
            for j in src.elements() {
                let Some(hj) = map[j] else { continue };
                let k = src.op(i, j);
                let v = tgt.op(hi, hj);
                match map[k] {
                    Some(hk) if hk != v => return false,
                    Some(_) => {}
                    None => {
                        map[k] = Some(v);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(src: &FiniteMagma, tgt: &FiniteMagma, map: Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
    let Some(free) = map.iter().position(Option::is_none) else {
        out.push(map.into_iter().map(Option::unwrap).collect());
        return;
    };
    for t in tgt.elements() {
        let mut next = map.clone();
        next[free] = Some(t);
        if propagate(src, tgt, &mut next) {
            search(src, tgt, next, out);
        }
    }
}

pub fn hom(src: &FiniteMagma, tgt: &FiniteMagma, map: Vec<usize>) -> Homomorphism {
    Homomorphism::new(src.clone(), tgt.clone(), map).unwrap()
}

/// Orders 2..=32 cycling with the seed.
pub fn generated_order(seed: u64) -> usize {
    2 + (seed % 31) as usize
}

pub fn generated(seeds: std::ops::Range<u64>) -> Vec<(u64, FiniteMagma, ToyodaParams)> {
    seeds
        .map(|s| {
            let (m, p) = generate_quasigroup(generated_order(s), s).unwrap();
            (s, m, p)
        })
        .collect()
}

/// Closures of `{e}` and `{e, x}` for each idempotent `e` and element `x`,
/// deduplicated.
pub fn subalgebras_with_idempotent(m: &FiniteMagma) -> Vec<(Vec<usize>, usize)> {
    let mut out: Vec<(Vec<usize>, usize)> = Vec::new();
    for e in idempotents(m) {
        for x in m.elements() {
            let xs = subalgebra_closure(m, &[e, x]).unwrap();
            if !out.contains(&(xs.clone(), e)) {
                out.push((xs, e));
            }
        }
    }
    out
}
