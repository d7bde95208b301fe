//! Inputs shared by the benchmarks in `benches/`.

use ccm_core::{generate_quasigroup, idempotents, FiniteMagma};

/// Orders used for the finite-magma benchmarks.
pub const ORDERS: [usize; 4] = [9, 15, 33, 63];

/// A generated ccm quasigroup of the given order with one of its
/// idempotents. Seeds are tried in order until one has an idempotent.
pub fn sample_magma(order: usize) -> (FiniteMagma, usize) {
    (0..)
        .find_map(|seed| {
            let (m, _) = generate_quasigroup(order, seed).expect("order is positive");
            idempotents(&m).first().copied().map(|e| (m, e))
        })
        .expect("some seed yields an idempotent")
}
