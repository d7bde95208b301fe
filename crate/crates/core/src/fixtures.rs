//! Small reference magmas used throughout tests, benches and the CLI.
//!
//! The two 3-element tables from the literature are printed there with
//! 1-based entries; they are stored here shifted down by one.

use crate::magma::FiniteMagma;

/// Non-associative, all three elements idempotent.
pub fn a2() -> FiniteMagma {
    FiniteMagma::from_rows(&[[0, 2, 1], [2, 1, 0], [1, 0, 2]]).expect("static table")
}

/// Non-associative, no idempotents.
pub fn a3() -> FiniteMagma {
    FiniteMagma::from_rows(&[[1, 0, 2], [0, 2, 1], [2, 1, 0]]).expect("static table")
}

/// `x ⊕ y = alpha (x + y) + beta (mod n)`.
pub fn affine(n: usize, alpha: usize, beta: usize) -> FiniteMagma {
    FiniteMagma::from_fn(n, |x, y| (alpha * (x + y) + beta) % n).expect("entries reduced mod n")
}

/// Z5 with `2(x + y)`.
pub fn f5a() -> FiniteMagma {
    affine(5, 2, 0)
}

/// Z9 with `2(x + y)`.
pub fn z9a() -> FiniteMagma {
    affine(9, 2, 0)
}

/// Addition table of the cyclic group of order `n`.
pub fn cyclic_group(n: usize) -> FiniteMagma {
    affine(n, 1, 0)
}

/// Every named fixture, for sweeps.
pub fn all() -> Vec<(&'static str, FiniteMagma)> {
    vec![
        ("singleton", FiniteMagma::singleton()),
        ("A2", a2()),
        ("A3", a3()),
        ("F5a", f5a()),
        ("Z9a", z9a()),
        ("Z5", cyclic_group(5)),
    ]
}
