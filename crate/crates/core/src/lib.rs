//! Finite and parametric commutative cancellative medial magmas.
//!
//! Finite magmas are Cayley tables over `0..n`. The crate checks the axioms
//! exhaustively, builds internal monoids and groups, evaluates relations and
//! the kite construction, generates quasigroups in Toyoda form, and samples
//! exact-rational families over intervals.

pub mod axioms;
pub mod catalog;
pub mod classify;
pub mod error;
pub mod fixtures;
pub mod generation;
pub mod group;
pub mod hom;
pub mod internal;
pub mod kite;
pub mod magma;
pub mod relation;

pub use axioms::{check_axioms, idempotent_subalgebra, idempotents, is_ccm, subalgebra_closure, weak_maltsev_p, AxiomReport};
pub use classify::{classify, classify_finite, finite_flags, ClassificationLabel, Label, PropertyFlags};
pub use error::{Error, Result};
pub use generation::{extract_group, generate_quasigroup, idempotent_parity_audit, ToyodaParams};
pub use group::{groups_isomorphic, invariant_factors, AbelianGroupSpec, GroupTable};
pub use hom::{derived_magma, is_homomorphism, pair_hom, Homomorphism};
pub use internal::{
    associativity_equivalences, double, doubling_additivity_check, internal_group, internal_monoid,
    midpoint_distributivity_check, monoid_isomorphism, negate, GroupStructure, MonoidStructure,
};
pub use kite::{build_pullback, kite_theta, KiteInput, KiteMaps, PullbackSpan};
pub use magma::{product_magma, Check, FiniteMagma};
pub use relation::{
    equalizer_relation, subalgebra_relation, transitivity_criterion, BinaryRelation, CongruenceReport,
    SubalgebraRelation,
};
