//! Parametric ccm-magmas on intervals, in exact rational or float
//! arithmetic, with sampled axiom checks and classification at a unit.

mod check;
mod domain;
mod entries;
mod family;
mod formula;

pub use check::{
    classify_family, default_samples, half_has_no_inverse_check, monoid_formula_check, sampled_axiom_check,
    FamilyClassification, FlagEvidence, IdempotentSummary, SampleReport,
};
pub use domain::{q, qi, to_f64, Bound, Domain, Mobius, Q};
pub use entries::{catalog, harmonic_unit_interval, ids, lookup, midpoint_unit_interval};
pub use family::{Family, Formula, Mode, Value, FLOAT_TOLERANCE};
pub use formula::{Diagonal, ExactFormula, FloatFormula};
