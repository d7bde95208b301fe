use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("magma order must be at least 1")]
    EmptyCarrier,

    #[error("table entry {entry} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        entry: usize,
        order: usize,
    },

    #[error("element {element} is out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("map has length {found}, expected {expected}")]
    MapLength { expected: usize, found: usize },

    #[error("map is not a homomorphism: fails at ({0}, {1})")]
    NotHomomorphism(usize, usize),

    #[error("map is not injective: {0} and {1} share an image")]
    NotInjective(usize, usize),

    #[error("homomorphisms do not share a common target")]
    TargetMismatch,

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),

    #[error("relation carriers differ; predicate needs a square relation")]
    CarrierMismatch,

    #[error("subset is not closed under the operation; its closure is {closure:?}")]
    NotClosed { closure: Vec<usize> },

    #[error("unit {0} is not a member of the subalgebra")]
    UnitNotInSubset(usize),

    #[error("not cancellative: no unique solution for {0} at ({1}, {2})")]
    NotCancellative(&'static str, usize, usize),

    #[error("not an abelian group: {0}")]
    NotAbelianGroup(String),

    #[error("kite diagram invalid: {0}")]
    Kite(String),

    #[error("flag combination {0} is not one of the six admissible columns")]
    InadmissibleFlags(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("{value} lies outside the domain {domain}")]
    OutsideDomain { value: String, domain: String },

    #[error("formula degenerates at ({0}, {1})")]
    Degenerate(String, String),

    #[error("closure violation: {x} op {y} = {result} leaves the domain {domain}")]
    ClosureViolation {
        x: String,
        y: String,
        result: String,
        domain: String,
    },

    #[error("family {0} has no designated idempotent unit")]
    MissingUnit(String),

    #[error("unit {unit} of family {family} is not an idempotent of its domain")]
    UnitNotIdempotent { family: String, unit: String },

    #[error("unknown family id {id:?}; available: {}", available.join(", "))]
    UnknownFamily { id: String, available: Vec<String> },
}
