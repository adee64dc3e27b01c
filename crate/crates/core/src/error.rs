use crate::ring::Elem;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty ring: a ring needs at least one element")]
    EmptyRing,

    #[error("ring of size {size} exceeds the size cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("ring axiom '{axiom}' fails at ({}, {}, {})", .triple.0, .triple.1, .triple.2)]
    AxiomViolation {
        axiom: &'static str,
        triple: (Elem, Elem, Elem),
    },

    #[error("malformed ring table: {0}")]
    MalformedTable(String),

    #[error("not a ring automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("exhaustive automorphism search is capped at size {cap} (ring has {size}); supply generators")]
    AutomorphismSearchCap { size: usize, cap: usize },

    #[error("element {element} is out of range for a ring of size {size}")]
    ElementOutOfRange { element: Elem, size: usize },

    #[error("unsupported monoid: {0}")]
    UnsupportedMonoid(String),

    #[error("monoid element {element} does not belong to {monoid}")]
    NotInMonoid { element: String, monoid: String },

    #[error("a support window is required to enumerate decompositions in {0}")]
    WindowRequired(String),

    #[error("empty set has no least element")]
    EmptySet,

    #[error("the zero series has no least support element")]
    ZeroSeries,

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("series belong to different series rings")]
    ContextMismatch,

    #[error("subset is not closed under addition")]
    NotAdditivelyClosed,

    #[error("ideal is not right s-unital: element {0} has no right unit inside the ideal")]
    NotRightSUnital(Elem),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
