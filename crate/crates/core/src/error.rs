//! Engine-wide error type.

use thiserror::Error;

/// Errors raised by constructors and enumeration procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// A constructor was given arguments that cannot produce a valid value
    /// (e.g. a cyclic ring of size < 2, or a quotient by the whole ring).
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    /// Two values that must live over the same ring (or module) do not.
    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    /// A table failed structural validation. Carries the axiom name and the
    /// witnessing elements, so the failure can be reproduced by hand.
    #[error("axiom violation: {axiom} (witness: {witness})")]
    AxiomViolation { axiom: String, witness: String },

    /// The multiplicative closure of a seed reached zero, so the seed cannot
    /// define a multiplicatively closed subset.
    #[error("not multiplicatively closed: closure of seed contains zero")]
    NotMultClosed,

    /// A lattice enumeration was requested on a carrier above the cap.
    #[error("carrier cap exceeded: size {size} > cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    /// An operation requiring an integral domain was invoked over a ring
    /// whose zero ideal is not prime.
    #[error("not an integral domain: the zero ideal is not prime")]
    NotADomain,

    /// An unrecognized law identifier.
    #[error("unknown law: {0}")]
    UnknownLaw(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
