//! A decision engine for finite commutative algebra.
//!
//! The crate constructs finite commutative rings and finite modules from
//! explicit operation tables, enumerates their ideal and submodule
//! lattices, localizes at multiplicatively closed subsets, and decides a
//! family of submodule properties (secondary, second, and their fixed-
//! witness S-relaxations; prime, primary; quasi cotorsion-freeness) with
//! machine-checkable witnesses and counterexamples. On top of the deciders
//! sits a battery of executable laws relating the properties, run over a
//! built-in collection of small universes.
//!
//! Everything is exhaustive: carriers are capped (default
//! [`module::DEFAULT_CARRIER_CAP`]), values are immutable after
//! construction, and all operations are pure, so sweeps parallelize freely
//! and reports are deterministic.

pub mod decide;
pub mod error;
pub mod fractions;
pub mod laws;
pub mod module;
pub mod report;
pub mod ring;
pub mod set;

pub use error::{EngineError, Result};
pub use fractions::{FractionModule, FractionRing};
pub use module::{
    enumerate_homs, enumerate_monos, ElementSet, FiniteModule, ModuleHom, ProductMode, Submodule,
    DEFAULT_CARRIER_CAP,
};
pub use report::{
    ActionCert, ActionOutcome, CertBundle, Counterexample, DecisionReport, Disqualification,
    DisqualifyReason, FailureDatum, PairBranch, PairCert, SFailure, SubmoduleCert, Witness,
};
pub use ring::{
    idealization_ideal, idealization_mcs, spectrum, FiniteRing, Ideal, MultClosedSet, RingHom,
    RingProvenance, Spectrum,
};
pub use set::ElemSet;
