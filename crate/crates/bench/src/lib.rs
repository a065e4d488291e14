//! Shared fixtures for the engine benchmarks.

use std::sync::Arc;

use finalg::{ElemSet, FiniteModule, FiniteRing, MultClosedSet};

pub fn cyclic(n: usize) -> Arc<FiniteRing> {
    FiniteRing::cyclic(n).expect("benchmark modulus")
}

pub fn regular(ring: &Arc<FiniteRing>) -> Arc<FiniteModule> {
    FiniteModule::regular(ring)
}

pub fn set(ring: &Arc<FiniteRing>, elems: &[usize]) -> MultClosedSet {
    MultClosedSet::new(
        ring.clone(),
        ElemSet::from_elems(ring.size(), elems.iter().copied()),
    )
    .expect("benchmark set")
}
