//! Rings and modules of fractions over finite carriers.
//!
//! Fractions are built by literal pair-class enumeration: pairs (x, t)
//! with t ∈ S are identified when some u ∈ S kills the cross difference.
//! This matches the definition verbatim, is cheap at desk scale, and
//! doubles as the oracle behind saturation. The canonical representative
//! of a class is its least pair in lexicographic carrier order, which puts
//! the zero class at index 0.

use std::sync::Arc;

use crate::error::Result;
use crate::module::{FiniteModule, ModuleProvenance, Submodule};
use crate::ring::{FiniteRing, MultClosedSet, RingHom, RingProvenance};
use crate::set::ElemSet;

/// S⁻¹R for a finite ring, with the canonical map r ↦ r/1.
pub struct FractionRing {
    /// The ring of fractions itself.
    pub ring: Arc<FiniteRing>,
    pub base: Arc<FiniteRing>,
    pub s: MultClosedSet,
    /// r ↦ class of r/1.
    pub to_fractions: RingHom,
    s_elems: Vec<usize>,
    class_of_pair: Vec<usize>,
    reps: Vec<(usize, usize)>,
}

impl FractionRing {
    pub fn new(base: &Arc<FiniteRing>, s: &MultClosedSet) -> Self {
        assert!(base.same_structure(&s.ring), "S is not over this ring");
        let s_elems: Vec<usize> = s.members.to_vec();
        let equiv = |(a, t): (usize, usize), (b, u): (usize, usize)| {
            let diff = base.sub(base.mul(u, a), base.mul(t, b));
            s_elems.iter().any(|&v| base.mul(v, diff) == 0)
        };
        let mut reps: Vec<(usize, usize)> = Vec::new();
        let mut class_of_pair = vec![usize::MAX; base.size() * s_elems.len()];
        for a in base.elements() {
            for (ti, &t) in s_elems.iter().enumerate() {
                let class = match reps.iter().position(|&rep| equiv(rep, (a, t))) {
                    Some(c) => c,
                    None => {
                        reps.push((a, t));
                        reps.len() - 1
                    }
                };
                class_of_pair[a * s_elems.len() + ti] = class;
            }
        }
        let si = |t: usize| s_elems.iter().position(|&x| x == t).unwrap();
        let class_of = |a: usize, t: usize| class_of_pair[a * s_elems.len() + si(t)];
        let n = reps.len();
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for (i, &(a, t)) in reps.iter().enumerate() {
            for (j, &(b, u)) in reps.iter().enumerate() {
                add[i * n + j] = class_of(base.add(base.mul(u, a), base.mul(t, b)), base.mul(t, u));
                mul[i * n + j] = class_of(base.mul(a, b), base.mul(t, u));
            }
        }
        let names = reps
            .iter()
            .map(|&(a, t)| format!("{}/{}", base.name(a), base.name(t)))
            .collect();
        let one = class_of(base.one(), base.one());
        let label = format!("S^-1{}", base.label());
        let ring = FiniteRing::new_raw(label, add, mul, one, names, RingProvenance::Tables)
            .expect("fraction ring is a valid ring");
        let map: Vec<usize> = base.elements().map(|a| class_of(a, base.one())).collect();
        let to_fractions = RingHom {
            source: base.clone(),
            target: ring.clone(),
            map,
        };
        FractionRing {
            ring,
            base: base.clone(),
            s: s.clone(),
            to_fractions,
            s_elems,
            class_of_pair,
            reps,
        }
    }

    /// The class of num/den; `den` must lie in S.
    pub fn class_of(&self, num: usize, den: usize) -> usize {
        let si = self
            .s_elems
            .iter()
            .position(|&x| x == den)
            .expect("denominator must lie in S");
        self.class_of_pair[num * self.s_elems.len() + si]
    }

    /// Canonical representative (numerator, denominator) of a class.
    pub fn rep(&self, class: usize) -> (usize, usize) {
        self.reps[class]
    }
}

impl MultClosedSet {
    /// The saturation S*: all elements that become units in S⁻¹R.
    pub fn saturation(&self) -> MultClosedSet {
        let fr = FractionRing::new(&self.ring, self);
        let units = fr.ring.units();
        let members = ElemSet::from_elems(
            self.ring.size(),
            self.ring
                .elements()
                .filter(|&x| units.contains(fr.to_fractions.apply(x))),
        );
        MultClosedSet::new(self.ring.clone(), members)
            .expect("saturation is multiplicatively closed")
    }
}

/// S⁻¹M over S⁻¹R, with the canonical map m ↦ m/1.
pub struct FractionModule {
    /// The module of fractions, over `fraction_ring.ring`.
    pub module: Arc<FiniteModule>,
    pub base: Arc<FiniteModule>,
    pub s: MultClosedSet,
    pub fraction_ring: FractionRing,
    canonical: Vec<usize>,
    s_elems: Vec<usize>,
    class_of_pair: Vec<usize>,
}

impl FractionModule {
    pub fn new(base: &Arc<FiniteModule>, s: &MultClosedSet) -> Self {
        assert!(
            base.ring().same_structure(&s.ring),
            "S is not over the module's ring"
        );
        let fraction_ring = FractionRing::new(base.ring(), s);
        let s_elems: Vec<usize> = s.members.to_vec();
        let equiv = |(m, t): (usize, usize), (m2, u): (usize, usize)| {
            let diff = base.sub(base.act(u, m), base.act(t, m2));
            s_elems.iter().any(|&v| base.act(v, diff) == 0)
        };
        let mut reps: Vec<(usize, usize)> = Vec::new();
        let mut class_of_pair = vec![usize::MAX; base.size() * s_elems.len()];
        for m in base.elements() {
            for (ti, &t) in s_elems.iter().enumerate() {
                let class = match reps.iter().position(|&rep| equiv(rep, (m, t))) {
                    Some(c) => c,
                    None => {
                        reps.push((m, t));
                        reps.len() - 1
                    }
                };
                class_of_pair[m * s_elems.len() + ti] = class;
            }
        }
        let si = |t: usize| s_elems.iter().position(|&x| x == t).unwrap();
        let class_of = |m: usize, t: usize| class_of_pair[m * s_elems.len() + si(t)];
        let ring = &fraction_ring.ring;
        let base_ring = base.ring();
        let n = reps.len();
        let mut add = vec![0; n * n];
        for (i, &(m, t)) in reps.iter().enumerate() {
            for (j, &(m2, u)) in reps.iter().enumerate() {
                add[i * n + j] = class_of(
                    base.add(base.act(u, m), base.act(t, m2)),
                    base_ring.mul(t, u),
                );
            }
        }
        let mut act = vec![0; ring.size() * n];
        for rc in ring.elements() {
            let (a, t) = fraction_ring.rep(rc);
            for (j, &(m, u)) in reps.iter().enumerate() {
                act[rc * n + j] = class_of(base.act(a, m), base_ring.mul(t, u));
            }
        }
        let names = reps
            .iter()
            .map(|&(m, t)| format!("{}/{}", base.name(m), base_ring.name(t)))
            .collect();
        let module = FiniteModule::new_raw(
            format!("S^-1{}", base.label()),
            ring.clone(),
            add,
            act,
            names,
            ModuleProvenance::Tables,
        )
        .expect("fraction module is a valid module");
        let canonical: Vec<usize> = base
            .elements()
            .map(|m| class_of(m, base_ring.one()))
            .collect();
        FractionModule {
            module,
            base: base.clone(),
            s: s.clone(),
            fraction_ring,
            canonical,
            s_elems,
            class_of_pair,
        }
    }

    pub fn class_of(&self, m: usize, den: usize) -> usize {
        let si = self
            .s_elems
            .iter()
            .position(|&x| x == den)
            .expect("denominator must lie in S");
        self.class_of_pair[m * self.s_elems.len() + si]
    }

    /// Image of m under the canonical map m ↦ m/1.
    pub fn canonical_image(&self, m: usize) -> usize {
        self.canonical[m]
    }

    /// Kernel of the canonical map; equals the S-torsion of the base.
    pub fn canonical_kernel(&self) -> ElemSet {
        ElemSet::from_elems(
            self.base.size(),
            self.base.elements().filter(|&m| self.canonical[m] == 0),
        )
    }

    /// S⁻¹N inside S⁻¹M: the classes of pairs with numerator in N.
    pub fn localize(&self, n: &Submodule) -> Result<Submodule> {
        assert!(
            n.module().same_structure(&self.base),
            "submodule is not over the base module"
        );
        let mut members = ElemSet::empty(self.module.size());
        for m in n.members().iter() {
            for &t in &self.s_elems {
                members.insert(self.class_of(m, t));
            }
        }
        Submodule::new(self.module.clone(), members)
    }
}
