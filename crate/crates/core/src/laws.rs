//! Executable laws over universes.
//!
//! A universe bundles a ring, a multiplicatively closed subset, and a
//! module. Each law quantifies exhaustively over the submodules (and
//! ideals, pairs, homomorphisms) of the universe and reports pass, fail
//! with a re-checkable counterexample, or inapplicable when no instance
//! satisfies the hypotheses. Proved-mode laws are expected to pass on
//! every applicable universe; a failure indicates an engine bug. L18 is
//! exploratory: it records a truth table instead of asserting.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::decide::{
    is_quasi_s_cotorsion_free, is_quasi_s_cotorsion_free_mod, is_s_primary, is_s_second,
    is_s_secondary, is_secondary, s_secondary_witnesses, SecondaryForm,
};
use crate::error::{EngineError, Result};
use crate::fractions::FractionModule;
use crate::module::{enumerate_monos, FiniteModule, ProductMode, Submodule};
use crate::ring::{idealization_ideal, idealization_mcs, spectrum, FiniteRing, MultClosedSet};
use crate::set::ElemSet;

/// One factor of a product universe.
#[derive(Clone)]
pub struct UniversePart {
    pub ring: Arc<FiniteRing>,
    pub s: MultClosedSet,
    pub module: Arc<FiniteModule>,
}

/// Extra structure a universe may carry, enabling the product and
/// idealization laws.
#[derive(Clone)]
pub enum UniverseStructure {
    Plain,
    /// The module is the componentwise product of the parts' modules over
    /// the product of their rings, and S is the product of their S's.
    Product(Vec<UniversePart>),
    /// The ring is base(+)module and S is base_s(+)n_part.
    Idealization {
        base_ring: Arc<FiniteRing>,
        base_module: Arc<FiniteModule>,
        base_s: MultClosedSet,
        n_part: Submodule,
    },
}

/// A bundle (ring, S, module) over which laws are checked.
#[derive(Clone)]
pub struct Universe {
    pub label: String,
    pub ring: Arc<FiniteRing>,
    pub s: MultClosedSet,
    pub module: Arc<FiniteModule>,
    pub structure: UniverseStructure,
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Universe({})", self.label)
    }
}

impl Universe {
    pub fn plain(
        label: impl Into<String>,
        ring: Arc<FiniteRing>,
        s: MultClosedSet,
        module: Arc<FiniteModule>,
    ) -> Result<Universe> {
        let u = Universe {
            label: label.into(),
            ring,
            s,
            module,
            structure: UniverseStructure::Plain,
        };
        u.validate()?;
        Ok(u)
    }

    /// Builds a universe, detecting product or idealization structure from
    /// the provenance of the ring and module so the structural laws apply
    /// to declared bundles. Falls back to a plain universe.
    pub fn infer(
        label: impl Into<String>,
        ring: Arc<FiniteRing>,
        s: MultClosedSet,
        module: Arc<FiniteModule>,
    ) -> Result<Universe> {
        let label = label.into();
        if let Some(parts) = infer_product_parts(&ring, &module, &s) {
            let u = Universe {
                label,
                ring,
                s,
                module,
                structure: UniverseStructure::Product(parts),
            };
            u.validate()?;
            return Ok(u);
        }
        if let Some((base_ring, base_module, base_s, n_part)) =
            infer_idealization_parts(&ring, &module, &s)
        {
            let u = Universe {
                label,
                ring,
                s,
                module,
                structure: UniverseStructure::Idealization {
                    base_ring,
                    base_module,
                    base_s,
                    n_part,
                },
            };
            u.validate()?;
            return Ok(u);
        }
        Universe::plain(label, ring, s, module)
    }

    /// Checks ring/set/module coherence and, for structured universes,
    /// that the declared parts actually assemble into the bundle.
    pub fn validate(&self) -> Result<()> {
        if !self.s.ring.same_structure(&self.ring) {
            return Err(EngineError::TypeMismatch(
                "S is not over the universe ring".into(),
            ));
        }
        if !self.module.ring().same_structure(&self.ring) {
            return Err(EngineError::TypeMismatch(
                "module is not over the universe ring".into(),
            ));
        }
        self.s.validate()?;
        match &self.structure {
            UniverseStructure::Plain => {}
            UniverseStructure::Product(parts) => {
                if parts.len() < 2 {
                    return Err(EngineError::InvalidConstruction(
                        "product universe needs at least two parts".into(),
                    ));
                }
                let size: usize = parts.iter().map(|p| p.module.size()).product();
                if size != self.module.size() {
                    return Err(EngineError::TypeMismatch(
                        "product parts do not match the module size".into(),
                    ));
                }
                let mut expect = ElemSet::empty(self.ring.size());
                for combo in cartesian(
                    &parts
                        .iter()
                        .map(|p| p.s.members.to_vec())
                        .collect::<Vec<_>>(),
                ) {
                    expect.insert(product_index(parts, &combo));
                }
                if expect != self.s.members {
                    return Err(EngineError::TypeMismatch(
                        "S is not the product of the part S's".into(),
                    ));
                }
            }
            UniverseStructure::Idealization {
                base_ring,
                base_module,
                base_s,
                n_part,
            } => {
                let rebuilt = FiniteRing::idealization(base_ring, base_module)?;
                if !rebuilt.same_structure(&self.ring) {
                    return Err(EngineError::TypeMismatch(
                        "ring is not the idealization of the declared parts".into(),
                    ));
                }
                let expect = idealization_mcs(&self.ring, base_s, n_part)?;
                if expect.members != self.s.members {
                    return Err(EngineError::TypeMismatch("S is not base_s(+)n_part".into()));
                }
            }
        }
        Ok(())
    }
}

/// Factor chain of a left-nested product bundle, or None when the ring
/// and module are not product-shaped in matching ways.
fn flatten_product(
    ring: &Arc<FiniteRing>,
    module: &Arc<FiniteModule>,
) -> Vec<(Arc<FiniteRing>, Arc<FiniteModule>)> {
    use crate::module::ModuleProvenance;
    use crate::ring::RingProvenance;
    if let (
        RingProvenance::Product { left, right },
        ModuleProvenance::ProductRing {
            left: lm,
            right: rm,
        },
    ) = (ring.provenance(), module.provenance())
    {
        if lm.ring().same_structure(left) && rm.ring().same_structure(right) {
            let mut out = flatten_product(left, lm);
            out.push((right.clone(), rm.clone()));
            return out;
        }
    }
    vec![(ring.clone(), module.clone())]
}

fn infer_product_parts(
    ring: &Arc<FiniteRing>,
    module: &Arc<FiniteModule>,
    s: &MultClosedSet,
) -> Option<Vec<UniversePart>> {
    let chain = flatten_product(ring, module);
    if chain.len() < 2 {
        return None;
    }
    // project S onto each coordinate and require S to be their product
    let sizes: Vec<usize> = chain.iter().map(|(_, m)| m.size()).collect();
    let mut coords: Vec<ElemSet> = chain
        .iter()
        .map(|(r, _)| ElemSet::empty(r.size()))
        .collect();
    for e in s.members.iter() {
        let mut rest = e;
        for i in (1..sizes.len()).rev() {
            coords[i].insert(rest % sizes[i]);
            rest /= sizes[i];
        }
        coords[0].insert(rest);
    }
    let parts: Vec<UniversePart> = chain
        .iter()
        .zip(coords)
        .map(|((r, m), members)| {
            MultClosedSet::new(r.clone(), members)
                .ok()
                .map(|s| UniversePart {
                    ring: r.clone(),
                    s,
                    module: m.clone(),
                })
        })
        .collect::<Option<_>>()?;
    let mut expect = ElemSet::empty(ring.size());
    for combo in cartesian(
        &parts
            .iter()
            .map(|p| p.s.members.to_vec())
            .collect::<Vec<_>>(),
    ) {
        expect.insert(product_index(&parts, &combo));
    }
    (expect == s.members).then_some(parts)
}

fn infer_idealization_parts(
    ring: &Arc<FiniteRing>,
    module: &Arc<FiniteModule>,
    s: &MultClosedSet,
) -> Option<(Arc<FiniteRing>, Arc<FiniteModule>, MultClosedSet, Submodule)> {
    use crate::module::ModuleProvenance;
    use crate::ring::RingProvenance;
    let RingProvenance::Idealization {
        base,
        module: base_module,
    } = ring.provenance()
    else {
        return None;
    };
    if !matches!(module.provenance(), ModuleProvenance::Regular) {
        return None;
    }
    let mut s0 = ElemSet::empty(base.size());
    let mut n0 = ElemSet::empty(base_module.size());
    for e in s.members.iter() {
        let (a, m) = ring.unpair(e);
        s0.insert(a);
        n0.insert(m);
    }
    let base_s = MultClosedSet::new(base.clone(), s0).ok()?;
    let n_part = Submodule::new(base_module.clone(), n0).ok()?;
    let expect = idealization_mcs(ring, &base_s, &n_part).ok()?;
    (expect.members == s.members).then_some((base.clone(), base_module.clone(), base_s, n_part))
}

/// Element index of a tuple in a left-nested product module.
fn product_index(parts: &[UniversePart], combo: &[usize]) -> usize {
    let mut idx = combo[0];
    for (part, &c) in parts.iter().zip(combo).skip(1) {
        idx = idx * part.module.size() + c;
    }
    idx
}

fn cartesian(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .iter()
            .flat_map(|prefix| {
                list.iter().map(move |&x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out
}

/// Identifiers of the executable laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LawId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    L7,
    L8,
    L9,
    L10,
    L11,
    L12,
    L13,
    L14,
    L15,
    L16,
    L17,
    L18,
    L19,
    L20,
}

impl LawId {
    pub const ALL: [LawId; 20] = [
        LawId::L1,
        LawId::L2,
        LawId::L3,
        LawId::L4,
        LawId::L5,
        LawId::L6,
        LawId::L7,
        LawId::L8,
        LawId::L9,
        LawId::L10,
        LawId::L11,
        LawId::L12,
        LawId::L13,
        LawId::L14,
        LawId::L15,
        LawId::L16,
        LawId::L17,
        LawId::L18,
        LawId::L19,
        LawId::L20,
    ];

    pub fn mode(self) -> LawMode {
        if self == LawId::L18 {
            LawMode::Exploratory
        } else {
            LawMode::Proved
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            LawId::L1 => "the four forms of the S-secondary condition agree",
            LawId::L2 => {
                "S-secondary basics: secondary lift, monotonicity, saturation, localization"
            }
            LawId::L3 => "at S = {1}, S-secondary coincides with secondary",
            LawId::L4 => "S-secondary submodules have S-prime radical annihilators",
            LawId::L5 => "two-factor products decide S-secondary componentwise",
            LawId::L6 => "three-factor products decide S-secondary componentwise",
            LawId::L7 => "some witness s has sN least among the śN and the largest colon",
            LawId::L8 => "S-secondary iff the localization is secondary plus a least witness",
            LawId::L9 => "S-secondary iff sN is secondary for some s in S",
            LawId::L10 => {
                "with √Ann(N) inside Jac(R): secondary iff prime radical and secondary at \
                 every maximal complement"
            }
            LawId::L11 => {
                "over a quasilocal ring: secondary iff prime radical and secondary at the \
                 maximal complement"
            }
            LawId::L12 => "monomorphisms transport S-secondary along images and preimages",
            LawId::L13 => {
                "in comultiplication modules, S-secondary N inside K+H pushes s(0:√Ann N) \
                 into K or H"
            }
            LawId::L14 => "idealization: I(+)0 is (S-)secondary iff I is",
            LawId::L15 => {
                "S-secondary iff S-prime radical plus quasi S-cotorsion-free mod it; field \
                 case of cotorsion-freeness"
            }
            LawId::L16 => {
                "all nonzero submodules S-secondary forces W(M) = √Ann(M) in comultiplication \
                 modules"
            }
            LawId::L17 => {
                "all proper submodules S-primary forces Z(M) = √Ann(M) in multiplication \
                 modules"
            }
            LawId::L18 => {
                "exploratory truth table for the multiplication+comultiplication \
                           equivalence"
            }
            LawId::L19 => "localized containment S⁻¹N ⊆ S⁻¹K has a witness s with sN ⊆ K",
            LawId::L20 => "every submodule is the meet of the completely irreducibles above it",
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", *self as usize + 1)
    }
}

impl FromStr for LawId {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        LawId::ALL
            .iter()
            .find(|id| id.to_string() == s)
            .copied()
            .ok_or_else(|| EngineError::UnknownLaw(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawMode {
    Proved,
    Exploratory,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawStatus {
    Pass,
    Fail,
    Inapplicable,
}

/// Outcome of running one law over one universe.
#[derive(Clone, Debug)]
pub struct LawReport {
    pub law: LawId,
    pub universe: String,
    pub status: LawStatus,
    /// Instances whose hypotheses held and whose conclusion was checked.
    pub checked: u64,
    /// Instances skipped because a hypothesis failed.
    pub skipped: u64,
    pub counterexample: Option<LawCounterexample>,
    pub mode: LawMode,
    /// Exploratory findings.
    pub detail: Option<String>,
}

/// A failing instance, with the element sets needed to replay it through
/// the deciders.
#[derive(Clone, Debug)]
pub struct LawCounterexample {
    pub description: String,
    pub sets: Vec<(String, Vec<usize>)>,
}

/// Accumulates instance counts and the first counterexample.
struct LawRun {
    checked: u64,
    skipped: u64,
    cex: Option<LawCounterexample>,
}

impl LawRun {
    fn new() -> Self {
        LawRun {
            checked: 0,
            skipped: 0,
            cex: None,
        }
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> LawCounterexample) {
        self.checked += 1;
        if !ok && self.cex.is_none() {
            self.cex = Some(describe());
        }
    }

    fn into_report(self, law: LawId, universe: &str, detail: Option<String>) -> LawReport {
        let status = if self.cex.is_some() {
            LawStatus::Fail
        } else if self.checked > 0 {
            LawStatus::Pass
        } else {
            LawStatus::Inapplicable
        };
        LawReport {
            law,
            universe: universe.to_string(),
            status,
            checked: self.checked,
            skipped: self.skipped,
            counterexample: self.cex,
            mode: law.mode(),
            detail,
        }
    }
}

fn cex(description: String, sets: Vec<(&str, &ElemSet)>) -> LawCounterexample {
    LawCounterexample {
        description,
        sets: sets
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.to_vec()))
            .collect(),
    }
}

fn inapplicable(law: LawId, u: &Universe) -> LawReport {
    LawRun::new().into_report(law, &u.label, None)
}

/// Runs one law over one universe.
pub fn law_check(law: LawId, u: &Universe) -> Result<LawReport> {
    match law {
        LawId::L1 => l1_form_agreement(u),
        LawId::L2 => l2_basics(u),
        LawId::L3 => l3_trivial_s(u),
        LawId::L4 => l4_radical_s_prime(u),
        LawId::L5 => l5_two_factor(u),
        LawId::L6 => l6_three_factor(u),
        LawId::L7 => l7_witness_order(u),
        LawId::L8 => l8_localization(u),
        LawId::L9 => l9_scaled_secondary(u),
        LawId::L10 => l10_jacobson(u),
        LawId::L11 => l11_quasilocal(u),
        LawId::L12 => l12_transport(u),
        LawId::L13 => l13_comultiplication_split(u),
        LawId::L14 => l14_idealization(u),
        LawId::L15 => l15_quasi_cotorsion(u),
        LawId::L16 => l16_w_set(u),
        LawId::L17 => l17_z_set(u),
        LawId::L18 => l18_exploratory(u),
        LawId::L19 => l19_localized_containment(u),
        LawId::L20 => l20_ci_meets(u),
    }
}

/// Runs every law on a universe, in identifier order.
pub fn law_suite(u: &Universe) -> Result<Vec<LawReport>> {
    LawId::ALL.iter().map(|&law| law_check(law, u)).collect()
}

fn s_secondary_ok(n: &Submodule, s: &MultClosedSet) -> Result<bool> {
    Ok(is_s_secondary(n, s, SecondaryForm::A)?.verdict)
}

fn l1_form_agreement(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    for n in u.module.submodules()? {
        let reports = SecondaryForm::ALL
            .iter()
            .map(|&f| is_s_secondary(&n, &u.s, f))
            .collect::<Result<Vec<_>>>()?;
        let verdicts: Vec<bool> = reports.iter().map(|r| r.verdict).collect();
        let witnesses: Vec<Option<usize>> = reports
            .iter()
            .map(|r| r.witness.as_ref().and_then(|w| w.s))
            .collect();
        let agree = verdicts.iter().all(|&v| v == verdicts[0])
            && witnesses.iter().all(|&w| w == witnesses[0]);
        run.check(agree, || {
            cex(
                format!("forms disagree: verdicts {verdicts:?}, witnesses {witnesses:?}"),
                vec![("N", n.members())],
            )
        });
    }
    Ok(run.into_report(LawId::L1, &u.label, None))
}

fn l2_basics(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    let trivial = MultClosedSet::trivial(&u.ring);
    let saturated = u.s.saturation();
    let units = u.ring.units();
    let fm = FractionModule::new(&u.module, &u.s);
    for n in u.module.submodules()? {
        let rad = n.annihilator().radical();
        let n_sec = is_secondary(&n).verdict;
        let n_s_sec = s_secondary_ok(&n, &u.s)?;

        // secondary with disjoint radical lifts to S-secondary
        if n_sec && rad.members.is_disjoint(&u.s.members) {
            run.check(n_s_sec, || {
                cex(
                    "secondary with disjoint radical but not S-secondary".into(),
                    vec![("N", n.members())],
                )
            });
        } else {
            run.skip();
        }
        // when S consists of units, S-secondary falls back to secondary
        if u.s.members.is_subset(&units) && n_s_sec {
            run.check(n_sec, || {
                cex(
                    "S-secondary over unit S but not secondary".into(),
                    vec![("N", n.members())],
                )
            });
        } else {
            run.skip();
        }
        // monotonicity along {1} ⊆ S ⊆ S*
        for (s1, s2) in [(&trivial, &u.s), (&u.s, &saturated), (&trivial, &saturated)] {
            if s_secondary_ok(&n, s1)? && rad.members.is_disjoint(&s2.members) {
                run.check(s_secondary_ok(&n, s2)?, || {
                    cex(
                        "S1-secondary but not S2-secondary despite disjoint radical".into(),
                        vec![("N", n.members()), ("S1", &s1.members), ("S2", &s2.members)],
                    )
                });
            } else {
                run.skip();
            }
        }
        // saturation invariance, both directions
        if rad.members.is_disjoint(&u.s.members) {
            let at_sat = s_secondary_ok(&n, &saturated)?;
            run.check(n_s_sec == at_sat, || {
                cex(
                    format!("S-secondary {n_s_sec} but S*-secondary {at_sat}"),
                    vec![("N", n.members()), ("S*", &saturated.members)],
                )
            });
        } else {
            run.skip();
        }
        // localization of an S-secondary submodule is secondary
        if n_s_sec {
            let localized = fm.localize(&n)?;
            run.check(is_secondary(&localized).verdict, || {
                cex(
                    "S-secondary submodule with non-secondary localization".into(),
                    vec![("N", n.members()), ("loc(N)", localized.members())],
                )
            });
        } else {
            run.skip();
        }
    }
    Ok(run.into_report(LawId::L2, &u.label, None))
}

fn l3_trivial_s(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    let trivial = MultClosedSet::trivial(&u.ring);
    for n in u.module.submodules()? {
        let plain = is_secondary(&n).verdict;
        let at_one = s_secondary_ok(&n, &trivial)?;
        run.check(plain == at_one, || {
            cex(
                format!("secondary {plain} but {{1}}-secondary {at_one}"),
                vec![("N", n.members())],
            )
        });
    }
    Ok(run.into_report(LawId::L3, &u.label, None))
}

fn l4_radical_s_prime(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    for n in u.module.submodules()? {
        if !s_secondary_ok(&n, &u.s)? {
            run.skip();
            continue;
        }
        let rad = n.annihilator().radical();
        run.check(rad.is_s_prime(&u.s).verdict, || {
            cex(
                "radical annihilator of an S-secondary submodule is not S-prime".into(),
                vec![("N", n.members()), ("rad", &rad.members)],
            )
        });
    }
    Ok(run.into_report(LawId::L4, &u.label, None))
}

fn l5_two_factor(u: &Universe) -> Result<LawReport> {
    let UniverseStructure::Product(parts) = &u.structure else {
        return Ok(inapplicable(LawId::L5, u));
    };
    if parts.len() != 2 {
        return Ok(inapplicable(LawId::L5, u));
    }
    let mut run = LawRun::new();
    let lattices: Vec<Vec<Submodule>> = parts
        .iter()
        .map(|p| p.module.submodules())
        .collect::<Result<_>>()?;
    for n1 in &lattices[0] {
        for n2 in &lattices[1] {
            let n = product_submodule(u, parts, &[n1, n2])?;
            let lhs = s_secondary_ok(&n, &u.s)?;
            let c1 = s_secondary_ok(n1, &parts[0].s)?;
            let c2 = s_secondary_ok(n2, &parts[1].s)?;
            let r1_meets = !n1
                .annihilator()
                .radical()
                .members
                .is_disjoint(&parts[0].s.members);
            let r2_meets = !n2
                .annihilator()
                .radical()
                .members
                .is_disjoint(&parts[1].s.members);
            let rhs = (c1 && r2_meets) || (c2 && r1_meets);
            run.check(lhs == rhs, || {
                cex(
                    format!("product S-secondary {lhs}, componentwise {rhs}"),
                    vec![
                        ("N1", n1.members()),
                        ("N2", n2.members()),
                        ("N", n.members()),
                    ],
                )
            });
        }
    }
    Ok(run.into_report(LawId::L5, &u.label, None))
}

fn l6_three_factor(u: &Universe) -> Result<LawReport> {
    let UniverseStructure::Product(parts) = &u.structure else {
        return Ok(inapplicable(LawId::L6, u));
    };
    if parts.len() != 3 {
        return Ok(inapplicable(LawId::L6, u));
    }
    let mut run = LawRun::new();
    let lattices: Vec<Vec<Submodule>> = parts
        .iter()
        .map(|p| p.module.submodules())
        .collect::<Result<_>>()?;
    for n1 in &lattices[0] {
        for n2 in &lattices[1] {
            for n3 in &lattices[2] {
                let factors = [n1, n2, n3];
                let n = product_submodule(u, parts, &factors)?;
                let lhs = s_secondary_ok(&n, &u.s)?;
                let comp: Vec<bool> = factors
                    .iter()
                    .zip(parts)
                    .map(|(ni, p)| s_secondary_ok(ni, &p.s))
                    .collect::<Result<_>>()?;
                let meets: Vec<bool> = factors
                    .iter()
                    .zip(parts)
                    .map(|(ni, p)| !ni.annihilator().radical().members.is_disjoint(&p.s.members))
                    .collect();
                let rhs = (0..3).any(|i| comp[i] && (0..3).all(|j| j == i || meets[j]));
                run.check(lhs == rhs, || {
                    cex(
                        format!("triple product S-secondary {lhs}, componentwise {rhs}"),
                        vec![
                            ("N1", n1.members()),
                            ("N2", n2.members()),
                            ("N3", n3.members()),
                        ],
                    )
                });
            }
        }
    }
    Ok(run.into_report(LawId::L6, &u.label, None))
}

/// The submodule N1 × … × Nk of a left-nested product module.
fn product_submodule(
    u: &Universe,
    parts: &[UniversePart],
    factors: &[&Submodule],
) -> Result<Submodule> {
    let lists: Vec<Vec<usize>> = factors.iter().map(|f| f.members().to_vec()).collect();
    let mut members = ElemSet::empty(u.module.size());
    for combo in cartesian(&lists) {
        members.insert(product_index(parts, &combo));
    }
    Submodule::new(u.module.clone(), members)
}

fn l7_witness_order(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    for n in u.module.submodules()? {
        let witnesses = s_secondary_witnesses(&n, &u.s);
        if witnesses.is_empty() {
            run.skip();
            continue;
        }
        let rad = n.annihilator().radical();
        let good = witnesses.iter().any(|s| {
            let sn = u.module.act_set(s, n.members());
            let colon_s = rad.colon_element(s);
            u.s.members.iter().all(|s2| {
                sn.is_subset(&u.module.act_set(s2, n.members()))
                    && rad.colon_element(s2).members.is_subset(&colon_s.members)
            })
        });
        run.check(good, || {
            cex(
                "no witness has minimal sN and maximal colon".into(),
                vec![("N", n.members()), ("witnesses", &witnesses)],
            )
        });
    }
    Ok(run.into_report(LawId::L7, &u.label, None))
}

fn l8_localization(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    let fm = FractionModule::new(&u.module, &u.s);
    for n in u.module.submodules()? {
        let rad = n.annihilator().radical();
        if !rad.members.is_disjoint(&u.s.members) {
            run.skip();
            continue;
        }
        let lhs = s_secondary_ok(&n, &u.s)?;
        let localized = fm.localize(&n)?;
        let least = u.s.members.iter().any(|s| {
            let sn = u.module.act_set(s, n.members());
            u.s.members
                .iter()
                .all(|s2| sn.is_subset(&u.module.act_set(s2, n.members())))
        });
        let rhs = is_secondary(&localized).verdict && least;
        run.check(lhs == rhs, || {
            cex(
                format!("S-secondary {lhs} vs localized-secondary-plus-least-witness {rhs}"),
                vec![("N", n.members()), ("loc(N)", localized.members())],
            )
        });
    }
    Ok(run.into_report(LawId::L8, &u.label, None))
}

fn l9_scaled_secondary(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    for n in u.module.submodules()? {
        let rad = n.annihilator().radical();
        if !rad.members.is_disjoint(&u.s.members) {
            run.skip();
            continue;
        }
        let lhs = s_secondary_ok(&n, &u.s)?;
        let rhs =
            u.s.members
                .iter()
                .any(|s| is_secondary(&n.scaled(s)).verdict);
        run.check(lhs == rhs, || {
            cex(
                format!("S-secondary {lhs} vs some-sN-secondary {rhs}"),
                vec![("N", n.members())],
            )
        });
    }
    Ok(run.into_report(LawId::L9, &u.label, None))
}

fn l10_jacobson(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    let spec = spectrum(&u.ring);
    let complements: Vec<MultClosedSet> = spec
        .maximals
        .iter()
        .map(MultClosedSet::complement_of_prime)
        .collect::<Result<_>>()?;
    for n in u.module.submodules()? {
        let rad = n.annihilator().radical();
        if !rad.members.is_subset(&spec.jacobson.members) {
            run.skip();
            continue;
        }
        let lhs = is_secondary(&n).verdict;
        let mut rhs = rad.is_prime();
        for comp in &complements {
            if !rhs {
                break;
            }
            rhs = rhs && s_secondary_ok(&n, comp)?;
        }
        run.check(lhs == rhs, || {
            cex(
                format!("secondary {lhs} vs prime-radical-plus-maximal-complements {rhs}"),
                vec![("N", n.members()), ("rad", &rad.members)],
            )
        });
    }
    Ok(run.into_report(LawId::L10, &u.label, None))
}

fn l11_quasilocal(u: &Universe) -> Result<LawReport> {
    let spec = spectrum(&u.ring);
    if spec.maximals.len() != 1 {
        return Ok(inapplicable(LawId::L11, u));
    }
    let comp = MultClosedSet::complement_of_prime(&spec.maximals[0])?;
    let mut run = LawRun::new();
    for n in u.module.submodules()? {
        let rad = n.annihilator().radical();
        let lhs = is_secondary(&n).verdict;
        let rhs = rad.is_prime() && s_secondary_ok(&n, &comp)?;
        run.check(lhs == rhs, || {
            cex(
                format!("quasilocal: secondary {lhs} vs characterization {rhs}"),
                vec![("N", n.members())],
            )
        });
    }
    Ok(run.into_report(LawId::L11, &u.label, None))
}

/// Monomorphism targets for transport: the regular module, the module
/// itself, and its same-ring square, capped at 16 elements.
fn transport_targets(u: &Universe) -> Vec<Arc<FiniteModule>> {
    let mut targets = vec![FiniteModule::regular(&u.ring), u.module.clone()];
    if u.module.size() * u.module.size() <= 16 {
        if let Ok(sq) = FiniteModule::product(&u.module, &u.module, ProductMode::SameRing) {
            targets.push(sq);
        }
    }
    targets.retain(|t| t.size() <= 16);
    targets
}

fn l12_transport(u: &Universe) -> Result<LawReport> {
    if u.module.size() > 16 {
        return Ok(inapplicable(LawId::L12, u));
    }
    let mut run = LawRun::new();
    let source_lattice = u.module.submodules()?;
    for target in transport_targets(u) {
        let monos = enumerate_monos(&u.module, &target)?;
        let target_lattice = target.submodules()?;
        for f in &monos {
            let image_of_m = f.image(&Submodule::whole(&u.module));
            for n in &source_lattice {
                if !s_secondary_ok(n, &u.s)? {
                    run.skip();
                    continue;
                }
                let fx = f.image(n);
                run.check(s_secondary_ok(&fx, &u.s)?, || {
                    cex(
                        "image of an S-secondary submodule under a mono is not S-secondary".into(),
                        vec![("N", n.members()), ("f(N)", fx.members())],
                    )
                });
            }
            for n2 in &target_lattice {
                if !n2.members().is_subset(image_of_m.members()) || !s_secondary_ok(n2, &u.s)? {
                    run.skip();
                    continue;
                }
                let pre = f.preimage(n2);
                run.check(s_secondary_ok(&pre, &u.s)?, || {
                    cex(
                        "preimage of an S-secondary submodule inside f(M) is not S-secondary"
                            .into(),
                        vec![("N'", n2.members()), ("pre", pre.members())],
                    )
                });
            }
        }
    }
    Ok(run.into_report(LawId::L12, &u.label, None))
}

fn l13_comultiplication_split(u: &Universe) -> Result<LawReport> {
    if !u.module.is_comultiplication()?.verdict {
        return Ok(inapplicable(LawId::L13, u));
    }
    let mut run = LawRun::new();
    let lattice = u.module.submodules()?;
    for n in &lattice {
        if !s_secondary_ok(n, &u.s)? {
            run.skip();
            continue;
        }
        let rad = n.annihilator().radical();
        let core = Submodule::zero(&u.module).colon_into(&rad);
        for k in &lattice {
            for h in &lattice {
                if !n.members().is_subset(k.sum(h).members()) {
                    run.skip();
                    continue;
                }
                let split = u.s.members.iter().any(|s| {
                    let sc = u.module.act_set(s, core.members());
                    sc.is_subset(k.members()) || sc.is_subset(h.members())
                });
                run.check(split, || {
                    cex(
                        "no s pushes (0 : rad) into K or H".into(),
                        vec![
                            ("N", n.members()),
                            ("K", k.members()),
                            ("H", h.members()),
                            ("core", core.members()),
                        ],
                    )
                });
            }
        }
    }
    Ok(run.into_report(LawId::L13, &u.label, None))
}

fn l14_idealization(u: &Universe) -> Result<LawReport> {
    let UniverseStructure::Idealization {
        base_ring,
        base_module,
        base_s,
        ..
    } = &u.structure
    else {
        return Ok(inapplicable(LawId::L14, u));
    };
    let mut run = LawRun::new();
    let base_reg = FiniteModule::regular(base_ring);
    let big_reg = FiniteModule::regular(&u.ring);
    let ann = Submodule::whole(base_module).annihilator();
    for i in spectrum(base_ring).all_ideals {
        if !i.members.is_subset(&ann.members) {
            run.skip();
            continue;
        }
        let i_sub = Submodule::new(base_reg.clone(), i.members.clone())?;
        let i_zero = idealization_ideal(&u.ring, &i)?;
        let i_zero_sub = Submodule::new(big_reg.clone(), i_zero.members.clone())?;

        // plain secondary transfers unconditionally
        let lhs = is_secondary(&i_sub).verdict;
        let rhs = is_secondary(&i_zero_sub).verdict;
        run.check(lhs == rhs, || {
            cex(
                format!("secondary transfer: base {lhs}, idealization {rhs}"),
                vec![("I", &i.members), ("I(+)0", &i_zero.members)],
            )
        });

        // the S-relaxed version needs I ∩ S = ∅
        if i.members.is_disjoint(&base_s.members) {
            let lhs = s_secondary_ok(&i_sub, base_s)?;
            let rhs = s_secondary_ok(&i_zero_sub, &u.s)?;
            run.check(lhs == rhs, || {
                cex(
                    format!("S-secondary transfer: base {lhs}, idealization {rhs}"),
                    vec![("I", &i.members), ("I(+)0", &i_zero.members)],
                )
            });
        } else {
            run.skip();
        }
    }
    Ok(run.into_report(LawId::L14, &u.label, None))
}

fn l15_quasi_cotorsion(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();

    // characterization through the quasi cotorsion-free condition mod √Ann(M)
    let whole = Submodule::whole(&u.module);
    let rad = whole.annihilator().radical();
    if rad.is_proper() && rad.members.is_disjoint(&u.s.members) {
        let lhs = s_secondary_ok(&whole, &u.s)?;
        let s_prime = rad.is_s_prime(&u.s).verdict;
        let quasi = is_quasi_s_cotorsion_free_mod(&u.module, &u.s, &rad)?.verdict;
        let rhs = s_prime && quasi;
        run.check(lhs == rhs, || {
            cex(
                format!("module S-secondary {lhs} vs S-prime radical {s_prime} + quasi {quasi}"),
                vec![("rad", &rad.members)],
            )
        });

        // when the radical actually kills M, the quotient-ring module
        // exists literally; cross-check the mod-P reading against it
        let ann = whole.annihilator();
        if rad.members == ann.members {
            let (q_ring, proj) = FiniteRing::quotient(&u.ring, &rad)?;
            let n = u.module.size();
            let add: Vec<usize> = (0..n)
                .flat_map(|a| (0..n).map(move |b| u.module.add(a, b)))
                .collect();
            let mut act = vec![0; q_ring.size() * n];
            for r in u.ring.elements() {
                let q = proj.apply(r);
                for m in 0..n {
                    act[q * n + m] = u.module.act(r, m);
                }
            }
            let q_module = FiniteModule::from_tables("mod-P", &q_ring, add, act)?;
            let image_s = MultClosedSet::new(
                q_ring.clone(),
                ElemSet::from_elems(q_ring.size(), u.s.members.iter().map(|s| proj.apply(s))),
            )?;
            let literal = is_quasi_s_cotorsion_free(&q_module, &image_s)?.verdict;
            run.check(quasi == literal, || {
                cex(
                    format!("mod-P reading {quasi} vs literal quotient module {literal}"),
                    vec![("rad", &rad.members)],
                )
            });
        }
    } else {
        run.skip();
    }

    // over a field (the only finite integral domains), cotorsion-freeness
    // coincides with quasi cotorsion-freeness at every prime and maximal
    // complement
    if u.ring.is_field() {
        let spec = spectrum(&u.ring);
        let free = crate::decide::is_cotorsion_free(&u.module)?.verdict;
        let mut at_primes = true;
        for p in &spec.primes {
            let comp = MultClosedSet::complement_of_prime(p)?;
            at_primes = at_primes && is_quasi_s_cotorsion_free(&u.module, &comp)?.verdict;
        }
        let mut at_maximals = true;
        for m in &spec.maximals {
            let comp = MultClosedSet::complement_of_prime(m)?;
            at_maximals = at_maximals && is_quasi_s_cotorsion_free(&u.module, &comp)?.verdict;
        }
        run.check(free == at_primes && at_primes == at_maximals, || {
            cex(
                format!("cotorsion-free {free}, primes {at_primes}, maximals {at_maximals}"),
                vec![],
            )
        });
    }
    Ok(run.into_report(LawId::L15, &u.label, None))
}

fn l16_w_set(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    let whole = Submodule::whole(&u.module);
    let rad = whole.annihilator().radical();
    let comult = u.module.is_comultiplication()?.verdict;
    let mut all_nonzero = true;
    for n in u.module.submodules()? {
        if !n.is_zero() {
            all_nonzero = all_nonzero && s_secondary_ok(&n, &u.s)?;
        }
    }
    if comult && rad.members.is_disjoint(&u.s.members) && all_nonzero {
        let w = u.module.w_set();
        run.check(w.members == rad.members, || {
            cex(
                "W(M) differs from the radical annihilator".into(),
                vec![("W(M)", &w.members), ("rad", &rad.members)],
            )
        });
    } else {
        run.skip();
    }
    Ok(run.into_report(LawId::L16, &u.label, None))
}

fn l17_z_set(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    let whole = Submodule::whole(&u.module);
    let rad = whole.annihilator().radical();
    let mult = u.module.is_multiplication()?.verdict;
    let mut all_proper = true;
    for p in u.module.submodules()? {
        if !p.is_whole() {
            all_proper = all_proper && is_s_primary(&p, &u.s).verdict;
        }
    }
    if mult && rad.members.is_disjoint(&u.s.members) && all_proper {
        let z = u.module.z_set();
        run.check(z.members == rad.members, || {
            cex(
                "Z(M) differs from the radical annihilator".into(),
                vec![("Z(M)", &z.members), ("rad", &rad.members)],
            )
        });
    } else {
        run.skip();
    }
    Ok(run.into_report(LawId::L17, &u.label, None))
}

fn l18_exploratory(u: &Universe) -> Result<LawReport> {
    let whole = Submodule::whole(&u.module);
    let rad = whole.annihilator().radical();
    let mult = u.module.is_multiplication()?.verdict;
    let comult = u.module.is_comultiplication()?.verdict;
    if !(mult && comult && rad.members.is_disjoint(&u.s.members)) {
        return Ok(inapplicable(LawId::L18, u));
    }
    let mut all_nonzero = true;
    let mut all_proper = true;
    for n in u.module.submodules()? {
        if !n.is_zero() {
            all_nonzero = all_nonzero && s_secondary_ok(&n, &u.s)?;
        }
        if !n.is_whole() {
            all_proper = all_proper && is_s_primary(&n, &u.s).verdict;
        }
    }
    let z = u.module.z_set();
    let w = u.module.w_set();
    let sets_match = z.members == w.members && w.members == rad.members;
    let detail = format!(
        "all_nonzero_s_secondary={all_nonzero} z_w_radical_equal={sets_match} \
         all_proper_s_primary={all_proper} equivalent={}",
        all_nonzero == sets_match && sets_match == all_proper
    );
    let mut run = LawRun::new();
    run.check(true, || {
        unreachable!("exploratory law records, never asserts")
    });
    Ok(run.into_report(LawId::L18, &u.label, Some(detail)))
}

fn l19_localized_containment(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    let fm = FractionModule::new(&u.module, &u.s);
    let lattice = u.module.submodules()?;
    for n in &lattice {
        for k in &lattice {
            let ln = fm.localize(n)?;
            let lk = fm.localize(k)?;
            if !ln.members().is_subset(lk.members()) {
                run.skip();
                continue;
            }
            let witness =
                u.s.members
                    .iter()
                    .find(|&s| u.module.act_set(s, n.members()).is_subset(k.members()));
            run.check(witness.is_some(), || {
                cex(
                    "localized containment without any s scaling N into K".into(),
                    vec![("N", n.members()), ("K", k.members())],
                )
            });
        }
    }
    Ok(run.into_report(LawId::L19, &u.label, None))
}

fn l20_ci_meets(u: &Universe) -> Result<LawReport> {
    let mut run = LawRun::new();
    let lattice = u.module.submodules()?;
    let cis = u.module.completely_irreducibles()?;
    for n in &lattice {
        let mut meet = ElemSet::full(u.module.size());
        for l in &cis {
            if n.members().is_subset(l.members()) {
                meet = meet.intersect(l.members());
            }
        }
        run.check(meet == *n.members(), || {
            cex(
                "submodule is not the meet of the CIs above it".into(),
                vec![("N", n.members())],
            )
        });
    }
    // the inclusion-test protocol: N ⊆ K iff every CI above K is above N
    for n in &lattice {
        for k in &lattice {
            let direct = n.members().is_subset(k.members());
            let via_cis = cis
                .iter()
                .filter(|l| k.members().is_subset(l.members()))
                .all(|l| n.members().is_subset(l.members()));
            run.check(direct == via_cis, || {
                cex(
                    format!("inclusion test disagrees: direct {direct}, via CIs {via_cis}"),
                    vec![("N", n.members()), ("K", k.members())],
                )
            });
        }
    }
    Ok(run.into_report(LawId::L20, &u.label, None))
}

/// Builds Z_k as a Z_n-module through reduction mod k (k must divide n).
fn cyclic_module(k: usize, ring: &Arc<FiniteRing>) -> Arc<FiniteModule> {
    let n = ring.size();
    assert!(n.is_multiple_of(k), "{k} must divide {n}");
    let mut add = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            add[a * k + b] = (a + b) % k;
        }
    }
    let mut act = vec![0; n * k];
    for r in 0..n {
        for m in 0..k {
            act[r * k + m] = (r * m) % k;
        }
    }
    FiniteModule::from_tables(&format!("Z{k}"), ring, add, act).expect("reduction action is valid")
}

fn mcs_of(ring: &Arc<FiniteRing>, elems: &[usize]) -> MultClosedSet {
    MultClosedSet::new(
        ring.clone(),
        ElemSet::from_elems(ring.size(), elems.iter().copied()),
    )
    .expect("battery set is multiplicatively closed")
}

fn regular_universe(label: &str, n: usize, s: &[usize]) -> Universe {
    let ring = FiniteRing::cyclic(n).expect("battery modulus");
    let module = FiniteModule::regular(&ring);
    Universe::plain(label, ring.clone(), mcs_of(&ring, s), module).expect("battery universe")
}

fn product_universe(label: &str, specs: &[(usize, Vec<usize>)]) -> Universe {
    let parts: Vec<UniversePart> = specs
        .iter()
        .map(|(n, s)| {
            let ring = FiniteRing::cyclic(*n).expect("battery modulus");
            UniversePart {
                s: mcs_of(&ring, s),
                module: FiniteModule::regular(&ring),
                ring,
            }
        })
        .collect();
    let mut module = parts[0].module.clone();
    for part in &parts[1..] {
        module = FiniteModule::product(&module, &part.module, ProductMode::ProductRing)
            .expect("product module");
    }
    let ring = module.ring().clone();
    let mut s_members = ElemSet::empty(ring.size());
    for combo in cartesian(
        &parts
            .iter()
            .map(|p| p.s.members.to_vec())
            .collect::<Vec<_>>(),
    ) {
        s_members.insert(product_index(&parts, &combo));
    }
    let s = MultClosedSet::new(ring.clone(), s_members).expect("product S");
    let u = Universe {
        label: label.to_string(),
        ring,
        s,
        module,
        structure: UniverseStructure::Product(parts),
    };
    u.validate().expect("battery universe");
    u
}

fn idealization_universe(label: &str, whole_n: bool) -> Universe {
    let base_ring = FiniteRing::cyclic(4).expect("modulus");
    let base_module = cyclic_module(2, &base_ring);
    let base_s = mcs_of(&base_ring, &[1, 3]);
    let ring = FiniteRing::idealization(&base_ring, &base_module).expect("idealization");
    let n_part = if whole_n {
        Submodule::whole(&base_module)
    } else {
        Submodule::zero(&base_module)
    };
    let s = idealization_mcs(&ring, &base_s, &n_part).expect("S(+)N");
    let module = FiniteModule::regular(&ring);
    let u = Universe {
        label: label.to_string(),
        ring,
        s,
        module,
        structure: UniverseStructure::Idealization {
            base_ring,
            base_module,
            base_s,
            n_part,
        },
    };
    u.validate().expect("battery universe");
    u
}

/// The built-in battery of universes.
pub fn universe_battery() -> Vec<Universe> {
    let z4 = FiniteRing::cyclic(4).expect("modulus");
    let z6 = FiniteRing::cyclic(6).expect("modulus");
    let mut battery = vec![
        regular_universe("Z4 S={1}", 4, &[1]),
        regular_universe("Z4 S={1,3}", 4, &[1, 3]),
        regular_universe("Z6 S={1}", 6, &[1]),
        regular_universe("Z6 S={1,3}", 6, &[1, 3]),
        regular_universe("Z6 S={1,2,4}", 6, &[1, 2, 4]),
        regular_universe("Z6 S={1,5}", 6, &[1, 5]),
        regular_universe("Z8 S={1,3}", 8, &[1, 3]),
        regular_universe("Z12 S={1,5}", 12, &[1, 5]),
        product_universe("Z2xZ4 S={1}x{1,3}", &[(2, vec![1]), (4, vec![1, 3])]),
        product_universe(
            "Z2xZ2xZ3 S={1}x{1}x{1,2}",
            &[(2, vec![1]), (2, vec![1]), (3, vec![1, 2])],
        ),
    ];
    let z2 = FiniteRing::cyclic(2).expect("modulus");
    let plane = FiniteModule::product(
        &FiniteModule::regular(&z2),
        &FiniteModule::regular(&z2),
        ProductMode::SameRing,
    )
    .expect("plane module");
    battery.push(
        Universe::plain("Z2^2 over Z2 S={1}", z2.clone(), mcs_of(&z2, &[1]), plane)
            .expect("battery universe"),
    );
    battery.push(idealization_universe("Z4(+)Z2 S(+)0", false));
    battery.push(idealization_universe("Z4(+)Z2 S(+)M", true));
    battery.push(
        Universe::plain(
            "Z2 over Z4 S={1,3}",
            z4.clone(),
            mcs_of(&z4, &[1, 3]),
            cyclic_module(2, &z4),
        )
        .expect("battery universe"),
    );
    let m23 = FiniteModule::product(
        &cyclic_module(2, &z6),
        &cyclic_module(3, &z6),
        ProductMode::SameRing,
    )
    .expect("Z2xZ3 over Z6");
    battery.push(
        Universe::plain(
            "Z2xZ3 over Z6 S={1,3}",
            z6.clone(),
            mcs_of(&z6, &[1, 3]),
            m23,
        )
        .expect("battery universe"),
    );
    battery
}

/// Separation witnesses discovered during a battery run.
#[derive(Clone, Debug, Default)]
pub struct SeparationReport {
    /// (universe label, submodule members) that are S-secondary but not
    /// S-second.
    pub s_secondary_not_s_second: Vec<(String, Vec<usize>)>,
    /// (universe label, submodule members) that are S-secondary but not
    /// secondary.
    pub s_secondary_not_secondary: Vec<(String, Vec<usize>)>,
}

/// Scans a battery for the separating examples.
pub fn find_separations(battery: &[Universe]) -> Result<SeparationReport> {
    let mut report = SeparationReport::default();
    for u in battery {
        for n in u.module.submodules()? {
            if !s_secondary_ok(&n, &u.s)? {
                continue;
            }
            if !is_s_second(&n, &u.s)?.verdict {
                report
                    .s_secondary_not_s_second
                    .push((u.label.clone(), n.members().to_vec()));
            }
            if !is_secondary(&n).verdict {
                report
                    .s_secondary_not_secondary
                    .push((u.label.clone(), n.members().to_vec()));
            }
        }
    }
    Ok(report)
}

/// Ground-truth audit of the mod-4 image of the integers with S the odd
/// residues — the smallest prime-power cyclic module this configuration
/// is usually quoted for. Route one decides every submodule directly;
/// route two applies the Z/W-set criterion. The report records whether
/// the two routes agree and whether the often-cited separation (a nonzero
/// non-S-secondary submodule together with a proper non-S-primary
/// submodule) actually exists.
#[derive(Clone, Debug)]
pub struct ExampleAudit {
    pub label: String,
    pub all_nonzero_s_secondary: bool,
    pub all_proper_s_primary: bool,
    pub zw_matches_radical: bool,
    pub routes_agree: bool,
    pub separation_found: bool,
    pub detail: String,
}

pub fn audit_prime_power_example() -> Result<ExampleAudit> {
    let ring = FiniteRing::cyclic(4)?;
    let s = mcs_of(&ring, &[1, 3]);
    let module = FiniteModule::regular(&ring);
    let whole = Submodule::whole(&module);
    let rad = whole.annihilator().radical();

    let mut all_nonzero = true;
    let mut all_proper = true;
    for n in module.submodules()? {
        if !n.is_zero() {
            all_nonzero = all_nonzero && s_secondary_ok(&n, &s)?;
        }
        if !n.is_whole() {
            all_proper = all_proper && is_s_primary(&n, &s).verdict;
        }
    }
    let z = module.z_set();
    let w = module.w_set();
    let zw = z.members == w.members && w.members == rad.members;
    let routes_agree = all_nonzero == zw && zw == all_proper;
    let separation_found = !all_nonzero && !all_proper;
    let detail = format!(
        "direct route: all nonzero S-secondary = {all_nonzero}, all proper S-primary = \
         {all_proper}; set route: Z = W = radical = {zw}; routes agree = {routes_agree}; \
         separation found = {separation_found}"
    );
    Ok(ExampleAudit {
        label: "Z4 S={1,3}".to_string(),
        all_nonzero_s_secondary: all_nonzero,
        all_proper_s_primary: all_proper,
        zw_matches_radical: zw,
        routes_agree,
        separation_found,
        detail,
    })
}

/// Everything a full battery run produces.
#[derive(Clone, Debug)]
pub struct BatteryReport {
    /// Law-major order: for each law, one report per universe.
    pub law_reports: Vec<LawReport>,
    pub separations: SeparationReport,
    pub audit: ExampleAudit,
}

impl BatteryReport {
    /// Proved-mode failures; empty on a healthy engine.
    pub fn failures(&self) -> Vec<&LawReport> {
        self.law_reports
            .iter()
            .filter(|r| r.mode == LawMode::Proved && r.status == LawStatus::Fail)
            .collect()
    }
}

/// Runs every law over every universe of the battery. Universes are
/// processed in parallel; reports are merged in deterministic law-major
/// order.
pub fn run_battery(battery: &[Universe]) -> Result<BatteryReport> {
    let per_universe: Vec<Vec<LawReport>> = battery
        .par_iter()
        .map(law_suite)
        .collect::<Result<Vec<_>>>()?;
    let mut law_reports = Vec::new();
    for law_idx in 0..LawId::ALL.len() {
        for suite in &per_universe {
            law_reports.push(suite[law_idx].clone());
        }
    }
    Ok(BatteryReport {
        law_reports,
        separations: find_separations(battery)?,
        audit: audit_prime_power_example()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn law_ids_round_trip() {
        for law in LawId::ALL {
            assert_eq!(law.to_string().parse::<LawId>().unwrap(), law);
        }
        assert!(matches!(
            "L21".parse::<LawId>(),
            Err(EngineError::UnknownLaw(_))
        ));
        assert!(matches!(
            "nope".parse::<LawId>(),
            Err(EngineError::UnknownLaw(_))
        ));
    }

    #[test]
    fn battery_is_large_enough_and_valid() {
        let battery = universe_battery();
        assert!(battery.len() >= 14);
        for u in &battery {
            u.validate().unwrap();
            u.ring.check_axioms().unwrap();
            u.module.check_axioms().unwrap();
        }
        let labels: std::collections::BTreeSet<&str> =
            battery.iter().map(|u| u.label.as_str()).collect();
        assert_eq!(labels.len(), battery.len(), "labels must be unique");
    }

    #[test]
    fn l1_passes_on_z12() {
        let u = regular_universe("Z12 S={1}", 12, &[1]);
        let rep = law_check(LawId::L1, &u).unwrap();
        assert_eq!(rep.status, LawStatus::Pass);
        assert_eq!(rep.checked, 6, "one agreement check per submodule");
    }

    #[test]
    fn l4_passes_on_z4() {
        let u = regular_universe("Z4 S={1,3}", 4, &[1, 3]);
        let rep = law_check(LawId::L4, &u).unwrap();
        assert_eq!(rep.status, LawStatus::Pass);
        assert_eq!(rep.checked, 2, "both nonzero submodules are S-secondary");
    }

    #[test]
    fn l5_sees_the_zero_times_whole_case() {
        let u = product_universe("Z2xZ4 S={1}x{1,3}", &[(2, vec![1]), (4, vec![1, 3])]);
        let rep = law_check(LawId::L5, &u).unwrap();
        assert_eq!(rep.status, LawStatus::Pass);
        assert_eq!(rep.checked, 6, "six submodule pairs");
        let UniverseStructure::Product(parts) = &u.structure else {
            unreachable!()
        };
        let n1 = Submodule::zero(&parts[0].module);
        let n2 = Submodule::whole(&parts[1].module);
        let n = product_submodule(&u, parts, &[&n1, &n2]).unwrap();
        assert!(s_secondary_ok(&n, &u.s).unwrap());
    }

    #[test]
    fn l11_applicability() {
        let quasilocal = regular_universe("Z8 S={1,3}", 8, &[1, 3]);
        assert_eq!(
            law_check(LawId::L11, &quasilocal).unwrap().status,
            LawStatus::Pass
        );
        let not_quasilocal = regular_universe("Z6 S={1}", 6, &[1]);
        assert_eq!(
            law_check(LawId::L11, &not_quasilocal).unwrap().status,
            LawStatus::Inapplicable
        );
    }

    #[test]
    fn l14_idealization_universe() {
        let u = idealization_universe("Z4(+)Z2 S(+)0", false);
        let rep = law_check(LawId::L14, &u).unwrap();
        assert_eq!(rep.status, LawStatus::Pass);
        assert!(rep.checked >= 2, "at least the zero ideal and 2Z4 transfer");
    }

    #[test]
    fn l18_reports_instead_of_asserting() {
        let u = regular_universe("Z4 S={1,3}", 4, &[1, 3]);
        let rep = law_check(LawId::L18, &u).unwrap();
        assert_eq!(rep.mode, LawMode::Exploratory);
        assert_eq!(rep.status, LawStatus::Pass);
        let detail = rep.detail.unwrap();
        assert!(detail.contains("equivalent=true"), "detail was: {detail}");
    }

    #[test]
    fn separations_are_found() {
        let battery = universe_battery();
        let sep = find_separations(&battery).unwrap();
        assert!(sep
            .s_secondary_not_s_second
            .iter()
            .any(|(label, members)| label == "Z4 S={1,3}" && members.len() == 4));
        assert!(sep
            .s_secondary_not_secondary
            .iter()
            .any(|(label, members)| label == "Z6 S={1,3}" && members.len() == 6));
    }

    #[test]
    fn inference_detects_structure() {
        // rebuild the product universe through raw constructors and infer
        let z2 = FiniteRing::cyclic(2).unwrap();
        let z4 = FiniteRing::cyclic(4).unwrap();
        let m = FiniteModule::product(
            &FiniteModule::regular(&z2),
            &FiniteModule::regular(&z4),
            ProductMode::ProductRing,
        )
        .unwrap();
        let ring = m.ring().clone();
        let s = MultClosedSet::new(
            ring.clone(),
            ElemSet::from_elems(8, [ring.pair(1, 1), ring.pair(1, 3)]),
        )
        .unwrap();
        let u = Universe::infer("inferred", ring.clone(), s, m.clone()).unwrap();
        assert!(matches!(&u.structure, UniverseStructure::Product(parts) if parts.len() == 2));
        assert_eq!(law_check(LawId::L5, &u).unwrap().status, LawStatus::Pass);

        // a singleton S decomposes too: its projections are singletons
        let s_diag =
            MultClosedSet::new(ring.clone(), ElemSet::from_elems(8, [ring.pair(1, 1)])).unwrap();
        let u = Universe::infer("diag", ring, s_diag, m).unwrap();
        assert!(matches!(u.structure, UniverseStructure::Product(_)));

        // idealization detection
        let base = FiniteRing::cyclic(4).unwrap();
        let bm = cyclic_module(2, &base);
        let big = FiniteRing::idealization(&base, &bm).unwrap();
        let s = idealization_mcs(&big, &mcs_of(&base, &[1, 3]), &Submodule::zero(&bm)).unwrap();
        let u = Universe::infer("ideal", big.clone(), s, FiniteModule::regular(&big)).unwrap();
        assert!(matches!(
            u.structure,
            UniverseStructure::Idealization { .. }
        ));
        assert_eq!(law_check(LawId::L14, &u).unwrap().status, LawStatus::Pass);
    }

    #[test]
    fn audit_routes_agree_and_separation_is_absent() {
        let audit = audit_prime_power_example().unwrap();
        assert!(audit.routes_agree);
        assert!(audit.all_nonzero_s_secondary);
        assert!(audit.all_proper_s_primary);
        assert!(audit.zw_matches_radical);
        assert!(!audit.separation_found);
    }
}
