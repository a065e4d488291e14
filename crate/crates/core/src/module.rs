//! Finite modules over finite rings: construction, submodule lattices,
//! annihilators and colons, completely irreducible submodules, interiors,
//! zero-divisor/non-surjective sets, multiplication/comultiplication
//! predicates, and module homomorphisms.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{EngineError, Result};
use crate::report::{Counterexample, DecisionReport, FailureDatum, SubmoduleCert, Witness};
use crate::ring::{spectrum, FiniteRing, Ideal};
use crate::set::ElemSet;

/// Default bound on carrier sizes accepted by lattice enumeration.
pub const DEFAULT_CARRIER_CAP: usize = 256;

#[derive(Clone, Debug)]
pub enum ModuleProvenance {
    Regular,
    ProductSameRing {
        left: Arc<FiniteModule>,
        right: Arc<FiniteModule>,
    },
    ProductRing {
        left: Arc<FiniteModule>,
        right: Arc<FiniteModule>,
    },
    Tables,
}

/// A finite module over a finite commutative ring, with explicit addition
/// and scalar-action tables. Index 0 is the zero element.
pub struct FiniteModule {
    label: String,
    ring: Arc<FiniteRing>,
    n: usize,
    add: Vec<usize>,
    act: Vec<usize>,
    names: Vec<String>,
    provenance: ModuleProvenance,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteModule({} over {}, |M|={})",
            self.label,
            self.ring.label(),
            self.n
        )
    }
}

impl FiniteModule {
    fn build(
        label: String,
        ring: Arc<FiniteRing>,
        add: Vec<usize>,
        act: Vec<usize>,
        names: Vec<String>,
        provenance: ModuleProvenance,
    ) -> Result<Arc<Self>> {
        let m = FiniteModule {
            label,
            ring,
            n: names.len(),
            add,
            act,
            names,
            provenance,
        };
        m.check_axioms()?;
        Ok(Arc::new(m))
    }

    pub(crate) fn new_raw(
        label: String,
        ring: Arc<FiniteRing>,
        add: Vec<usize>,
        act: Vec<usize>,
        names: Vec<String>,
        provenance: ModuleProvenance,
    ) -> Result<Arc<Self>> {
        Self::build(label, ring, add, act, names, provenance)
    }

    /// The ring viewed as a module over itself; submodules are the ideals.
    pub fn regular(ring: &Arc<FiniteRing>) -> Arc<Self> {
        let n = ring.size();
        let add = (0..n)
            .flat_map(|a| (0..n).map(move |b| ring.add(a, b)))
            .collect();
        let act = (0..n)
            .flat_map(|r| (0..n).map(move |m| ring.mul(r, m)))
            .collect();
        let names = (0..n).map(|e| ring.name(e).to_string()).collect();
        Self::build(
            ring.label().to_string(),
            ring.clone(),
            add,
            act,
            names,
            ModuleProvenance::Regular,
        )
        .expect("regular module of a valid ring is valid")
    }

    /// A module from raw tables; `act` is indexed `[r * |M| + m]`. Every
    /// axiom is validated and a failure names the axiom with witnesses.
    pub fn from_tables(
        label: &str,
        ring: &Arc<FiniteRing>,
        add: Vec<usize>,
        act: Vec<usize>,
    ) -> Result<Arc<Self>> {
        let n2 = add.len();
        let n = (n2 as f64).sqrt() as usize;
        if n * n != n2 || n == 0 {
            return Err(EngineError::InvalidConstruction(
                "addition table must be square".into(),
            ));
        }
        if act.len() != ring.size() * n {
            return Err(EngineError::InvalidConstruction(
                "action table must have one row per ring element".into(),
            ));
        }
        if add.iter().chain(&act).any(|&e| e >= n) {
            return Err(EngineError::InvalidConstruction(
                "table entry outside carrier".into(),
            ));
        }
        let names = (0..n).map(|e| e.to_string()).collect();
        Self::build(
            label.to_string(),
            ring.clone(),
            add,
            act,
            names,
            ModuleProvenance::Tables,
        )
    }

    /// The one-element module.
    pub fn zero_module(ring: &Arc<FiniteRing>) -> Arc<Self> {
        Self::from_tables("0", ring, vec![0], vec![0; ring.size()]).expect("zero module is valid")
    }

    /// Componentwise product. In same-ring mode both factors must live over
    /// the identical ring; in product-ring mode the result lives over the
    /// product of the two base rings.
    pub fn product(a: &Arc<Self>, b: &Arc<Self>, mode: ProductMode) -> Result<Arc<Self>> {
        let (na, nb) = (a.n, b.n);
        let n = na * nb;
        let idx = |x: usize, y: usize| x * nb + y;
        let mut add = vec![0; n * n];
        for xa in 0..na {
            for xb in 0..nb {
                for ya in 0..na {
                    for yb in 0..nb {
                        add[idx(xa, xb) * n + idx(ya, yb)] = idx(a.add(xa, ya), b.add(xb, yb));
                    }
                }
            }
        }
        let names: Vec<String> = (0..na)
            .flat_map(|x| (0..nb).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", a.names[x], b.names[y]))
            .collect();
        let label = format!("{}x{}", a.label, b.label);
        match mode {
            ProductMode::SameRing => {
                if !a.ring.same_structure(&b.ring) {
                    return Err(EngineError::TypeMismatch(
                        "same-ring product needs both modules over one ring".into(),
                    ));
                }
                let ring = a.ring.clone();
                let mut act = vec![0; ring.size() * n];
                for r in ring.elements() {
                    for x in 0..na {
                        for y in 0..nb {
                            act[r * n + idx(x, y)] = idx(a.act(r, x), b.act(r, y));
                        }
                    }
                }
                Self::build(
                    label,
                    ring,
                    add,
                    act,
                    names,
                    ModuleProvenance::ProductSameRing {
                        left: a.clone(),
                        right: b.clone(),
                    },
                )
            }
            ProductMode::ProductRing => {
                let ring = FiniteRing::product(&a.ring, &b.ring);
                let mut act = vec![0; ring.size() * n];
                for r in ring.elements() {
                    let (ra, rb) = ring.unpair(r);
                    for x in 0..na {
                        for y in 0..nb {
                            act[r * n + idx(x, y)] = idx(a.act(ra, x), b.act(rb, y));
                        }
                    }
                }
                Self::build(
                    label,
                    ring,
                    add,
                    act,
                    names,
                    ModuleProvenance::ProductRing {
                        left: a.clone(),
                        right: b.clone(),
                    },
                )
            }
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn provenance(&self) -> &ModuleProvenance {
        &self.provenance
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.n)
            .find(|&b| self.add(a, b) == 0)
            .expect("validated abelian group")
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn act(&self, r: usize, m: usize) -> usize {
        self.act[r * self.n + m]
    }

    /// For pair-built modules: the index of (l, r).
    pub fn pair(&self, l: usize, r: usize) -> usize {
        match &self.provenance {
            ModuleProvenance::ProductSameRing { right, .. }
            | ModuleProvenance::ProductRing { right, .. } => l * right.size() + r,
            _ => panic!("pair() on a module without pair structure"),
        }
    }

    pub fn unpair(&self, e: usize) -> (usize, usize) {
        match &self.provenance {
            ModuleProvenance::ProductSameRing { right, .. }
            | ModuleProvenance::ProductRing { right, .. } => (e / right.size(), e % right.size()),
            _ => panic!("unpair() on a module without pair structure"),
        }
    }

    pub fn same_structure(&self, other: &FiniteModule) -> bool {
        std::ptr::eq(self, other)
            || (self.n == other.n
                && self.ring.same_structure(&other.ring)
                && self.add == other.add
                && self.act == other.act)
    }

    /// {r·x : x ∈ set}.
    pub fn act_set(&self, r: usize, set: &ElemSet) -> ElemSet {
        ElemSet::from_elems(self.n, set.iter().map(|m| self.act(r, m)))
    }

    /// {a+b : a ∈ lhs, b ∈ rhs}.
    pub fn sum_sets(&self, lhs: &ElemSet, rhs: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.n);
        for a in lhs.iter() {
            for b in rhs.iter() {
                out.insert(self.add(a, b));
            }
        }
        out
    }

    /// Closure of a set under addition (with 0 adjoined).
    pub fn additive_closure(&self, set: &ElemSet) -> ElemSet {
        let mut out = ElemSet::singleton(self.n, 0);
        let mut queue: Vec<usize> = set.iter().collect();
        for &e in &queue {
            out.insert(e);
        }
        while let Some(x) = queue.pop() {
            for y in out.to_vec() {
                let s = self.add(x, y);
                if !out.contains(s) {
                    out.insert(s);
                    queue.push(s);
                }
            }
        }
        out
    }

    pub fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        let ring = &self.ring;
        let viol = |axiom: &str, ws: &[usize]| {
            Err(EngineError::AxiomViolation {
                axiom: axiom.to_string(),
                witness: ws
                    .iter()
                    .map(|&e| format!("#{e}"))
                    .collect::<Vec<_>>()
                    .join(", "),
            })
        };
        for a in 0..n {
            if self.add(a, 0) != a {
                return viol("module additive identity", &[a]);
            }
            if !(0..n).any(|b| self.add(a, b) == 0) {
                return viol("module additive inverse exists", &[a]);
            }
            if self.act(ring.one(), a) != a {
                return viol("action is unital", &[a]);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return viol("module addition commutes", &[a, b]);
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return viol("module addition associates", &[a, b, c]);
                    }
                }
            }
        }
        for r in ring.elements() {
            for m in 0..n {
                for m2 in 0..n {
                    if self.act(r, self.add(m, m2)) != self.add(self.act(r, m), self.act(r, m2)) {
                        return viol("action distributes over module addition", &[r, m, m2]);
                    }
                }
            }
            for r2 in ring.elements() {
                for m in 0..n {
                    if self.act(ring.add(r, r2), m) != self.add(self.act(r, m), self.act(r2, m)) {
                        return viol("action distributes over ring addition", &[r, r2, m]);
                    }
                    if self.act(ring.mul(r, r2), m) != self.act(r, self.act(r2, m)) {
                        return viol("action respects ring multiplication", &[r, r2, m]);
                    }
                }
            }
        }
        Ok(())
    }

    /// All submodules, canonically ordered (size, then lexicographic
    /// members). Enumeration closes the cyclic submodules under pairwise
    /// sum, which is complete because every submodule is a finite sum of
    /// cyclic ones.
    pub fn submodules(self: &Arc<Self>) -> Result<Vec<Submodule>> {
        self.submodules_capped(DEFAULT_CARRIER_CAP)
    }

    pub fn submodules_capped(self: &Arc<Self>, cap: usize) -> Result<Vec<Submodule>> {
        if self.n > cap {
            return Err(EngineError::CapExceeded { size: self.n, cap });
        }
        let mut seen: BTreeSet<ElemSet> = BTreeSet::new();
        for m in 0..self.n {
            seen.insert(ElemSet::from_elems(
                self.n,
                self.ring.elements().map(|r| self.act(r, m)),
            ));
        }
        loop {
            let snapshot: Vec<ElemSet> = seen.iter().cloned().collect();
            let mut grew = false;
            for i in 0..snapshot.len() {
                for j in (i + 1)..snapshot.len() {
                    if seen.insert(self.sum_sets(&snapshot[i], &snapshot[j])) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        Ok(seen
            .into_iter()
            .map(|members| Submodule {
                module: self.clone(),
                members,
            })
            .collect())
    }

    /// Proper submodules N whose strictly-larger submodules meet to
    /// something other than N. In a finite lattice these are exactly the
    /// submodules that cannot be written as an intersection of strictly
    /// larger ones.
    pub fn completely_irreducibles(self: &Arc<Self>) -> Result<Vec<Submodule>> {
        self.completely_irreducibles_capped(DEFAULT_CARRIER_CAP)
    }

    pub fn completely_irreducibles_capped(self: &Arc<Self>, cap: usize) -> Result<Vec<Submodule>> {
        let lattice = self.submodules_capped(cap)?;
        Ok(lattice
            .iter()
            .filter(|n| {
                if n.is_whole() {
                    return false;
                }
                let mut meet = ElemSet::full(self.n);
                for k in &lattice {
                    if n.members != k.members && n.members.is_subset(&k.members) {
                        meet = meet.intersect(&k.members);
                    }
                }
                meet != n.members
            })
            .cloned()
            .collect())
    }

    /// Z_R(M): ring elements acting non-injectively.
    pub fn z_set(self: &Arc<Self>) -> ElementSet {
        let members = ElemSet::from_elems(
            self.ring.size(),
            self.ring
                .elements()
                .filter(|&r| self.elements().any(|m| m != 0 && self.act(r, m) == 0)),
        );
        ElementSet {
            ring: self.ring.clone(),
            members,
        }
    }

    /// W_R(M): ring elements acting non-surjectively.
    pub fn w_set(self: &Arc<Self>) -> ElementSet {
        let whole = ElemSet::full(self.n);
        let members = ElemSet::from_elems(
            self.ring.size(),
            self.ring
                .elements()
                .filter(|&r| self.act_set(r, &whole) != whole),
        );
        ElementSet {
            ring: self.ring.clone(),
            members,
        }
    }

    /// Does every submodule have the form I·M? Tries (N :_R M)·M first and
    /// falls back to scanning all ideals before reporting a counterexample.
    pub fn is_multiplication(self: &Arc<Self>) -> Result<DecisionReport> {
        const PROP: &str = "multiplication";
        let lattice = self.submodules()?;
        let spec = spectrum(&self.ring);
        let mut certs = Vec::new();
        let mut checked = 0u64;
        for n in &lattice {
            checked += 1;
            let colon = n.colon_ideal();
            if self.ideal_times_module(&colon.members) == n.members {
                certs.push(SubmoduleCert {
                    submodule: n.members.to_vec(),
                    ideal: colon.members.to_vec(),
                });
                continue;
            }
            let fallback = spec
                .all_ideals
                .iter()
                .find(|i| self.ideal_times_module(&i.members) == n.members);
            match fallback {
                Some(i) => certs.push(SubmoduleCert {
                    submodule: n.members.to_vec(),
                    ideal: i.members.to_vec(),
                }),
                None => {
                    return Ok(DecisionReport::fails(
                        PROP,
                        Counterexample::Plain(FailureDatum::Submodule {
                            members: n.members.to_vec(),
                        }),
                        checked,
                    ))
                }
            }
        }
        Ok(DecisionReport::holds(
            PROP,
            Witness {
                s: None,
                certs: crate::report::CertBundle::PerSubmodule(certs),
            },
            checked,
        ))
    }

    /// Does every submodule N equal (0 :_M Ann(N))?
    pub fn is_comultiplication(self: &Arc<Self>) -> Result<DecisionReport> {
        const PROP: &str = "comultiplication";
        let lattice = self.submodules()?;
        let mut certs = Vec::new();
        let mut checked = 0u64;
        for n in &lattice {
            checked += 1;
            let ann = n.annihilator();
            let back = Submodule::zero(self).colon_into(&ann);
            if back.members != n.members {
                return Ok(DecisionReport::fails(
                    PROP,
                    Counterexample::Plain(FailureDatum::Submodule {
                        members: n.members.to_vec(),
                    }),
                    checked,
                ));
            }
            certs.push(SubmoduleCert {
                submodule: n.members.to_vec(),
                ideal: ann.members.to_vec(),
            });
        }
        Ok(DecisionReport::holds(
            PROP,
            Witness {
                s: None,
                certs: crate::report::CertBundle::PerSubmodule(certs),
            },
            checked,
        ))
    }

    /// I·M as a member set: the additive closure of {i·m}.
    pub fn ideal_times_module(&self, ideal_members: &ElemSet) -> ElemSet {
        let mut prods = ElemSet::empty(self.n);
        for i in ideal_members.iter() {
            for m in 0..self.n {
                prods.insert(self.act(i, m));
            }
        }
        self.additive_closure(&prods)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    SameRing,
    ProductRing,
}

/// A subset of a ring's carrier with no structure beyond membership.
#[derive(Clone, Debug)]
pub struct ElementSet {
    pub ring: Arc<FiniteRing>,
    pub members: ElemSet,
}

/// A submodule: a subset containing 0, closed under addition and the
/// ring action.
#[derive(Clone)]
pub struct Submodule {
    module: Arc<FiniteModule>,
    members: ElemSet,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{:?} of {}", self.members, self.module.label())
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.module.same_structure(&other.module) && self.members == other.members
    }
}
impl Eq for Submodule {}

impl Submodule {
    /// Wraps a member set, validating the submodule axioms.
    pub fn new(module: Arc<FiniteModule>, members: ElemSet) -> Result<Self> {
        let s = Submodule { module, members };
        s.validate()?;
        Ok(s)
    }

    /// The smallest submodule containing `gens`.
    pub fn span<I: IntoIterator<Item = usize>>(module: &Arc<FiniteModule>, gens: I) -> Self {
        let n = module.size();
        let mut members = ElemSet::singleton(n, 0);
        for g in gens {
            let cyclic = ElemSet::from_elems(n, module.ring().elements().map(|r| module.act(r, g)));
            members = module.sum_sets(&members, &cyclic);
        }
        Submodule {
            module: module.clone(),
            members,
        }
    }

    pub fn zero(module: &Arc<FiniteModule>) -> Self {
        Submodule {
            module: module.clone(),
            members: ElemSet::singleton(module.size(), 0),
        }
    }

    pub fn whole(module: &Arc<FiniteModule>) -> Self {
        Submodule {
            module: module.clone(),
            members: ElemSet::full(module.size()),
        }
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn is_zero(&self) -> bool {
        self.members.card() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.is_full()
    }

    pub fn validate(&self) -> Result<()> {
        let viol = |axiom: &str, ws: &[usize]| {
            Err(EngineError::AxiomViolation {
                axiom: axiom.to_string(),
                witness: ws
                    .iter()
                    .map(|&e| format!("#{e}"))
                    .collect::<Vec<_>>()
                    .join(", "),
            })
        };
        if !self.members.contains(0) {
            return viol("submodule contains zero", &[]);
        }
        for a in self.members.iter() {
            for b in self.members.iter() {
                if !self.members.contains(self.module.add(a, b)) {
                    return viol("submodule closed under addition", &[a, b]);
                }
            }
            for r in self.module.ring().elements() {
                if !self.members.contains(self.module.act(r, a)) {
                    return viol("submodule closed under action", &[r, a]);
                }
            }
        }
        Ok(())
    }

    /// Ann_R(N) = {r : rN = 0}.
    pub fn annihilator(&self) -> Ideal {
        let ring = self.module.ring();
        let members = ElemSet::from_elems(
            ring.size(),
            ring.elements()
                .filter(|&r| self.members.iter().all(|m| self.module.act(r, m) == 0)),
        );
        Ideal {
            ring: ring.clone(),
            members,
        }
    }

    /// (N :_R M) = {r : rM ⊆ N}.
    pub fn colon_ideal(&self) -> Ideal {
        let ring = self.module.ring();
        let members = ElemSet::from_elems(
            ring.size(),
            ring.elements().filter(|&r| {
                self.module
                    .elements()
                    .all(|m| self.members.contains(self.module.act(r, m)))
            }),
        );
        Ideal {
            ring: ring.clone(),
            members,
        }
    }

    /// (N :_M I) = {m : I·m ⊆ N}.
    pub fn colon_into(&self, ideal: &Ideal) -> Submodule {
        let members = ElemSet::from_elems(
            self.module.size(),
            self.module.elements().filter(|&m| {
                ideal
                    .members
                    .iter()
                    .all(|i| self.members.contains(self.module.act(i, m)))
            }),
        );
        Submodule {
            module: self.module.clone(),
            members,
        }
    }

    /// s·N as a submodule.
    pub fn scaled(&self, s: usize) -> Submodule {
        Submodule {
            module: self.module.clone(),
            members: self.module.act_set(s, &self.members),
        }
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule {
            module: self.module.clone(),
            members: self.module.sum_sets(&self.members, &other.members),
        }
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        Submodule {
            module: self.module.clone(),
            members: self.members.intersect(&other.members),
        }
    }

    /// The P-interior: the intersection of all completely irreducible L
    /// with rN ⊆ L for some r outside P. No qualifying L yields M.
    pub fn interior(&self, p: &Ideal) -> Result<Submodule> {
        let module = &self.module;
        let cis = module.completely_irreducibles()?;
        let mut meet = ElemSet::full(module.size());
        for l in &cis {
            let qualifies = module
                .ring()
                .elements()
                .filter(|&r| !p.members.contains(r))
                .any(|r| module.act_set(r, &self.members).is_subset(&l.members));
            if qualifies {
                meet = meet.intersect(&l.members);
            }
        }
        Ok(Submodule {
            module: module.clone(),
            members: meet,
        })
    }
}

/// A homomorphism of modules over one ring, given by its graph.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub source: Arc<FiniteModule>,
    pub target: Arc<FiniteModule>,
    pub map: Vec<usize>,
}

impl ModuleHom {
    /// Wraps and validates a graph.
    pub fn new(
        source: Arc<FiniteModule>,
        target: Arc<FiniteModule>,
        map: Vec<usize>,
    ) -> Result<Self> {
        let hom = ModuleHom {
            source,
            target,
            map,
        };
        hom.validate()?;
        Ok(hom)
    }

    pub fn identity(module: &Arc<FiniteModule>) -> Self {
        ModuleHom {
            source: module.clone(),
            target: module.clone(),
            map: (0..module.size()).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let viol = |axiom: &str, ws: &[usize]| {
            Err(EngineError::AxiomViolation {
                axiom: axiom.to_string(),
                witness: ws
                    .iter()
                    .map(|&e| format!("#{e}"))
                    .collect::<Vec<_>>()
                    .join(", "),
            })
        };
        if !self.source.ring().same_structure(self.target.ring()) {
            return Err(EngineError::TypeMismatch(
                "module hom needs source and target over one ring".into(),
            ));
        }
        if self.map.len() != self.source.size() {
            return viol("hom graph total", &[]);
        }
        if self.map.iter().any(|&v| v >= self.target.size()) {
            return viol("hom graph lands in target", &[]);
        }
        for a in self.source.elements() {
            for b in self.source.elements() {
                if self.map[self.source.add(a, b)] != self.target.add(self.map[a], self.map[b]) {
                    return viol("hom is additive", &[a, b]);
                }
            }
            for r in self.source.ring().elements() {
                if self.map[self.source.act(r, a)] != self.target.act(r, self.map[a]) {
                    return viol("hom commutes with action", &[r, a]);
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    pub fn kernel(&self) -> ElemSet {
        ElemSet::from_elems(
            self.source.size(),
            self.source.elements().filter(|&e| self.map[e] == 0),
        )
    }

    pub fn is_mono(&self) -> bool {
        self.kernel().card() == 1
    }

    pub fn image(&self, n: &Submodule) -> Submodule {
        debug_assert!(n.module().same_structure(&self.source));
        Submodule {
            module: self.target.clone(),
            members: ElemSet::from_elems(
                self.target.size(),
                n.members().iter().map(|e| self.map[e]),
            ),
        }
    }

    pub fn preimage(&self, n: &Submodule) -> Submodule {
        debug_assert!(n.module().same_structure(&self.target));
        Submodule {
            module: self.source.clone(),
            members: ElemSet::from_elems(
                self.source.size(),
                self.source
                    .elements()
                    .filter(|&e| n.members().contains(self.map[e])),
            ),
        }
    }
}

/// All module homomorphisms source → target, found by assigning images to
/// a greedy generating sequence and propagating; every candidate graph is
/// fully re-validated.
pub fn enumerate_homs(
    source: &Arc<FiniteModule>,
    target: &Arc<FiniteModule>,
) -> Result<Vec<ModuleHom>> {
    if !source.ring().same_structure(target.ring()) {
        return Err(EngineError::TypeMismatch(
            "hom enumeration needs modules over one ring".into(),
        ));
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut span = Submodule::zero(source);
    for m in source.elements() {
        if !span.members().contains(m) {
            gens.push(m);
            span = span.sum(&Submodule::span(source, [m]));
        }
    }
    let k = gens.len();
    let t = target.size();
    let mut out = Vec::new();
    let total = (t as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if total > 1_000_000 {
        return Err(EngineError::CapExceeded {
            size: total as usize,
            cap: 1_000_000,
        });
    }
    let mut assign = vec![0usize; k];
    loop {
        if let Some(map) = propagate(source, target, &gens, &assign) {
            let hom = ModuleHom {
                source: source.clone(),
                target: target.clone(),
                map,
            };
            if hom.validate().is_ok() {
                out.push(hom);
            }
        }
        // next assignment in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            assign[i] += 1;
            if assign[i] < t {
                break;
            }
            assign[i] = 0;
        }
    }
}

fn propagate(
    source: &Arc<FiniteModule>,
    target: &Arc<FiniteModule>,
    gens: &[usize],
    assign: &[usize],
) -> Option<Vec<usize>> {
    let n = source.size();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    for (g, &h) in gens.iter().zip(assign) {
        if map[*g] != usize::MAX && map[*g] != h {
            return None;
        }
        map[*g] = h;
    }
    loop {
        let mut grew = false;
        for a in 0..n {
            if map[a] == usize::MAX {
                continue;
            }
            for r in source.ring().elements() {
                let ra = source.act(r, a);
                let want = target.act(r, map[a]);
                if map[ra] == usize::MAX {
                    map[ra] = want;
                    grew = true;
                } else if map[ra] != want {
                    return None;
                }
            }
            for b in 0..n {
                if map[b] == usize::MAX {
                    continue;
                }
                let ab = source.add(a, b);
                let want = target.add(map[a], map[b]);
                if map[ab] == usize::MAX {
                    map[ab] = want;
                    grew = true;
                } else if map[ab] != want {
                    return None;
                }
            }
        }
        if !grew {
            break;
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(map)
}

/// All monomorphisms source → target.
pub fn enumerate_monos(
    source: &Arc<FiniteModule>,
    target: &Arc<FiniteModule>,
) -> Result<Vec<ModuleHom>> {
    Ok(enumerate_homs(source, target)?
        .into_iter()
        .filter(ModuleHom::is_mono)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteRing> {
        FiniteRing::cyclic(n).unwrap()
    }

    /// ℤ₂ as a ℤ₄-module via reduction mod 2.
    fn z2_over_z4() -> Arc<FiniteModule> {
        FiniteModule::from_tables("M2", &z(4), vec![0, 1, 1, 0], vec![0, 0, 0, 1, 0, 0, 0, 1])
            .unwrap()
    }

    // Independent oracle: all submodules by subset scan.
    fn brute_force_submodules(m: &Arc<FiniteModule>) -> Vec<ElemSet> {
        let n = m.size();
        assert!(n <= 16);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let set = ElemSet::from_elems(n, (0..n).filter(|&e| mask >> e & 1 == 1));
            if !set.contains(0) {
                continue;
            }
            let ok = set.iter().all(|a| {
                set.iter().all(|b| set.contains(m.add(a, b)))
                    && m.ring().elements().all(|r| set.contains(m.act(r, a)))
            });
            if ok {
                out.push(set);
            }
        }
        out.sort();
        out
    }

    // Independent oracle: complete irreducibility straight from the
    // definition, scanning every family of submodules.
    fn brute_force_cis(m: &Arc<FiniteModule>) -> Vec<ElemSet> {
        let lattice = brute_force_submodules(m);
        let k = lattice.len();
        assert!(k <= 16);
        let mut out = Vec::new();
        for n in &lattice {
            if n.is_full() {
                continue;
            }
            let mut reducible = false;
            for mask in 0u32..(1 << k) {
                let family: Vec<&ElemSet> = (0..k)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| &lattice[i])
                    .collect();
                if family.is_empty() || family.iter().any(|f| **f == *n) {
                    continue;
                }
                let mut meet = ElemSet::full(m.size());
                for f in &family {
                    meet = meet.intersect(f);
                }
                if meet == *n {
                    reducible = true;
                    break;
                }
            }
            if !reducible {
                out.push(n.clone());
            }
        }
        out
    }

    #[test]
    fn regular_module_submodules_are_ideals() {
        let m = FiniteModule::regular(&z(4));
        let subs = m.submodules().unwrap();
        assert_eq!(subs.len(), 3);
        let ideals = spectrum(&z(4)).all_ideals;
        for (s, i) in subs.iter().zip(&ideals) {
            assert_eq!(s.members().to_vec(), i.members.to_vec());
        }
        // a field has only 0 and the whole module
        assert_eq!(FiniteModule::regular(&z(5)).submodules().unwrap().len(), 2);
        // Z6 has no global annihilating element besides 0
        let m6 = FiniteModule::regular(&z(6));
        assert_eq!(
            Submodule::whole(&m6).annihilator().members.to_vec(),
            vec![0]
        );
    }

    #[test]
    fn submodule_lattices_match_brute_force() {
        let modules = [
            FiniteModule::regular(&z(4)),
            FiniteModule::regular(&z(6)),
            FiniteModule::regular(&z(12)),
            z2_over_z4(),
            FiniteModule::product(
                &FiniteModule::regular(&z(2)),
                &FiniteModule::regular(&z(2)),
                ProductMode::SameRing,
            )
            .unwrap(),
        ];
        for m in &modules {
            let got: Vec<ElemSet> = m
                .submodules()
                .unwrap()
                .iter()
                .map(|s| s.members().clone())
                .collect();
            assert_eq!(got, brute_force_submodules(m), "lattice of {}", m.label());
            for s in m.submodules().unwrap() {
                s.validate().unwrap();
            }
        }
    }

    #[test]
    fn from_tables_validates_axioms() {
        let m = z2_over_z4();
        assert_eq!(m.size(), 2);
        assert_eq!(
            Submodule::whole(&m).annihilator().members.to_vec(),
            vec![0, 2]
        );

        // no unital Z4-action on Z3 extends 1·m = m with 3·m = 0
        let bad = FiniteModule::from_tables(
            "bad",
            &z(4),
            vec![0, 1, 2, 1, 2, 0, 2, 0, 1],
            vec![0, 0, 0, 0, 1, 2, 0, 2, 1, 0, 0, 0],
        );
        match bad {
            Err(EngineError::AxiomViolation { axiom, .. }) => {
                assert!(axiom.contains("ring"), "axiom was: {axiom}")
            }
            other => panic!("expected axiom violation, got {other:?}"),
        }

        let zero = FiniteModule::zero_module(&z(6));
        assert!(Submodule::whole(&zero).annihilator().members.is_full());
    }

    #[test]
    fn products_of_modules() {
        // product-ring mode: Z2 x Z4 over Z2 x Z4 has exactly the 6
        // componentwise submodules
        let p = FiniteModule::product(
            &FiniteModule::regular(&z(2)),
            &FiniteModule::regular(&z(4)),
            ProductMode::ProductRing,
        )
        .unwrap();
        assert_eq!(p.size(), 8);
        let subs = p.submodules().unwrap();
        assert_eq!(subs.len(), 6);
        // every submodule is a product of member sets
        for s in &subs {
            let left: std::collections::BTreeSet<usize> =
                s.members().iter().map(|e| p.unpair(e).0).collect();
            let right: std::collections::BTreeSet<usize> =
                s.members().iter().map(|e| p.unpair(e).1).collect();
            assert_eq!(s.members().card(), left.len() * right.len());
        }

        // same-ring mode: Z2 x Z2 over Z2 has 5 submodules
        let v = FiniteModule::product(
            &FiniteModule::regular(&z(2)),
            &FiniteModule::regular(&z(2)),
            ProductMode::SameRing,
        )
        .unwrap();
        assert_eq!(v.submodules().unwrap().len(), 5);

        // ring mismatch in same-ring mode
        assert!(FiniteModule::product(
            &FiniteModule::regular(&z(2)),
            &FiniteModule::regular(&z(3)),
            ProductMode::SameRing,
        )
        .is_err());

        // product of zero modules is the zero module
        let zz = FiniteModule::product(
            &FiniteModule::zero_module(&z(2)),
            &FiniteModule::zero_module(&z(2)),
            ProductMode::SameRing,
        )
        .unwrap();
        assert_eq!(zz.size(), 1);
    }

    #[test]
    fn spans() {
        let m4 = FiniteModule::regular(&z(4));
        assert_eq!(Submodule::span(&m4, [2]).members().to_vec(), vec![0, 2]);
        assert_eq!(Submodule::span(&m4, []).members().to_vec(), vec![0]);
        let v = FiniteModule::product(
            &FiniteModule::regular(&z(2)),
            &FiniteModule::regular(&z(2)),
            ProductMode::SameRing,
        )
        .unwrap();
        let line = Submodule::span(&v, [v.pair(1, 0)]);
        assert_eq!(line.members().to_vec(), vec![0, v.pair(1, 0)]);
    }

    #[test]
    fn annihilators_and_colons() {
        let m4 = FiniteModule::regular(&z(4));
        let n = Submodule::span(&m4, [2]);
        assert_eq!(n.annihilator().members.to_vec(), vec![0, 2]);
        assert!(Submodule::zero(&m4).annihilator().members.is_full());
        assert_eq!(n.colon_ideal().members.to_vec(), vec![0, 2]);
        assert!(Submodule::whole(&m4).colon_ideal().members.is_full());
        assert_eq!(
            Submodule::zero(&m4).colon_ideal().members,
            Submodule::whole(&m4).annihilator().members
        );
        // (0 :_M I)
        let zero = Submodule::zero(&m4);
        assert_eq!(
            zero.colon_into(&Ideal::span(&z(4), [2])).members().to_vec(),
            vec![0, 2]
        );
        assert_eq!(
            zero.colon_into(&Ideal::whole(&z(4))).members().to_vec(),
            vec![0]
        );
        assert_eq!(zero.colon_into(&Ideal::zero(&z(4))).members().card(), 4);
        // annihilator and colon results satisfy the ideal axioms
        n.annihilator().validate().unwrap();
        n.colon_ideal().validate().unwrap();
    }

    #[test]
    fn completely_irreducibles_match_definition() {
        let modules = [
            FiniteModule::regular(&z(4)),
            FiniteModule::regular(&z(6)),
            z2_over_z4(),
            FiniteModule::product(
                &FiniteModule::regular(&z(2)),
                &FiniteModule::regular(&z(2)),
                ProductMode::SameRing,
            )
            .unwrap(),
        ];
        for m in &modules {
            let got: Vec<ElemSet> = m
                .completely_irreducibles()
                .unwrap()
                .iter()
                .map(|s| s.members().clone())
                .collect();
            assert_eq!(got, brute_force_cis(m), "CIs of {}", m.label());
        }
    }

    #[test]
    fn ci_examples() {
        // the chain lattice of Z4: both proper submodules are completely
        // irreducible ({0} is the meet of no family of strictly larger ones)
        let m4 = FiniteModule::regular(&z(4));
        let cis: Vec<Vec<usize>> = m4
            .completely_irreducibles()
            .unwrap()
            .iter()
            .map(|s| s.members().to_vec())
            .collect();
        assert_eq!(cis, vec![vec![0], vec![0, 2]]);

        // Z2 x Z2 over Z2: the three lines, with 0 excluded (it is the
        // meet of the lines)
        let v = FiniteModule::product(
            &FiniteModule::regular(&z(2)),
            &FiniteModule::regular(&z(2)),
            ProductMode::SameRing,
        )
        .unwrap();
        let cis = v.completely_irreducibles().unwrap();
        assert_eq!(cis.len(), 3);
        assert!(cis.iter().all(|s| s.members().card() == 2));

        // simple module: {0} is completely irreducible
        let m2 = FiniteModule::regular(&z(2));
        let cis = m2.completely_irreducibles().unwrap();
        assert_eq!(cis.len(), 1);
        assert!(cis[0].is_zero());
    }

    #[test]
    fn every_submodule_is_a_meet_of_cis() {
        for m in [
            FiniteModule::regular(&z(4)),
            FiniteModule::regular(&z(12)),
            FiniteModule::product(
                &FiniteModule::regular(&z(2)),
                &FiniteModule::regular(&z(2)),
                ProductMode::SameRing,
            )
            .unwrap(),
        ] {
            let cis = m.completely_irreducibles().unwrap();
            for n in m.submodules().unwrap() {
                let mut meet = ElemSet::full(m.size());
                for l in &cis {
                    if n.members().is_subset(l.members()) {
                        meet = meet.intersect(l.members());
                    }
                }
                assert_eq!(
                    meet,
                    *n.members(),
                    "submodule {:?} of {}",
                    n.members(),
                    m.label()
                );
            }
        }
    }

    #[test]
    fn interiors() {
        let m4 = FiniteModule::regular(&z(4));
        let p = Ideal::span(&z(4), [2]);
        // N = 0: every CI qualifies, and their meet is 0
        let i0 = Submodule::zero(&m4).interior(&p).unwrap();
        assert!(i0.is_zero());
        // N = M: rM = M is never inside a proper CI, so the empty meet is M
        let im = Submodule::whole(&m4).interior(&p).unwrap();
        assert!(im.is_whole());
        // interior is always inside the module
        let in2 = Submodule::span(&m4, [2]).interior(&p).unwrap();
        assert!(in2.members().is_subset(&ElemSet::full(4)));
    }

    #[test]
    fn z_and_w_sets() {
        let m4 = FiniteModule::regular(&z(4));
        assert_eq!(m4.z_set().members.to_vec(), vec![0, 2]);
        assert_eq!(m4.w_set().members.to_vec(), vec![0, 2]);
        let f = FiniteModule::regular(&z(5));
        assert_eq!(f.z_set().members.to_vec(), vec![0]);
        assert_eq!(f.w_set().members.to_vec(), vec![0]);
        let zero = FiniteModule::zero_module(&z(4));
        assert!(zero.z_set().members.is_empty());
        assert!(zero.w_set().members.is_empty());
    }

    #[test]
    fn multiplication_and_comultiplication() {
        let m4 = FiniteModule::regular(&z(4));
        assert!(m4.is_multiplication().unwrap().verdict);
        assert!(m4.is_comultiplication().unwrap().verdict);

        let v = FiniteModule::product(
            &FiniteModule::regular(&z(2)),
            &FiniteModule::regular(&z(2)),
            ProductMode::SameRing,
        )
        .unwrap();
        let rep = v.is_multiplication().unwrap();
        assert!(!rep.verdict);
        match rep.counterexample {
            Some(Counterexample::Plain(FailureDatum::Submodule { members })) => {
                assert_eq!(members.len(), 2)
            }
            other => panic!("expected submodule counterexample, got {other:?}"),
        }

        let f = FiniteModule::regular(&z(5));
        assert!(f.is_multiplication().unwrap().verdict);
        assert!(f.is_comultiplication().unwrap().verdict);
    }

    #[test]
    fn module_homs() {
        let m2 = z2_over_z4();
        let m4 = FiniteModule::regular(&z(4));
        // inclusion m ↦ 2m
        let inc = ModuleHom::new(m2.clone(), m4.clone(), vec![0, 2]).unwrap();
        assert!(inc.is_mono());
        assert_eq!(
            inc.image(&Submodule::whole(&m2)).members().to_vec(),
            vec![0, 2]
        );
        // image preserves annihilators under monomorphisms
        let n = Submodule::whole(&m2);
        assert_eq!(inc.image(&n).annihilator().members, n.annihilator().members);

        let id = ModuleHom::identity(&m4);
        let sub = Submodule::span(&m4, [2]);
        assert_eq!(id.image(&sub).members(), sub.members());

        // zero map is not mono unless the source is 0
        let zmap = ModuleHom::new(m2.clone(), m4.clone(), vec![0, 0]).unwrap();
        assert!(!zmap.is_mono());

        // a non-linear graph is rejected
        assert!(ModuleHom::new(m2.clone(), m4.clone(), vec![0, 1]).is_err());
    }

    #[test]
    fn hom_enumeration() {
        let m2 = z2_over_z4();
        let m4 = FiniteModule::regular(&z(4));
        let homs = enumerate_homs(&m2, &m4).unwrap();
        assert_eq!(homs.len(), 2); // zero map and the inclusion
        let monos = enumerate_monos(&m2, &m4).unwrap();
        assert_eq!(monos.len(), 1);
        assert_eq!(monos[0].map, vec![0, 2]);

        // preimage of a submodule is a submodule
        let pre = monos[0].preimage(&Submodule::span(&m4, [2]));
        pre.validate().unwrap();
        assert_eq!(pre.members().card(), 2);
    }
}
