//! Finite commutative rings with identity, given by explicit operation
//! tables, together with ideals, spectra, and multiplicatively closed
//! subsets.
//!
//! Elements are indices into an ordered carrier; index 0 is always the zero
//! element. All values are immutable after construction and safe to share
//! across threads.

use std::fmt;
use std::sync::Arc;

use crate::error::{EngineError, Result};
use crate::module::{FiniteModule, Submodule};
use crate::report::{
    Counterexample, DecisionReport, DisqualifyReason, FailureDatum, PairBranch, PairCert, SFailure,
    Witness,
};
use crate::set::ElemSet;

/// How a ring was built; drives element-literal syntax in front ends.
#[derive(Clone, Debug)]
pub enum RingProvenance {
    Cyclic {
        n: usize,
    },
    Product {
        left: Arc<FiniteRing>,
        right: Arc<FiniteRing>,
    },
    Quotient {
        base: Arc<FiniteRing>,
        ideal: ElemSet,
        projection: Vec<usize>,
    },
    Idealization {
        base: Arc<FiniteRing>,
        module: Arc<FiniteModule>,
    },
    Tables,
}

/// A finite commutative ring with identity.
pub struct FiniteRing {
    label: String,
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    one: usize,
    neg: Vec<usize>,
    names: Vec<String>,
    provenance: RingProvenance,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, |R|={})", self.label, self.n)
    }
}

impl FiniteRing {
    fn build(
        label: String,
        add: Vec<usize>,
        mul: Vec<usize>,
        one: usize,
        names: Vec<String>,
        provenance: RingProvenance,
    ) -> Result<Arc<Self>> {
        let n = names.len();
        if n < 2 {
            return Err(EngineError::InvalidConstruction(
                "a ring needs at least two elements (one ≠ zero)".into(),
            ));
        }
        let mut neg = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b;
                }
            }
        }
        let ring = FiniteRing {
            label,
            n,
            add,
            mul,
            one,
            neg,
            names,
            provenance,
        };
        ring.check_axioms()?;
        Ok(Arc::new(ring))
    }

    pub(crate) fn new_raw(
        label: String,
        add: Vec<usize>,
        mul: Vec<usize>,
        one: usize,
        names: Vec<String>,
        provenance: RingProvenance,
    ) -> Result<Arc<Self>> {
        Self::build(label, add, mul, one, names, provenance)
    }

    /// The cyclic ring of integers modulo `n`.
    pub fn cyclic(n: usize) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(EngineError::InvalidConstruction(format!(
                "cyclic ring needs modulus ≥ 2, got {n}"
            )));
        }
        let add = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        let mul = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a * b) % n))
            .collect();
        let names = (0..n).map(|e| e.to_string()).collect();
        Self::build(
            format!("Z{n}"),
            add,
            mul,
            1,
            names,
            RingProvenance::Cyclic { n },
        )
    }

    /// Direct product with componentwise operations; identity (1,1).
    pub fn product(a: &Arc<Self>, b: &Arc<Self>) -> Arc<Self> {
        let (na, nb) = (a.n, b.n);
        let n = na * nb;
        let idx = |x: usize, y: usize| x * nb + y;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for xa in 0..na {
            for xb in 0..nb {
                for ya in 0..na {
                    for yb in 0..nb {
                        let (p, q) = (idx(xa, xb), idx(ya, yb));
                        add[p * n + q] = idx(a.add(xa, ya), b.add(xb, yb));
                        mul[p * n + q] = idx(a.mul(xa, ya), b.mul(xb, yb));
                    }
                }
            }
        }
        let names = (0..na)
            .flat_map(|x| (0..nb).map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", a.names[x], b.names[y]))
            .collect();
        Self::build(
            format!("{}x{}", a.label, b.label),
            add,
            mul,
            idx(a.one, b.one),
            names,
            RingProvenance::Product {
                left: a.clone(),
                right: b.clone(),
            },
        )
        .expect("product of valid rings is valid")
    }

    /// A ring from raw tables; validates every axiom.
    pub fn from_tables(
        label: &str,
        add: Vec<usize>,
        mul: Vec<usize>,
        one: usize,
    ) -> Result<Arc<Self>> {
        let n2 = add.len();
        let n = (n2 as f64).sqrt() as usize;
        if n * n != n2 || mul.len() != n2 {
            return Err(EngineError::InvalidConstruction(
                "tables must be square and of equal size".into(),
            ));
        }
        if add.iter().chain(&mul).any(|&e| e >= n) || one >= n {
            return Err(EngineError::InvalidConstruction(
                "table entry outside carrier".into(),
            ));
        }
        let names = (0..n).map(|e| e.to_string()).collect();
        Self::build(
            label.to_string(),
            add,
            mul,
            one,
            names,
            RingProvenance::Tables,
        )
    }

    /// Quotient by a proper ideal, with the canonical surjection.
    /// Cosets are ordered by least representative, so the zero coset
    /// stays at index 0.
    pub fn quotient(base: &Arc<Self>, ideal: &Ideal) -> Result<(Arc<Self>, RingHom)> {
        if !base.same_structure(&ideal.ring) {
            return Err(EngineError::TypeMismatch(
                "ideal is not over this ring".into(),
            ));
        }
        ideal.validate()?;
        if ideal.members.is_full() {
            return Err(EngineError::InvalidConstruction(
                "cannot quotient by the whole ring".into(),
            ));
        }
        let n = base.n;
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for i in ideal.members.iter() {
                coset_of[base.add(x, i)] = idx;
            }
        }
        let q = reps.len();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for (i, &ri) in reps.iter().enumerate() {
            for (j, &rj) in reps.iter().enumerate() {
                add[i * q + j] = coset_of[base.add(ri, rj)];
                mul[i * q + j] = coset_of[base.mul(ri, rj)];
            }
        }
        let names = reps.iter().map(|&r| base.names[r].clone()).collect();
        let label = format!(
            "{}/{{{}}}",
            base.label,
            ideal
                .members
                .iter()
                .map(|e| base.names[e].clone())
                .collect::<Vec<_>>()
                .join(",")
        );
        let ring = Self::build(
            label,
            add,
            mul,
            coset_of[base.one],
            names,
            RingProvenance::Quotient {
                base: base.clone(),
                ideal: ideal.members.clone(),
                projection: coset_of.clone(),
            },
        )?;
        let hom = RingHom {
            source: base.clone(),
            target: ring.clone(),
            map: coset_of,
        };
        hom.validate()?;
        Ok((ring, hom))
    }

    /// The idealization of a module: pairs (a, m) with componentwise
    /// addition and product (a,m)(b,m') = (ab, am' + bm). The module
    /// becomes a square-zero ideal.
    pub fn idealization(base: &Arc<Self>, module: &Arc<FiniteModule>) -> Result<Arc<Self>> {
        if !base.same_structure(module.ring()) {
            return Err(EngineError::TypeMismatch(
                "module is not over this ring".into(),
            ));
        }
        let (nr, nm) = (base.n, module.size());
        let n = nr * nm;
        let idx = |r: usize, m: usize| r * nm + m;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for ra in 0..nr {
            for ma in 0..nm {
                for rb in 0..nr {
                    for mb in 0..nm {
                        let (p, q) = (idx(ra, ma), idx(rb, mb));
                        add[p * n + q] = idx(base.add(ra, rb), module.add(ma, mb));
                        mul[p * n + q] = idx(
                            base.mul(ra, rb),
                            module.add(module.act(ra, mb), module.act(rb, ma)),
                        );
                    }
                }
            }
        }
        let names = (0..nr)
            .flat_map(|r| (0..nm).map(move |m| (r, m)))
            .map(|(r, m)| format!("({}|{})", base.names[r], module.name(m)))
            .collect();
        Self::build(
            format!("{}(+){}", base.label, module.label()),
            add,
            mul,
            idx(base.one, 0),
            names,
            RingProvenance::Idealization {
                base: base.clone(),
                module: module.clone(),
            },
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn provenance(&self) -> &RingProvenance {
        &self.provenance
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, t: u32) -> usize {
        let mut acc = self.one;
        for _ in 0..t {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Least t ≥ 1 with a^t = 0, if a is nilpotent.
    pub fn nilpotency_index(&self, a: usize) -> Option<u32> {
        let mut acc = a;
        for t in 1..=self.n as u32 {
            if acc == 0 {
                return Some(t);
            }
            acc = self.mul(acc, a);
        }
        None
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one)
    }

    pub fn units(&self) -> ElemSet {
        ElemSet::from_elems(self.n, self.elements().filter(|&a| self.is_unit(a)))
    }

    pub fn is_field(&self) -> bool {
        self.elements().skip(1).all(|a| self.is_unit(a))
    }

    /// Structural identity: same carrier size, tables, and one. Labels and
    /// provenance are ignored, so a ring equals any reconstruction of it.
    pub fn same_structure(&self, other: &FiniteRing) -> bool {
        std::ptr::eq(self, other)
            || (self.n == other.n
                && self.one == other.one
                && self.add == other.add
                && self.mul == other.mul)
    }

    /// For product rings: the index of the pair (l, r).
    pub fn pair(&self, l: usize, r: usize) -> usize {
        match &self.provenance {
            RingProvenance::Product { right, .. } => l * right.size() + r,
            RingProvenance::Idealization { module, .. } => l * module.size() + r,
            _ => panic!("pair() on a ring without pair structure"),
        }
    }

    pub fn unpair(&self, e: usize) -> (usize, usize) {
        match &self.provenance {
            RingProvenance::Product { right, .. } => (e / right.size(), e % right.size()),
            RingProvenance::Idealization { module, .. } => (e / module.size(), e % module.size()),
            _ => panic!("unpair() on a ring without pair structure"),
        }
    }

    /// {r·x : x ∈ set}.
    pub fn scale_set(&self, r: usize, set: &ElemSet) -> ElemSet {
        ElemSet::from_elems(self.n, set.iter().map(|x| self.mul(r, x)))
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

    /// Exhaustively validates the ring axioms; an error names the failed
    /// axiom with witnessing elements.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.n;
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
        if self.one == 0 {
            return viol("one ≠ zero", &[]);
        }
        for a in 0..n {
            if self.add(a, 0) != a {
                return viol("additive identity", &[a]);
            }
            if self.neg[a] == usize::MAX {
                return viol("additive inverse exists", &[a]);
            }
            if self.mul(a, self.one) != a {
                return viol("multiplicative identity", &[a]);
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return viol("addition commutes", &[a, b]);
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return viol("multiplication commutes", &[a, b]);
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return viol("addition associates", &[a, b, c]);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return viol("multiplication associates", &[a, b, c]);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return viol("distributivity", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }
}

/// An ideal of a finite ring: a subset containing 0, closed under addition,
/// absorbing ring multiplication.
#[derive(Clone)]
pub struct Ideal {
    pub ring: Arc<FiniteRing>,
    pub members: ElemSet,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?} of {}", self.members, self.ring.label())
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_structure(&other.ring) && self.members == other.members
    }
}
impl Eq for Ideal {}

impl Ideal {
    /// Wraps a member set, validating the ideal axioms.
    pub fn new(ring: Arc<FiniteRing>, members: ElemSet) -> Result<Self> {
        let ideal = Ideal { ring, members };
        ideal.validate()?;
        Ok(ideal)
    }

    /// The smallest ideal containing `gens`: the sum of the principal
    /// ideals they generate.
    pub fn span<I: IntoIterator<Item = usize>>(ring: &Arc<FiniteRing>, gens: I) -> Self {
        let n = ring.size();
        let mut members = ElemSet::singleton(n, 0);
        for g in gens {
            let principal = ElemSet::from_elems(n, ring.elements().map(|r| ring.mul(r, g)));
            members = ring.sum_sets(&members, &principal);
        }
        Ideal {
            ring: ring.clone(),
            members,
        }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        Ideal {
            ring: ring.clone(),
            members: ElemSet::singleton(ring.size(), 0),
        }
    }

    pub fn whole(ring: &Arc<FiniteRing>) -> Self {
        Ideal {
            ring: ring.clone(),
            members: ElemSet::full(ring.size()),
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
        if !self.members.contains(0) {
            return viol("ideal contains zero", &[]);
        }
        for a in self.members.iter() {
            for b in self.members.iter() {
                if !self.members.contains(self.ring.add(a, b)) {
                    return viol("ideal closed under addition", &[a, b]);
                }
            }
            for r in self.ring.elements() {
                if !self.members.contains(self.ring.mul(r, a)) {
                    return viol("ideal absorbs multiplication", &[r, a]);
                }
            }
        }
        Ok(())
    }

    pub fn is_proper(&self) -> bool {
        !self.members.is_full()
    }

    /// {x : x^t ∈ I for some 1 ≤ t ≤ |R|}.
    pub fn radical(&self) -> Ideal {
        let n = self.ring.size();
        let mut members = ElemSet::empty(n);
        for x in 0..n {
            let mut p = x;
            for _ in 0..n {
                if self.members.contains(p) {
                    members.insert(x);
                    break;
                }
                p = self.ring.mul(p, x);
            }
        }
        Ideal {
            ring: self.ring.clone(),
            members,
        }
    }

    /// (I :_R x) = {r : rx ∈ I}.
    pub fn colon_element(&self, x: usize) -> Ideal {
        let members = ElemSet::from_elems(
            self.ring.size(),
            self.ring
                .elements()
                .filter(|&r| self.members.contains(self.ring.mul(r, x))),
        );
        Ideal {
            ring: self.ring.clone(),
            members,
        }
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            members: self.members.intersect(&other.members),
        }
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            members: self.ring.sum_sets(&self.members, &other.members),
        }
    }

    /// ab ∈ I ⇒ a ∈ I or b ∈ I, for proper I.
    pub fn is_prime(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        for a in self.ring.elements() {
            for b in self.ring.elements() {
                if self.members.contains(self.ring.mul(a, b))
                    && !self.members.contains(a)
                    && !self.members.contains(b)
                {
                    return false;
                }
            }
        }
        true
    }

    /// Decides whether this proper ideal is S-prime: I ∩ S = ∅ and some
    /// fixed s ∈ S has sa ∈ I or sb ∈ I whenever ab ∈ I. The least witness
    /// in carrier order is reported; failure lists one defeating pair per s.
    pub fn is_s_prime(&self, s: &MultClosedSet) -> DecisionReport {
        const PROP: &str = "s_prime_ideal";
        assert!(
            self.ring.same_structure(&s.ring),
            "S is not over the ideal's ring"
        );
        if !self.is_proper() {
            return DecisionReport::not_applicable(PROP, DisqualifyReason::ImproperIdeal, None);
        }
        if let Some(x) = self.members.first_common(&s.members) {
            return DecisionReport::not_applicable(PROP, DisqualifyReason::IdealMeetsS, Some(x));
        }
        let ring = &self.ring;
        let mut checked = 0u64;
        let mut failures = Vec::new();
        for cand in s.members.iter() {
            let mut defeat = None;
            'scan: for a in ring.elements() {
                for b in ring.elements() {
                    if self.members.contains(ring.mul(a, b)) {
                        checked += 1;
                        let ok_a = self.members.contains(ring.mul(cand, a));
                        let ok_b = self.members.contains(ring.mul(cand, b));
                        if !ok_a && !ok_b {
                            defeat = Some(FailureDatum::Pair { a, m: b });
                            break 'scan;
                        }
                    }
                }
            }
            match defeat {
                Some(d) => failures.push(SFailure { s: cand, datum: d }),
                None => {
                    let mut certs = Vec::new();
                    for a in ring.elements() {
                        for b in ring.elements() {
                            if self.members.contains(ring.mul(a, b)) {
                                let branch = if self.members.contains(ring.mul(cand, a)) {
                                    PairBranch::Scalar
                                } else {
                                    PairBranch::Element
                                };
                                certs.push(PairCert { a, m: b, branch });
                            }
                        }
                    }
                    return DecisionReport::holds(
                        PROP,
                        Witness {
                            s: Some(cand),
                            certs: crate::report::CertBundle::PerPair(certs),
                        },
                        checked,
                    );
                }
            }
        }
        DecisionReport::fails(PROP, Counterexample::PerS(failures), checked)
    }
}

/// All ideals of a ring, with the primes, maximals, and Jacobson radical.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub all_ideals: Vec<Ideal>,
    pub primes: Vec<Ideal>,
    pub maximals: Vec<Ideal>,
    pub jacobson: Ideal,
}

/// Enumerates every ideal by closing the principal ideals under pairwise
/// sum. Complete because each ideal is the sum of the principal ideals of
/// its members.
pub fn spectrum(ring: &Arc<FiniteRing>) -> Spectrum {
    let n = ring.size();
    let mut seen: std::collections::BTreeSet<ElemSet> = std::collections::BTreeSet::new();
    for a in 0..n {
        seen.insert(Ideal::span(ring, [a]).members);
    }
    loop {
        let snapshot: Vec<ElemSet> = seen.iter().cloned().collect();
        let mut grew = false;
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                let sum = ring.sum_sets(&snapshot[i], &snapshot[j]);
                if seen.insert(sum) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let all_ideals: Vec<Ideal> = seen
        .into_iter()
        .map(|members| Ideal {
            ring: ring.clone(),
            members,
        })
        .collect();
    let primes: Vec<Ideal> = all_ideals
        .iter()
        .filter(|i| i.is_prime())
        .cloned()
        .collect();
    let maximals: Vec<Ideal> = all_ideals
        .iter()
        .filter(|i| {
            i.is_proper()
                && !all_ideals.iter().any(|j| {
                    j.is_proper() && i.members != j.members && i.members.is_subset(&j.members)
                })
        })
        .cloned()
        .collect();
    let mut jac = ElemSet::full(n);
    for m in &maximals {
        jac = jac.intersect(&m.members);
    }
    Spectrum {
        all_ideals,
        primes,
        maximals,
        jacobson: Ideal {
            ring: ring.clone(),
            members: jac,
        },
    }
}

/// A multiplicatively closed subset: contains 1, omits 0, closed under
/// products.
#[derive(Clone)]
pub struct MultClosedSet {
    pub ring: Arc<FiniteRing>,
    pub members: ElemSet,
}

impl fmt::Debug for MultClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{:?} in {}", self.members, self.ring.label())
    }
}

impl PartialEq for MultClosedSet {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_structure(&other.ring) && self.members == other.members
    }
}
impl Eq for MultClosedSet {}

impl MultClosedSet {
    /// Wraps a member set, validating the axioms.
    pub fn new(ring: Arc<FiniteRing>, members: ElemSet) -> Result<Self> {
        let s = MultClosedSet { ring, members };
        s.validate()?;
        Ok(s)
    }

    /// The multiplicative closure of `seed ∪ {1}`; errors if the closure
    /// reaches zero.
    pub fn closure<I: IntoIterator<Item = usize>>(ring: &Arc<FiniteRing>, seed: I) -> Result<Self> {
        let n = ring.size();
        let mut members = ElemSet::singleton(n, ring.one());
        let mut queue: Vec<usize> = Vec::new();
        for g in seed {
            if !members.contains(g) {
                members.insert(g);
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            for y in members.to_vec() {
                let p = ring.mul(x, y);
                if !members.contains(p) {
                    members.insert(p);
                    queue.push(p);
                }
            }
        }
        if members.contains(0) {
            return Err(EngineError::NotMultClosed);
        }
        Ok(MultClosedSet {
            ring: ring.clone(),
            members,
        })
    }

    /// The complement of a prime ideal.
    pub fn complement_of_prime(p: &Ideal) -> Result<Self> {
        if !p.is_prime() {
            return Err(EngineError::InvalidConstruction(
                "complement_of_prime: ideal is not prime".into(),
            ));
        }
        MultClosedSet::new(p.ring.clone(), p.members.complement())
    }

    pub fn validate(&self) -> Result<()> {
        if self.members.contains(0)
            || !self.members.contains(self.ring.one())
            || self.members.iter().any(|a| {
                self.members
                    .iter()
                    .any(|b| !self.members.contains(self.ring.mul(a, b)))
            })
        {
            return Err(EngineError::NotMultClosed);
        }
        Ok(())
    }

    /// {1} as a multiplicatively closed subset.
    pub fn trivial(ring: &Arc<FiniteRing>) -> Self {
        MultClosedSet {
            ring: ring.clone(),
            members: ElemSet::singleton(ring.size(), ring.one()),
        }
    }
}

/// A ring homomorphism given by its graph on carriers.
#[derive(Clone, Debug)]
pub struct RingHom {
    pub source: Arc<FiniteRing>,
    pub target: Arc<FiniteRing>,
    pub map: Vec<usize>,
}

impl RingHom {
    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
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
        if self.map.len() != self.source.size() {
            return viol("hom graph total", &[]);
        }
        if self.map[0] != 0 {
            return viol("hom preserves zero", &[]);
        }
        if self.map[self.source.one()] != self.target.one() {
            return viol("hom preserves one", &[]);
        }
        for a in self.source.elements() {
            for b in self.source.elements() {
                if self.map[self.source.add(a, b)] != self.target.add(self.map[a], self.map[b]) {
                    return viol("hom preserves addition", &[a, b]);
                }
                if self.map[self.source.mul(a, b)] != self.target.mul(self.map[a], self.map[b]) {
                    return viol("hom preserves multiplication", &[a, b]);
                }
            }
        }
        Ok(())
    }

    pub fn kernel(&self) -> ElemSet {
        ElemSet::from_elems(
            self.source.size(),
            self.source.elements().filter(|&e| self.map[e] == 0),
        )
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &v in &self.map {
            hit[v] = true;
        }
        self.map.len() == self.target.size() && hit.iter().all(|&h| h)
    }
}

/// The ideal I(+)0 of an idealization ring.
pub fn idealization_ideal(ring: &Arc<FiniteRing>, ideal: &Ideal) -> Result<Ideal> {
    let RingProvenance::Idealization { base, .. } = ring.provenance() else {
        return Err(EngineError::TypeMismatch(
            "ring is not an idealization".into(),
        ));
    };
    if !base.same_structure(&ideal.ring) {
        return Err(EngineError::TypeMismatch(
            "ideal is not over the base ring".into(),
        ));
    }
    Ideal::new(
        ring.clone(),
        ElemSet::from_elems(ring.size(), ideal.members.iter().map(|a| ring.pair(a, 0))),
    )
}

/// The multiplicatively closed subset S(+)N of an idealization ring.
pub fn idealization_mcs(
    ring: &Arc<FiniteRing>,
    s: &MultClosedSet,
    n: &Submodule,
) -> Result<MultClosedSet> {
    let RingProvenance::Idealization { base, module } = ring.provenance() else {
        return Err(EngineError::TypeMismatch(
            "ring is not an idealization".into(),
        ));
    };
    if !base.same_structure(&s.ring) || !module.same_structure(n.module()) {
        return Err(EngineError::TypeMismatch(
            "S(+)N parts do not match the idealization".into(),
        ));
    }
    let mut members = ElemSet::empty(ring.size());
    for a in s.members.iter() {
        for m in n.members().iter() {
            members.insert(ring.pair(a, m));
        }
    }
    MultClosedSet::new(ring.clone(), members)
}
