//! Decision reports: verdicts with witnesses, certificates, and
//! counterexamples.
//!
//! Every decision procedure in this crate returns a [`DecisionReport`].
//! A `true` verdict always carries a witness whose certificates can be
//! re-validated against the inputs; a `false` verdict carries either a
//! counterexample (one defeating datum per candidate witness) or a
//! disqualification note when the property's side conditions do not apply.
//! The two kinds of falsity are kept distinct so law batteries can filter
//! on applicability.

/// Outcome of a decision procedure.
#[derive(Clone, Debug, PartialEq)]
pub struct DecisionReport {
    /// Property identifier, e.g. `"s_secondary:a"`.
    pub property: String,
    pub verdict: bool,
    /// Present exactly when `verdict` is true.
    pub witness: Option<Witness>,
    /// Present exactly when `verdict` is false and the property applied.
    pub counterexample: Option<Counterexample>,
    /// Present exactly when the property's side conditions failed.
    pub disqualified: Option<Disqualification>,
    /// Number of instances scanned to reach the verdict.
    pub checked: u64,
}

impl DecisionReport {
    pub fn holds(property: &str, witness: Witness, checked: u64) -> Self {
        DecisionReport {
            property: property.to_string(),
            verdict: true,
            witness: Some(witness),
            counterexample: None,
            disqualified: None,
            checked,
        }
    }

    pub fn fails(property: &str, cex: Counterexample, checked: u64) -> Self {
        DecisionReport {
            property: property.to_string(),
            verdict: false,
            witness: None,
            counterexample: Some(cex),
            disqualified: None,
            checked,
        }
    }

    pub fn not_applicable(
        property: &str,
        reason: DisqualifyReason,
        element: Option<usize>,
    ) -> Self {
        DecisionReport {
            property: property.to_string(),
            verdict: false,
            witness: None,
            counterexample: None,
            disqualified: Some(Disqualification { reason, element }),
            checked: 0,
        }
    }

    /// True verdict, or false for a reason other than disqualification.
    pub fn applicable(&self) -> bool {
        self.disqualified.is_none()
    }
}

/// Witness data for a `true` verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// The fixed element of S serving the existential quantifier, when the
    /// property has one (least such element in carrier order).
    pub s: Option<usize>,
    pub certs: CertBundle,
}

/// Certificates backing a witness.
#[derive(Clone, Debug, PartialEq)]
pub enum CertBundle {
    /// One certificate per ring element (secondary-style action scans).
    PerElement(Vec<ActionCert>),
    /// One certificate per pair satisfying the premise (prime/primary scans).
    PerPair(Vec<PairCert>),
    /// One certificate per submodule (module-wide properties).
    PerSubmodule(Vec<SubmoduleCert>),
    /// The property was verified by an exhaustive scan whose instances are
    /// not materialized; re-checking replays the scan at the fixed witness.
    Scan { instances: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActionCert {
    pub r: usize,
    pub outcome: ActionOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ActionOutcome {
    /// The (scaled) element acts surjectively: srN = sN, or rN = N.
    Surjective,
    /// The (scaled) element acts as zero on the submodule.
    Zero,
    /// The (scaled) element kills the submodule at exponent `t` (least).
    Nilpotent { t: u32 },
    /// The (scaled) element is nilpotent in the ring itself at exponent `t`.
    NilpotentInRing { t: u32 },
}

/// Which disjunct of a prime/primary condition held for a premise pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairCert {
    pub a: usize,
    pub m: usize,
    pub branch: PairBranch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairBranch {
    /// `sa` landed in the colon/annihilator side.
    Scalar,
    /// `sm` landed in the submodule side.
    Element,
}

/// For multiplication/comultiplication checks: the ideal realizing each
/// submodule.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmoduleCert {
    pub submodule: Vec<usize>,
    pub ideal: Vec<usize>,
}

/// Why a property did not apply to its inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Disqualification {
    pub reason: DisqualifyReason,
    /// Offending element for failed disjointness requirements.
    pub element: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DisqualifyReason {
    /// √Ann(N) ∩ S ≠ ∅.
    RadicalAnnihilatorMeetsS,
    /// Ann(N) ∩ S ≠ ∅.
    AnnihilatorMeetsS,
    /// (P :_R M) ∩ S ≠ ∅.
    ColonMeetsS,
    /// √(P :_R M) ∩ S ≠ ∅.
    RadicalColonMeetsS,
    /// I ∩ S ≠ ∅.
    IdealMeetsS,
    /// The property requires a non-zero submodule.
    ZeroSubmodule,
    /// The property requires a proper submodule.
    ImproperSubmodule,
    /// The property requires a proper ideal.
    ImproperIdeal,
}

impl DisqualifyReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DisqualifyReason::RadicalAnnihilatorMeetsS => "radical_annihilator_meets_s",
            DisqualifyReason::AnnihilatorMeetsS => "annihilator_meets_s",
            DisqualifyReason::ColonMeetsS => "colon_meets_s",
            DisqualifyReason::RadicalColonMeetsS => "radical_colon_meets_s",
            DisqualifyReason::IdealMeetsS => "ideal_meets_s",
            DisqualifyReason::ZeroSubmodule => "zero_submodule",
            DisqualifyReason::ImproperSubmodule => "improper_submodule",
            DisqualifyReason::ImproperIdeal => "improper_ideal",
        }
    }
}

/// Evidence that a property fails.
#[derive(Clone, Debug, PartialEq)]
pub enum Counterexample {
    /// Property without an existential witness: one failing datum.
    Plain(FailureDatum),
    /// ∃s-property: every candidate s ∈ S is defeated; data listed in
    /// ascending s order (s-exhaustion evidence).
    PerS(Vec<SFailure>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SFailure {
    pub s: usize,
    pub datum: FailureDatum,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FailureDatum {
    /// A ring element defeating an action condition.
    Action { r: usize },
    /// A pair satisfying the premise but neither disjunct.
    Pair { a: usize, m: usize },
    /// rN ⊆ K held but neither disjunct did; `k` lists K's members.
    Containment { r: usize, k: Vec<usize> },
    /// JN ⊆ K held but neither disjunct did.
    IdealContainment { j: Vec<usize>, k: Vec<usize> },
    /// A submodule defeating a module-wide property.
    Submodule { members: Vec<usize> },
}
