//! Script execution: binds declarations to engine values and runs the
//! commands, producing per-command text and structured output.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use finalg::decide::{self, DeciderCall, SecondaryForm};
use finalg::laws::{law_check, law_suite, LawId, LawMode, LawReport, LawStatus, Universe};
use finalg::module::ModuleProvenance;
use finalg::report::{
    ActionOutcome, CertBundle, Counterexample, DecisionReport, FailureDatum, PairBranch,
};
use finalg::ring::RingProvenance;
use finalg::{
    spectrum, ElemSet, EngineError, FiniteModule, FiniteRing, Ideal, MultClosedSet, ProductMode,
    Submodule,
};

use crate::script::{
    Command, EnumerateWhat, IdealExpr, Lit, Loc, ModuleExpr, Prop, RingExpr, Script, SetExpr,
    Statement, StatementKind, SubExpr,
};

#[derive(Clone, Copy, Debug)]
pub struct ExecOptions {
    /// Maximum carrier size accepted for declared rings and modules.
    pub cap: usize,
    /// Re-validate every decision certificate through the engine.
    pub recheck: bool,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions {
            cap: finalg::DEFAULT_CARRIER_CAP,
            recheck: false,
        }
    }
}

/// Execution failure, attributed to the statement that raised it.
#[derive(Debug, thiserror::Error)]
#[error("error at {loc}: {message}")]
pub struct ExecError {
    pub loc: Loc,
    pub message: String,
}

enum Binding {
    Ring(Arc<FiniteRing>),
    Set(MultClosedSet),
    Module(Arc<FiniteModule>),
    Sub(Submodule),
}

/// One executed command: its statement text, a text block, a structured
/// record, and whether it was a verification that failed.
#[derive(Debug)]
pub struct CommandRecord {
    pub statement: String,
    pub text: String,
    pub json: Value,
    pub verify_failed: bool,
}

/// Everything a run produces, ready for rendering.
#[derive(Debug)]
pub struct Execution {
    pub declaration_text: Vec<String>,
    pub declarations: Vec<Value>,
    pub commands: Vec<CommandRecord>,
}

impl Execution {
    pub fn any_verify_failed(&self) -> bool {
        self.commands.iter().any(|c| c.verify_failed)
    }
}

pub fn execute(script: &Script, options: &ExecOptions) -> Result<Execution, ExecError> {
    let mut ctx = Ctx {
        bindings: HashMap::new(),
        options: *options,
    };
    let mut out = Execution {
        declaration_text: Vec::new(),
        declarations: Vec::new(),
        commands: Vec::new(),
    };
    for stmt in &script.statements {
        ctx.run_statement(stmt, &mut out)?;
    }
    Ok(out)
}

struct Ctx {
    bindings: HashMap<String, Binding>,
    options: ExecOptions,
}

fn fail<T>(loc: Loc, message: impl Into<String>) -> Result<T, ExecError> {
    Err(ExecError {
        loc,
        message: message.into(),
    })
}

fn engine<T>(loc: Loc, r: Result<T, EngineError>) -> Result<T, ExecError> {
    r.map_err(|e| ExecError {
        loc,
        message: e.to_string(),
    })
}

impl Ctx {
    fn ring(&self, name: &str) -> &Arc<FiniteRing> {
        match &self.bindings[name] {
            Binding::Ring(r) => r,
            _ => unreachable!("parser checked the kind"),
        }
    }

    fn set(&self, name: &str) -> &MultClosedSet {
        match &self.bindings[name] {
            Binding::Set(s) => s,
            _ => unreachable!("parser checked the kind"),
        }
    }

    fn module(&self, name: &str) -> &Arc<FiniteModule> {
        match &self.bindings[name] {
            Binding::Module(m) => m,
            _ => unreachable!("parser checked the kind"),
        }
    }

    fn check_cap(&self, loc: Loc, size: usize) -> Result<(), ExecError> {
        if size > self.options.cap {
            return fail(
                loc,
                EngineError::CapExceeded {
                    size,
                    cap: self.options.cap,
                }
                .to_string(),
            );
        }
        Ok(())
    }

    fn run_statement(&mut self, stmt: &Statement, out: &mut Execution) -> Result<(), ExecError> {
        let loc = stmt.loc;
        match &stmt.kind {
            StatementKind::Ring { name, expr } => {
                let ring = self.eval_ring(loc, expr)?;
                out.declaration_text.push(stmt.to_string());
                out.declarations.push(json!({
                    "kind": "ring",
                    "name": name,
                    "statement": stmt.to_string(),
                    "size": ring.size(),
                    "label": ring.label(),
                }));
                self.bindings.insert(name.clone(), Binding::Ring(ring));
            }
            StatementKind::Set { name, ring, expr } => {
                let set = self.eval_set(loc, ring, expr)?;
                out.declaration_text.push(stmt.to_string());
                out.declarations.push(json!({
                    "kind": "set",
                    "name": name,
                    "statement": stmt.to_string(),
                    "members": names_of(&set.ring, &set.members),
                }));
                self.bindings.insert(name.clone(), Binding::Set(set));
            }
            StatementKind::Module { name, ring, expr } => {
                let module = self.eval_module(loc, ring, expr)?;
                out.declaration_text.push(stmt.to_string());
                out.declarations.push(json!({
                    "kind": "module",
                    "name": name,
                    "statement": stmt.to_string(),
                    "size": module.size(),
                }));
                self.bindings.insert(name.clone(), Binding::Module(module));
            }
            StatementKind::Submodule { name, module, expr } => {
                let m = self.module(module).clone();
                let sub = match expr {
                    SubExpr::Zero => Submodule::zero(&m),
                    SubExpr::Full => Submodule::whole(&m),
                    SubExpr::Span(lits) => {
                        let gens = lits
                            .iter()
                            .map(|l| {
                                resolve_module_elem(&m, l)
                                    .map_err(|e| ExecError { loc, message: e })
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        Submodule::span(&m, gens)
                    }
                };
                out.declaration_text.push(stmt.to_string());
                out.declarations.push(json!({
                    "kind": "submodule",
                    "name": name,
                    "statement": stmt.to_string(),
                    "members": names_of_module(&m, sub.members()),
                }));
                self.bindings.insert(name.clone(), Binding::Sub(sub));
            }
            StatementKind::Command(cmd) => {
                let record = self.run_command(loc, stmt, cmd)?;
                out.commands.push(record);
            }
        }
        Ok(())
    }

    fn eval_ring(&self, loc: Loc, expr: &RingExpr) -> Result<Arc<FiniteRing>, ExecError> {
        match expr {
            RingExpr::Cyclic(n) => {
                self.check_cap(loc, *n as usize)?;
                engine(loc, FiniteRing::cyclic(*n as usize))
            }
            RingExpr::Product(a, b) => {
                let (a, b) = (self.ring(a), self.ring(b));
                self.check_cap(loc, a.size() * b.size())?;
                Ok(FiniteRing::product(a, b))
            }
            RingExpr::Quotient(a, ideal) => {
                let base = self.ring(a).clone();
                let ideal = self.eval_ideal(loc, &base, ideal)?;
                let (ring, _) = engine(loc, FiniteRing::quotient(&base, &ideal))?;
                Ok(ring)
            }
            RingExpr::Idealization(a, m) => {
                let (base, module) = (self.ring(a).clone(), self.module(m).clone());
                self.check_cap(loc, base.size() * module.size())?;
                engine(loc, FiniteRing::idealization(&base, &module))
            }
        }
    }

    fn eval_ideal(
        &self,
        loc: Loc,
        ring: &Arc<FiniteRing>,
        expr: &IdealExpr,
    ) -> Result<Ideal, ExecError> {
        match expr {
            IdealExpr::Span(lits) => {
                let gens = self.resolve_ring_elems(loc, ring, lits)?;
                Ok(Ideal::span(ring, gens))
            }
            IdealExpr::Literal(lits) => {
                let elems = self.resolve_ring_elems(loc, ring, lits)?;
                engine(
                    loc,
                    Ideal::new(ring.clone(), ElemSet::from_elems(ring.size(), elems)),
                )
            }
        }
    }

    fn eval_set(&self, loc: Loc, ring: &str, expr: &SetExpr) -> Result<MultClosedSet, ExecError> {
        let ring = self.ring(ring).clone();
        match expr {
            SetExpr::Literal(lits) => {
                let elems = self.resolve_ring_elems(loc, &ring, lits)?;
                engine(
                    loc,
                    MultClosedSet::new(ring.clone(), ElemSet::from_elems(ring.size(), elems)),
                )
            }
            SetExpr::Closure(lits) => {
                let elems = self.resolve_ring_elems(loc, &ring, lits)?;
                engine(loc, MultClosedSet::closure(&ring, elems))
            }
            SetExpr::ComplementOfPrime(ideal) => {
                let ideal = self.eval_ideal(loc, &ring, ideal)?;
                engine(loc, MultClosedSet::complement_of_prime(&ideal))
            }
            SetExpr::Saturation(base) => Ok(self.set(base).saturation()),
        }
    }

    fn eval_module(
        &self,
        loc: Loc,
        ring: &str,
        expr: &ModuleExpr,
    ) -> Result<Arc<FiniteModule>, ExecError> {
        let ring = self.ring(ring).clone();
        match expr {
            ModuleExpr::Regular => Ok(FiniteModule::regular(&ring)),
            ModuleExpr::Product(a, b) => {
                let (a, b) = (self.module(a).clone(), self.module(b).clone());
                self.check_cap(loc, a.size() * b.size())?;
                if a.ring().same_structure(&ring) && b.ring().same_structure(&ring) {
                    engine(loc, FiniteModule::product(&a, &b, ProductMode::SameRing))
                } else {
                    let product =
                        engine(loc, FiniteModule::product(&a, &b, ProductMode::ProductRing))?;
                    if !product.ring().same_structure(&ring) {
                        return fail(loc, "product module does not live over the declared ring");
                    }
                    Ok(product)
                }
            }
            ModuleExpr::Tables { add, act } => {
                let n = add.len();
                self.check_cap(loc, n.max(1))?;
                if add.iter().any(|row| row.len() != n) {
                    return fail(loc, "addition table must be square");
                }
                if act.len() != ring.size() || act.iter().any(|row| row.len() != n) {
                    return fail(
                        loc,
                        format!("action table needs {} rows of width {n}", ring.size()),
                    );
                }
                let flat_add = add.iter().flatten().map(|&x| x as usize).collect();
                let flat_act = act.iter().flatten().map(|&x| x as usize).collect();
                engine(
                    loc,
                    FiniteModule::from_tables("tables", &ring, flat_add, flat_act),
                )
            }
        }
    }

    fn resolve_ring_elems(
        &self,
        loc: Loc,
        ring: &Arc<FiniteRing>,
        lits: &[Lit],
    ) -> Result<Vec<usize>, ExecError> {
        lits.iter()
            .map(|l| resolve_ring_elem(ring, l).map_err(|e| ExecError { loc, message: e }))
            .collect()
    }

    fn run_command(
        &self,
        loc: Loc,
        stmt: &Statement,
        cmd: &Command,
    ) -> Result<CommandRecord, ExecError> {
        match cmd {
            Command::Decide { prop, target, set } => self.run_decide(loc, stmt, *prop, target, set),
            Command::Enumerate { what, target } => self.run_enumerate(loc, stmt, *what, target),
            Command::VerifyAll { ring, module, set } => {
                self.run_verify(loc, stmt, None, ring, module, set)
            }
            Command::VerifyLaw {
                law,
                ring,
                module,
                set,
            } => self.run_verify(loc, stmt, Some(law), ring, module, set),
        }
    }

    /// The decide target as a submodule (a module name means its whole
    /// submodule).
    fn target_submodule(&self, name: &str) -> Submodule {
        match &self.bindings[name] {
            Binding::Sub(s) => s.clone(),
            Binding::Module(m) => Submodule::whole(m),
            _ => unreachable!("parser checked the kind"),
        }
    }

    fn run_decide(
        &self,
        loc: Loc,
        stmt: &Statement,
        prop: Prop,
        target: &str,
        set: &Option<String>,
    ) -> Result<CommandRecord, ExecError> {
        let set_binding = set.as_ref().map(|s| self.set(s).clone());
        let sub;
        let module;
        let (report, call): (DecisionReport, DeciderCall) = match prop {
            Prop::Secondary => {
                sub = self.target_submodule(target);
                (decide::is_secondary(&sub), DeciderCall::Secondary(&sub))
            }
            Prop::Second => {
                sub = self.target_submodule(target);
                (decide::is_second(&sub), DeciderCall::Second(&sub))
            }
            Prop::SSecond => {
                sub = self.target_submodule(target);
                let s = set_binding.as_ref().unwrap();
                (
                    engine(loc, decide::is_s_second(&sub, s))?,
                    DeciderCall::SSecond(&sub, s),
                )
            }
            Prop::SSecondary(form) => {
                sub = self.target_submodule(target);
                let s = set_binding.as_ref().unwrap();
                let form = form.unwrap_or(SecondaryForm::A);
                (
                    engine(loc, decide::is_s_secondary(&sub, s, form))?,
                    DeciderCall::SSecondary(&sub, s, form),
                )
            }
            Prop::SPrime => {
                sub = self.target_submodule(target);
                let s = set_binding.as_ref().unwrap();
                (
                    decide::is_s_prime_submodule(&sub, s),
                    DeciderCall::SPrime(&sub, s),
                )
            }
            Prop::SPrimary => {
                sub = self.target_submodule(target);
                let s = set_binding.as_ref().unwrap();
                (
                    decide::is_s_primary(&sub, s),
                    DeciderCall::SPrimary(&sub, s),
                )
            }
            Prop::QuasiCotorsionFree => {
                module = self.module(target).clone();
                let s = set_binding.as_ref().unwrap();
                (
                    engine(loc, decide::is_quasi_s_cotorsion_free(&module, s))?,
                    DeciderCall::QuasiSCotorsionFree(&module, s),
                )
            }
            Prop::Multiplication => {
                module = self.module(target).clone();
                (
                    engine(loc, module.is_multiplication())?,
                    DeciderCall::Multiplication(&module),
                )
            }
            Prop::Comultiplication => {
                module = self.module(target).clone();
                (
                    engine(loc, module.is_comultiplication())?,
                    DeciderCall::Comultiplication(&module),
                )
            }
        };
        let rechecked = if self.options.recheck {
            decide::recheck(&call, &report).map_err(|e| ExecError {
                loc,
                message: format!("certificate re-check failed: {e}"),
            })?;
            Some(true)
        } else {
            None
        };
        let ctx_module = match &call {
            DeciderCall::QuasiSCotorsionFree(m, _)
            | DeciderCall::Multiplication(m)
            | DeciderCall::Comultiplication(m) => (*m).clone(),
            _ => self.decide_context_module(target),
        };
        let json = decision_json(stmt, &report, &ctx_module, rechecked);
        let text = decision_text(stmt, &report, &ctx_module, rechecked);
        Ok(CommandRecord {
            statement: stmt.to_string(),
            text,
            json,
            verify_failed: false,
        })
    }

    fn decide_context_module(&self, target: &str) -> Arc<FiniteModule> {
        match &self.bindings[target] {
            Binding::Sub(s) => s.module().clone(),
            Binding::Module(m) => m.clone(),
            _ => unreachable!("parser checked the kind"),
        }
    }

    fn run_enumerate(
        &self,
        loc: Loc,
        stmt: &Statement,
        what: EnumerateWhat,
        target: &str,
    ) -> Result<CommandRecord, ExecError> {
        let items: Vec<Vec<String>> = match what {
            EnumerateWhat::Ideals => {
                let ring = self.ring(target);
                spectrum(ring)
                    .all_ideals
                    .iter()
                    .map(|i| names_of(ring, &i.members))
                    .collect()
            }
            EnumerateWhat::Submodules => {
                let m = self.module(target);
                engine(loc, m.submodules_capped(self.options.cap))?
                    .iter()
                    .map(|s| names_of_module(m, s.members()))
                    .collect()
            }
            EnumerateWhat::Ci => {
                let m = self.module(target);
                engine(loc, m.completely_irreducibles_capped(self.options.cap))?
                    .iter()
                    .map(|s| names_of_module(m, s.members()))
                    .collect()
            }
        };
        let json = json!({
            "command": "enumerate",
            "statement": stmt.to_string(),
            "count": items.len(),
            "items": items,
        });
        let mut text = format!("{stmt} -> {} entries\n", items.len());
        for item in &items {
            text.push_str(&format!("  {{{}}}\n", item.join(",")));
        }
        Ok(CommandRecord {
            statement: stmt.to_string(),
            text,
            json,
            verify_failed: false,
        })
    }

    fn run_verify(
        &self,
        loc: Loc,
        stmt: &Statement,
        law: Option<&str>,
        ring: &str,
        module: &str,
        set: &str,
    ) -> Result<CommandRecord, ExecError> {
        let label = format!("{ring}/{module}/{set}");
        let universe = engine(
            loc,
            Universe::infer(
                label.clone(),
                self.ring(ring).clone(),
                self.set(set).clone(),
                self.module(module).clone(),
            ),
        )?;
        let reports: Vec<LawReport> = match law {
            None => engine(loc, law_suite(&universe))?,
            Some(law) => {
                let law: LawId = engine(loc, law.parse())?;
                vec![engine(loc, law_check(law, &universe))?]
            }
        };
        let failed = reports
            .iter()
            .any(|r| r.mode == LawMode::Proved && r.status == LawStatus::Fail);
        let (pass, fail_n, inapplicable) =
            reports.iter().fold((0, 0, 0), |acc, r| match r.status {
                LawStatus::Pass => (acc.0 + 1, acc.1, acc.2),
                LawStatus::Fail => (acc.0, acc.1 + 1, acc.2),
                LawStatus::Inapplicable => (acc.0, acc.1, acc.2 + 1),
            });
        let json = json!({
            "command": "verify",
            "statement": stmt.to_string(),
            "universe": label,
            "laws": reports.iter().map(law_report_json).collect::<Vec<_>>(),
            "passed": !failed,
        });
        let mut text = format!(
            "{stmt} -> {} ({pass} pass, {fail_n} fail, {inapplicable} inapplicable)\n",
            if failed { "FAIL" } else { "pass" }
        );
        for r in &reports {
            text.push_str(&format!("  {}\n", law_report_text(r)));
        }
        Ok(CommandRecord {
            statement: stmt.to_string(),
            text,
            json,
            verify_failed: failed,
        })
    }
}

/// Resolves an element literal against a ring's construction shape.
pub fn resolve_ring_elem(ring: &Arc<FiniteRing>, lit: &Lit) -> Result<usize, String> {
    match (ring.provenance(), lit) {
        (RingProvenance::Cyclic { n }, Lit::Int(k)) => Ok((*k as usize) % n),
        (RingProvenance::Product { left, right }, Lit::Pair(a, b)) => {
            let l = resolve_ring_elem(left, a)?;
            let r = resolve_ring_elem(right, b)?;
            Ok(ring.pair(l, r))
        }
        (RingProvenance::Idealization { base, module }, Lit::Bar(a, m)) => {
            let l = resolve_ring_elem(base, a)?;
            let r = resolve_module_elem(module, m)?;
            Ok(ring.pair(l, r))
        }
        (
            RingProvenance::Quotient {
                base, projection, ..
            },
            lit,
        ) => Ok(projection[resolve_ring_elem(base, lit)?]),
        (RingProvenance::Tables, Lit::Int(k)) if (*k as usize) < ring.size() => Ok(*k as usize),
        _ => Err(format!(
            "literal {lit} does not match the element shape of {}",
            ring.label()
        )),
    }
}

/// Resolves an element literal against a module's construction shape.
pub fn resolve_module_elem(module: &Arc<FiniteModule>, lit: &Lit) -> Result<usize, String> {
    match (module.provenance(), lit) {
        (ModuleProvenance::Regular, lit) => resolve_ring_elem(module.ring(), lit),
        (
            ModuleProvenance::ProductSameRing { left, right }
            | ModuleProvenance::ProductRing { left, right },
            Lit::Pair(a, b),
        ) => {
            let l = resolve_module_elem(left, a)?;
            let r = resolve_module_elem(right, b)?;
            Ok(module.pair(l, r))
        }
        (ModuleProvenance::Tables, Lit::Int(k)) if (*k as usize) < module.size() => Ok(*k as usize),
        _ => Err(format!(
            "literal {lit} does not match the element shape of {}",
            module.label()
        )),
    }
}

fn names_of(ring: &Arc<FiniteRing>, set: &ElemSet) -> Vec<String> {
    set.iter().map(|e| ring.name(e).to_string()).collect()
}

fn names_of_module(module: &Arc<FiniteModule>, set: &ElemSet) -> Vec<String> {
    set.iter().map(|e| module.name(e).to_string()).collect()
}

fn name_list(module: &Arc<FiniteModule>, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&e| module.name(e).to_string()).collect()
}

fn ring_name_list(module: &Arc<FiniteModule>, elems: &[usize]) -> Vec<String> {
    elems
        .iter()
        .map(|&e| module.ring().name(e).to_string())
        .collect()
}

fn datum_json(module: &Arc<FiniteModule>, datum: &FailureDatum) -> Value {
    let ring = module.ring();
    match datum {
        FailureDatum::Action { r } => json!({"action": {"r": ring.name(*r)}}),
        FailureDatum::Pair { a, m } => {
            json!({"pair": {"a": ring.name(*a), "m": module.name(*m)}})
        }
        FailureDatum::Containment { r, k } => {
            json!({"containment": {"r": ring.name(*r), "k": name_list(module, k)}})
        }
        FailureDatum::IdealContainment { j, k } => json!({"ideal_containment": {
            "j": ring_name_list(module, j),
            "k": name_list(module, k),
        }}),
        FailureDatum::Submodule { members } => {
            json!({"submodule": {"members": name_list(module, members)}})
        }
    }
}

fn datum_text(module: &Arc<FiniteModule>, datum: &FailureDatum) -> String {
    let ring = module.ring();
    match datum {
        FailureDatum::Action { r } => format!("r={}", ring.name(*r)),
        FailureDatum::Pair { a, m } => {
            format!("(a,m)=({},{})", ring.name(*a), module.name(*m))
        }
        FailureDatum::Containment { r, k } => {
            format!(
                "r={} with K={{{}}}",
                ring.name(*r),
                name_list(module, k).join(",")
            )
        }
        FailureDatum::IdealContainment { j, k } => format!(
            "J={{{}}} with K={{{}}}",
            ring_name_list(module, j).join(","),
            name_list(module, k).join(",")
        ),
        FailureDatum::Submodule { members } => {
            format!("N={{{}}}", name_list(module, members).join(","))
        }
    }
}

fn certs_json(module: &Arc<FiniteModule>, certs: &CertBundle) -> Value {
    let ring = module.ring();
    match certs {
        CertBundle::PerElement(list) => json!({"per_element": list
            .iter()
            .map(|c| {
                let outcome = match c.outcome {
                    ActionOutcome::Surjective => json!("surjective"),
                    ActionOutcome::Zero => json!("zero"),
                    ActionOutcome::Nilpotent { t } => json!({"nilpotent": {"t": t}}),
                    ActionOutcome::NilpotentInRing { t } => {
                        json!({"ring_nilpotent": {"t": t}})
                    }
                };
                json!({"r": ring.name(c.r), "outcome": outcome})
            })
            .collect::<Vec<_>>()}),
        CertBundle::PerPair(list) => json!({"per_pair": list
            .iter()
            .map(|c| json!({
                "a": ring.name(c.a),
                "m": module.name(c.m),
                "branch": match c.branch {
                    PairBranch::Scalar => "scalar",
                    PairBranch::Element => "element",
                },
            }))
            .collect::<Vec<_>>()}),
        CertBundle::PerSubmodule(list) => json!({"per_submodule": list
            .iter()
            .map(|c| json!({
                "submodule": name_list(module, &c.submodule),
                "ideal": ring_name_list(module, &c.ideal),
            }))
            .collect::<Vec<_>>()}),
        CertBundle::Scan { instances } => json!({"scan": {"instances": instances}}),
    }
}

fn certs_text(module: &Arc<FiniteModule>, certs: &CertBundle) -> Vec<String> {
    let ring = module.ring();
    match certs {
        CertBundle::PerElement(list) => list
            .iter()
            .map(|c| {
                let outcome = match c.outcome {
                    ActionOutcome::Surjective => "acts surjectively".to_string(),
                    ActionOutcome::Zero => "acts as zero".to_string(),
                    ActionOutcome::Nilpotent { t } => format!("kills N at exponent {t}"),
                    ActionOutcome::NilpotentInRing { t } => {
                        format!("vanishes in the ring at exponent {t}")
                    }
                };
                format!("r={}: {outcome}", ring.name(c.r))
            })
            .collect(),
        CertBundle::PerPair(list) => list
            .iter()
            .map(|c| {
                format!(
                    "(a,m)=({},{}): {} branch",
                    ring.name(c.a),
                    module.name(c.m),
                    match c.branch {
                        PairBranch::Scalar => "scalar",
                        PairBranch::Element => "element",
                    }
                )
            })
            .collect(),
        CertBundle::PerSubmodule(list) => list
            .iter()
            .map(|c| {
                format!(
                    "N={{{}}} via I={{{}}}",
                    name_list(module, &c.submodule).join(","),
                    ring_name_list(module, &c.ideal).join(",")
                )
            })
            .collect(),
        CertBundle::Scan { instances } => {
            vec![format!(
                "exhaustive scan at the fixed witness over {instances} instances"
            )]
        }
    }
}

fn decision_json(
    stmt: &Statement,
    report: &DecisionReport,
    module: &Arc<FiniteModule>,
    rechecked: Option<bool>,
) -> Value {
    let ring = module.ring();
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "s": w.s.map(|s| ring.name(s).to_string()),
            "certificates": certs_json(module, &w.certs),
        })
    });
    let counterexample = report.counterexample.as_ref().map(|c| match c {
        Counterexample::Plain(d) => json!({"plain": datum_json(module, d)}),
        Counterexample::PerS(fails) => json!({"per_s": fails
            .iter()
            .map(|f| json!({"s": ring.name(f.s), "datum": datum_json(module, &f.datum)}))
            .collect::<Vec<_>>()}),
    });
    let disqualified = report.disqualified.map(|d| {
        json!({
            "reason": d.reason.as_str(),
            "element": d.element.map(|e| ring.name(e).to_string()),
        })
    });
    let mut doc = json!({
        "command": "decide",
        "statement": stmt.to_string(),
        "property": report.property,
        "verdict": report.verdict,
        "witness": witness,
        "counterexample": counterexample,
        "disqualified": disqualified,
        "checked": report.checked,
    });
    if let Some(ok) = rechecked {
        doc["recheck"] = json!(if ok { "ok" } else { "failed" });
    }
    doc
}

fn decision_text(
    stmt: &Statement,
    report: &DecisionReport,
    module: &Arc<FiniteModule>,
    rechecked: Option<bool>,
) -> String {
    let ring = module.ring();
    let mut text = format!("{stmt} -> {}", report.verdict);
    if let Some(w) = &report.witness {
        if let Some(s) = w.s {
            text.push_str(&format!(
                " (witness s={}, checked {})",
                ring.name(s),
                report.checked
            ));
        } else {
            text.push_str(&format!(" (checked {})", report.checked));
        }
    }
    if let Some(d) = report.disqualified {
        text.push_str(&format!(" [not applicable: {}", d.reason.as_str()));
        if let Some(e) = d.element {
            text.push_str(&format!(" at {}", ring.name(e)));
        }
        text.push(']');
    }
    if rechecked == Some(true) {
        text.push_str(" [recheck ok]");
    }
    text.push('\n');
    if let Some(w) = &report.witness {
        for line in certs_text(module, &w.certs) {
            text.push_str(&format!("  cert {line}\n"));
        }
    }
    if let Some(c) = &report.counterexample {
        match c {
            Counterexample::Plain(d) => {
                text.push_str(&format!("  counterexample {}\n", datum_text(module, d)));
            }
            Counterexample::PerS(fails) => {
                for f in fails {
                    text.push_str(&format!(
                        "  counterexample s={}: {}\n",
                        ring.name(f.s),
                        datum_text(module, &f.datum)
                    ));
                }
            }
        }
    }
    text
}

pub fn law_report_json(r: &LawReport) -> Value {
    json!({
        "law": r.law.to_string(),
        "universe": r.universe,
        "status": match r.status {
            LawStatus::Pass => "pass",
            LawStatus::Fail => "fail",
            LawStatus::Inapplicable => "inapplicable",
        },
        "mode": match r.mode {
            LawMode::Proved => "proved",
            LawMode::Exploratory => "exploratory",
        },
        "checked": r.checked,
        "skipped": r.skipped,
        "counterexample": r.counterexample.as_ref().map(|c| json!({
            "description": c.description,
            "sets": c.sets.iter().map(|(k, v)| json!({"name": k, "members": v})).collect::<Vec<_>>(),
        })),
        "detail": r.detail,
    })
}

pub fn law_report_text(r: &LawReport) -> String {
    let status = match r.status {
        LawStatus::Pass => "pass",
        LawStatus::Fail => "FAIL",
        LawStatus::Inapplicable => "inapplicable",
    };
    let mut line = format!(
        "{} {status} checked={} skipped={}",
        r.law, r.checked, r.skipped
    );
    if r.mode == LawMode::Exploratory {
        line.push_str(" (exploratory)");
    }
    if let Some(c) = &r.counterexample {
        line.push_str(&format!(" counterexample: {}", c.description));
    }
    if let Some(d) = &r.detail {
        line.push_str(&format!(" detail: {d}"));
    }
    line
}
