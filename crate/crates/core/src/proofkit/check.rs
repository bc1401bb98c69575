use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{Justification, Label, ProofLine, ProofScript};
use crate::formula::{is_tautology, Binding, Formula, MetaVar};
use crate::schema::{AxiomId, LogicId};

/// A logic together with registry items withdrawn from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Logic {
    base: LogicId,
    removed: BTreeSet<AxiomId>,
}

impl Logic {
    pub fn new(base: LogicId) -> Logic {
        Logic {
            base,
            removed: BTreeSet::new(),
        }
    }

    pub fn without(mut self, a: AxiomId) -> Logic {
        self.removed.insert(a);
        self
    }

    pub fn base(&self) -> LogicId {
        self.base
    }

    /// Axiom or primitive rule of this logic, usable without a derivation.
    pub fn is_primitive(&self, a: AxiomId) -> bool {
        let info = a.info();
        let member = info.primitive_l
            || match self.base {
                LogicId::L => false,
                LogicId::KM => info.in_km,
                LogicId::AGM => info.in_agm,
            };
        member && !self.removed.contains(&a)
    }
}

impl From<LogicId> for Logic {
    fn from(base: LogicId) -> Logic {
        Logic::new(base)
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for a in &self.removed {
            write!(f, " without {a}")?;
        }
        Ok(())
    }
}

/// Scripts by id.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    scripts: BTreeMap<String, ProofScript>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    /// Adds `script`, returning any script it replaces.
    pub fn insert(&mut self, script: ProofScript) -> Option<ProofScript> {
        self.scripts.insert(script.id.clone(), script)
    }

    pub fn get(&self, id: &str) -> Option<&ProofScript> {
        self.scripts.get(id)
    }

    pub fn scripts(&self) -> impl Iterator<Item = &ProofScript> {
        self.scripts.values()
    }

    pub fn len(&self) -> usize {
        self.scripts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scripts.is_empty()
    }
}

/// What an accepted script rests on, transitively.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Dependencies {
    /// Primitive axioms and rules.
    pub axioms: BTreeSet<AxiomId>,
    pub scripts: BTreeSet<String>,
    /// Uses an item restricted to Boolean instances, so the script's
    /// metavariables stand for Boolean formulas.
    pub boolean: bool,
}

impl Dependencies {
    fn merge(&mut self, other: &Dependencies) {
        self.axioms.extend(other.axioms.iter().copied());
        self.scripts.extend(other.scripts.iter().cloned());
        self.boolean |= other.boolean;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reason {
    #[error("the script has no lines")]
    Empty,
    #[error("label {label} does not exceed the previous label {previous}")]
    LabelOrder { label: Label, previous: Label },
    #[error("line {reference} is not an earlier line")]
    BadReference { reference: Label },
    #[error("expected {expected}, found {found}")]
    ShapeMismatch { expected: Formula, found: Formula },
    #[error("line {line} should be an implication, found {found}")]
    NotImplication { line: Label, found: Formula },
    #[error("not a tautology: {formula}")]
    NotTautology { formula: Formula },
    #[error("{0}")]
    Tautology(String),
    #[error("{id} is not available in {logic}")]
    NotInLogic { id: AxiomId, logic: String },
    #[error("{0} is a rule of inference, cite it with `rule`")]
    IsRule(AxiomId),
    #[error("{0} is an axiom schema, cite it with `ax`")]
    NotRule(AxiomId),
    #[error("{var} must be bound to a Boolean formula, got {formula}")]
    NonBoolean { var: MetaVar, formula: Formula },
    #[error("`hyp` needs a premise equal to the line, premise is {premise:?}")]
    Hypothesis { premise: Option<Formula> },
    #[error("no script named {0:?}")]
    UnknownScript(String),
    #[error("{0:?} proves a rule, cite it with `rule`")]
    LemmaIsRule(String),
    #[error("circular dependency: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("dependency failed: {0}")]
    Dependency(Box<CheckFailure>),
    #[error("last line {last} differs from the target {target}")]
    TargetMismatch { target: Formula, last: Formula },
    #[error("line {0} is never used")]
    UnusedLine(Label),
    #[error("registry entry {id} is {expected}, the script proves {found}")]
    Registry {
        id: AxiomId,
        expected: Formula,
        found: Formula,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub struct CheckFailure {
    pub script: String,
    pub label: Option<Label>,
    pub reason: Reason,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            Some(l) => write!(f, "{}, line {l}: {}", self.script, self.reason),
            None => write!(f, "{}: {}", self.script, self.reason),
        }
    }
}

/// Checks scripts against one logic, resolving citations through a
/// registry. Results for cited scripts are memoized.
pub struct Checker<'r> {
    registry: &'r Registry,
    logic: Logic,
    memo: RefCell<BTreeMap<String, Result<Dependencies, CheckFailure>>>,
    stack: RefCell<Vec<String>>,
}

impl<'r> Checker<'r> {
    pub fn new(registry: &'r Registry, logic: impl Into<Logic>) -> Checker<'r> {
        Checker {
            registry,
            logic: logic.into(),
            memo: RefCell::new(BTreeMap::new()),
            stack: RefCell::new(Vec::new()),
        }
    }

    pub fn logic(&self) -> &Logic {
        &self.logic
    }

    /// Checks the registered script `id`, memoized.
    pub fn check_registered(&self, id: &str) -> Result<Dependencies, CheckFailure> {
        let fail = |reason| CheckFailure {
            script: id.to_string(),
            label: None,
            reason,
        };
        if let Some(done) = self.memo.borrow().get(id) {
            return done.clone();
        }
        let script = self
            .registry
            .get(id)
            .ok_or_else(|| fail(Reason::UnknownScript(id.to_string())))?;
        let out = self.check_script(script);
        self.memo.borrow_mut().insert(id.to_string(), out.clone());
        out
    }

    /// Checks every line, the target and the registry entry the script
    /// claims to prove.
    pub fn check_script(&self, script: &ProofScript) -> Result<Dependencies, CheckFailure> {
        {
            let mut stack = self.stack.borrow_mut();
            if let Some(pos) = stack.iter().position(|s| *s == script.id) {
                let mut cycle = stack[pos..].to_vec();
                cycle.push(script.id.clone());
                return Err(CheckFailure {
                    script: script.id.clone(),
                    label: None,
                    reason: Reason::Cycle(cycle),
                });
            }
            stack.push(script.id.clone());
        }
        let out = self.check_body(script);
        self.stack.borrow_mut().pop();
        out
    }

    fn check_body(&self, script: &ProofScript) -> Result<Dependencies, CheckFailure> {
        let fail = |label, reason| CheckFailure {
            script: script.id.clone(),
            label,
            reason,
        };
        if let Ok(id) = script.id.parse::<AxiomId>() {
            let info = id.info();
            let mismatch = |expected: &Formula, found: &Formula| {
                (expected != found).then(|| {
                    fail(
                        None,
                        Reason::Registry {
                            id,
                            expected: expected.clone(),
                            found: found.clone(),
                        },
                    )
                })
            };
            if let Some(e) = mismatch(info.template(), &script.target) {
                return Err(e);
            }
            if let (Some(p), Some(q)) = (&info.premise, &script.premise) {
                if let Some(e) = mismatch(p, q) {
                    return Err(e);
                }
            }
        }
        let last = script
            .lines
            .last()
            .ok_or_else(|| fail(None, Reason::Empty))?;
        let mut deps = Dependencies::default();
        for index in 0..script.lines.len() {
            deps.merge(&self.check_line(script, index)?);
        }
        if last.formula != script.target {
            return Err(fail(
                Some(last.label),
                Reason::TargetMismatch {
                    target: script.target.clone(),
                    last: last.formula.clone(),
                },
            ));
        }
        let used: BTreeSet<Label> = script
            .lines
            .iter()
            .flat_map(|l| l.justification.references())
            .collect();
        if let Some(unused) = script.lines[..script.lines.len() - 1]
            .iter()
            .find(|l| !used.contains(&l.label))
        {
            return Err(fail(Some(unused.label), Reason::UnusedLine(unused.label)));
        }
        Ok(deps)
    }

    /// Checks the justification of line `index`, assuming the lines before
    /// it are correct.
    pub fn check_line(
        &self,
        script: &ProofScript,
        index: usize,
    ) -> Result<Dependencies, CheckFailure> {
        let line = &script.lines[index];
        let earlier = &script.lines[..index];
        self.line_reason(script, earlier, line)
            .map_err(|reason| CheckFailure {
                script: script.id.clone(),
                label: Some(line.label),
                reason,
            })
    }

    fn line_reason(
        &self,
        script: &ProofScript,
        earlier: &[ProofLine],
        line: &ProofLine,
    ) -> Result<Dependencies, Reason> {
        if let Some(prev) = earlier.last() {
            if line.label <= prev.label {
                return Err(Reason::LabelOrder {
                    label: line.label,
                    previous: prev.label,
                });
            }
        }
        let get = |r: Label| -> Result<&Formula, Reason> {
            earlier
                .iter()
                .find(|l| l.label == r)
                .map(|l| &l.formula)
                .ok_or(Reason::BadReference { reference: r })
        };
        let implication = |r: Label| -> Result<(&Formula, &Formula), Reason> {
            let f = get(r)?;
            f.as_implication().ok_or_else(|| Reason::NotImplication {
                line: r,
                found: f.clone(),
            })
        };
        let expect = |expected: Formula| -> Result<Dependencies, Reason> {
            if expected == line.formula {
                Ok(Dependencies::default())
            } else {
                Err(Reason::ShapeMismatch {
                    expected,
                    found: line.formula.clone(),
                })
            }
        };
        let current = &line.formula;
        use Justification::*;
        match &line.justification {
            Tautology => tautology(current).map(|_| Dependencies::default()),
            Hypothesis => match &script.premise {
                Some(p) if p == current => Ok(Dependencies::default()),
                premise => Err(Reason::Hypothesis {
                    premise: premise.clone(),
                }),
            },
            Pl { lines } => {
                let premises = lines
                    .iter()
                    .map(|&r| get(r).cloned())
                    .collect::<Result<Vec<_>, _>>()?;
                tautology(&Formula::implies(
                    Formula::conjunction(premises),
                    current.clone(),
                ))
                .map(|_| Dependencies::default())
            }
            ModusPonens {
                antecedent,
                implication: imp,
            } => {
                let a = get(*antecedent)?;
                let found = get(*imp)?;
                let expected = Formula::implies(a.clone(), current.clone());
                if *found == expected {
                    Ok(Dependencies::default())
                } else {
                    Err(Reason::ShapeMismatch {
                        expected,
                        found: found.clone(),
                    })
                }
            }
            NecBox { line: r } => expect(Formula::necessity(get(*r)?.clone())),
            NecCond {
                line: r,
                antecedent,
            } => expect(Formula::cond(antecedent.clone(), get(*r)?.clone())),
            RmBox { line: r } => {
                let (a, b) = implication(*r)?;
                expect(Formula::implies(
                    Formula::necessity(a.clone()),
                    Formula::necessity(b.clone()),
                ))
            }
            RmB { line: r } => {
                let (a, b) = implication(*r)?;
                expect(Formula::implies(
                    Formula::believes(a.clone()),
                    Formula::believes(b.clone()),
                ))
            }
            RmCond {
                line: r,
                antecedent: g,
            } => {
                let (a, b) = implication(*r)?;
                expect(Formula::implies(
                    Formula::cond(g.clone(), a.clone()),
                    Formula::cond(g.clone(), b.clone()),
                ))
            }
            AxiomInstance { id, binding } => {
                if id.is_rule() {
                    return Err(Reason::IsRule(*id));
                }
                let mut deps = self.availability(*id)?;
                let mut b = binding.clone();
                let template = id.info().template();
                if !template.match_into(current, &mut b) {
                    return Err(Reason::ShapeMismatch {
                        expected: template.substitute(binding),
                        found: current.clone(),
                    });
                }
                if id.info().schema.boolean_only {
                    boolean_binding(&b)?;
                    deps.boolean = true;
                }
                Ok(deps)
            }
            DerivedRule { id, line: r } => {
                if !id.is_rule() {
                    return Err(Reason::NotRule(*id));
                }
                let mut deps = self.availability(*id)?;
                let info = id.info();
                let premise = info.premise.as_ref().expect("rules have premises");
                let cited = get(*r)?;
                let mut b = Binding::new();
                if !premise.match_into(cited, &mut b) {
                    return Err(Reason::ShapeMismatch {
                        expected: premise.clone(),
                        found: cited.clone(),
                    });
                }
                let partial = b.clone();
                if !info.template().match_into(current, &mut b) {
                    return Err(Reason::ShapeMismatch {
                        expected: info.template().substitute(&partial),
                        found: current.clone(),
                    });
                }
                if info.schema.boolean_only {
                    boolean_binding(&b)?;
                    deps.boolean = true;
                }
                Ok(deps)
            }
            PriorLemma {
                script: id,
                binding,
            } => {
                let cited = self
                    .registry
                    .get(id)
                    .ok_or_else(|| Reason::UnknownScript(id.clone()))?;
                if cited.premise.is_some() {
                    return Err(Reason::LemmaIsRule(id.clone()));
                }
                let mut deps = self.resolve(id)?;
                let mut b = binding.clone();
                if !cited.target.match_into(current, &mut b) {
                    return Err(Reason::ShapeMismatch {
                        expected: cited.target.substitute(binding),
                        found: current.clone(),
                    });
                }
                if deps.boolean {
                    boolean_binding(&b)?;
                }
                deps.scripts.insert(id.clone());
                Ok(deps)
            }
        }
    }

    /// Dependencies incurred by citing `id`: itself when primitive,
    /// otherwise its registered derivation.
    fn availability(&self, id: AxiomId) -> Result<Dependencies, Reason> {
        if self.logic.is_primitive(id) {
            let mut d = Dependencies::default();
            d.axioms.insert(id);
            return Ok(d);
        }
        if self.registry.get(id.name()).is_none() {
            return Err(Reason::NotInLogic {
                id,
                logic: self.logic.to_string(),
            });
        }
        let mut d = self.resolve(id.name())?;
        d.scripts.insert(id.name().to_string());
        Ok(d)
    }

    fn resolve(&self, id: &str) -> Result<Dependencies, Reason> {
        if self.stack.borrow().iter().any(|s| s == id) {
            let stack = self.stack.borrow();
            let pos = stack.iter().position(|s| s == id).unwrap();
            let mut cycle = stack[pos..].to_vec();
            cycle.push(id.to_string());
            return Err(Reason::Cycle(cycle));
        }
        self.check_registered(id).map_err(|e| match e.reason {
            Reason::Cycle(c) => Reason::Cycle(c),
            _ => Reason::Dependency(Box::new(e)),
        })
    }
}

fn tautology(f: &Formula) -> Result<(), Reason> {
    match is_tautology(f) {
        Ok(true) => Ok(()),
        Ok(false) => Err(Reason::NotTautology { formula: f.clone() }),
        Err(e) => Err(Reason::Tautology(e.to_string())),
    }
}

fn boolean_binding(b: &Binding) -> Result<(), Reason> {
    match b.iter().find(|(_, f)| !f.is_boolean()) {
        Some((var, formula)) => Err(Reason::NonBoolean {
            var: *var,
            formula: formula.clone(),
        }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::proofkit::parse_scripts;

    fn registry(text: &str) -> Registry {
        let mut r = Registry::new();
        for s in parse_scripts(text).unwrap() {
            r.insert(s);
        }
        r
    }

    fn run(text: &str) -> Result<Dependencies, CheckFailure> {
        let r = registry(text);
        let s = parse_scripts(text).unwrap().pop().unwrap();
        Checker::new(&r, s.logic).check_script(&s)
    }

    #[test]
    fn consistency_axiom_line() {
        let d =
            run("id: t\nlogic: L\ntarget: B PHI -> ~B~PHI\n1. B PHI -> ~B~PHI ; ax D_B\n").unwrap();
        assert!(d.axioms.contains(&AxiomId::DB));
    }

    #[test]
    fn monotonicity_rule_for_belief() {
        let text = "id: t\nlogic: L\ntarget: B PSI -> B(PHI -> PSI)\n\
                    1. PSI -> (PHI -> PSI) ; taut\n2. B PSI -> B(PHI -> PSI) ; rm_b 1\n";
        assert!(run(text).is_ok());
    }

    #[test]
    fn modus_ponens_order_matters() {
        let ok = "id: t\nlogic: L\ntarget: q | ~q\n1. p | ~p ; taut\n\
                  2. (p | ~p) -> (q | ~q) ; taut\n3. q | ~q ; mp 1 2\n";
        assert!(run(ok).is_ok());
        let err = run(&ok.replace("mp 1 2", "mp 2 1")).unwrap_err();
        assert_eq!(err.label, Some(3));
        assert!(matches!(err.reason, Reason::ShapeMismatch { .. }));
    }

    #[test]
    fn boolean_only_schemas_reject_modal_bindings() {
        let text =
            "id: t\nlogic: KM\ntarget: B(B p > B p)\n1. B(B p > B p) ; ax A_star2_diamond_1\n";
        let err = run(text).unwrap_err();
        assert!(matches!(err.reason, Reason::NonBoolean { .. }));
    }

    #[test]
    fn items_outside_the_logic_are_refused() {
        let text =
            "id: t\nlogic: L\ntarget: B(PHI > PHI)\n1. B(PHI > PHI) ; ax A_star2_diamond_1\n";
        assert!(matches!(
            run(text).unwrap_err().reason,
            Reason::NotInLogic { .. }
        ));
        let logic = Logic::new(LogicId::AGM).without(AxiomId::AStar2Diamond1);
        assert!(!logic.is_primitive(AxiomId::AStar2Diamond1));
        assert!(logic.is_primitive(AxiomId::DB));
    }

    #[test]
    fn unused_and_dangling_lines() {
        let unused = "id: t\nlogic: L\ntarget: p | ~p\n1. q | ~q ; taut\n2. p | ~p ; taut\n";
        assert_eq!(run(unused).unwrap_err().reason, Reason::UnusedLine(1));
        let dangling = "id: t\nlogic: L\ntarget: p | ~p\n2. p | ~p ; pl 1\n";
        assert_eq!(
            run(dangling).unwrap_err().reason,
            Reason::BadReference { reference: 1 }
        );
    }

    #[test]
    fn cycles_are_detected() {
        let text = "id: a\nlogic: L\ntarget: p | ~p\n1. p | ~p ; lemma b\n\
                    id: b\nlogic: L\ntarget: p | ~p\n1. p | ~p ; lemma a\n";
        let r = registry(text);
        let err = Checker::new(&r, LogicId::L)
            .check_registered("a")
            .unwrap_err();
        assert!(matches!(err.reason, Reason::Cycle(_)), "{err}");
    }

    #[test]
    fn target_must_be_last() {
        let text = "id: t\nlogic: L\ntarget: q | ~q\n1. p | ~p ; taut\n";
        assert!(matches!(
            run(text).unwrap_err().reason,
            Reason::TargetMismatch { .. }
        ));
        let f = parse("q | ~q").unwrap();
        assert!(is_tautology(&f).unwrap());
    }
}
