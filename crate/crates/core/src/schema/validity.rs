use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use super::{AxiomId, LogicId};
use crate::formula::{Formula, MetaVar};
use crate::frame::{Event, Frame};
use crate::model::Program;
use crate::Outcome;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("{0} is a rule of inference, not an axiom schema")]
    IsRule(AxiomId),
    #[error("{0} is an axiom schema, not a rule of inference")]
    NotRule(AxiomId),
}

/// Metavariable denotations and a state at which the instance is false.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SchemaWitness {
    pub binding: BTreeMap<MetaVar, Event>,
    pub state: usize,
}

struct Compiled {
    program: Program,
    /// Metavariable behind each program atom.
    atom_vars: Vec<usize>,
    vars: Vec<MetaVar>,
    conclusion: usize,
    premise: Option<usize>,
}

fn compiled(a: AxiomId) -> &'static Compiled {
    static CACHE: OnceLock<Vec<Compiled>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        AxiomId::ALL
            .into_iter()
            .map(|id| {
                let info = id.info();
                let mut program = Program::new();
                let premise = info.premise.as_ref().map(|p| program.add(p));
                let conclusion = program.add(info.template());
                let mut vars: Vec<MetaVar> = info.schema.metavars.clone();
                if let Some(p) = &info.premise {
                    vars.extend(p.metavars());
                    vars.sort();
                    vars.dedup();
                }
                let atom_vars = program
                    .atoms()
                    .iter()
                    .map(|name| {
                        let m = MetaVar::from_name(name).expect("templates use metavariables only");
                        vars.iter().position(|v| *v == m).unwrap()
                    })
                    .collect();
                Compiled {
                    program,
                    atom_vars,
                    vars,
                    conclusion,
                    premise,
                }
            })
            .collect()
    });
    &all[a as usize]
}

/// Calls `visit` with every assignment of events to `k` variables, the first
/// variable varying slowest. Stops at the first `Some`.
fn sweep<W>(n: usize, k: usize, mut visit: impl FnMut(&[Event]) -> Option<W>) -> Option<W> {
    let events: Vec<Event> = Event::all(n).collect();
    let width = events.len();
    let total = width.pow(k as u32);
    let mut current = vec![events[0]; k];
    for index in 0..total {
        let mut rest = index;
        for slot in (0..k).rev() {
            current[slot] = events[rest % width];
            rest /= width;
        }
        if let Some(w) = visit(&current) {
            return Some(w);
        }
    }
    None
}

fn witness(c: &Compiled, values: &[Event], state: usize) -> SchemaWitness {
    SchemaWitness {
        binding: c.vars.iter().copied().zip(values.iter().copied()).collect(),
        state,
    }
}

/// Validity of an axiom schema on `fr`: every instance, with metavariables
/// ranging over all events, is true at every state.
pub fn schema_valid_on_frame(
    fr: &Frame,
    a: AxiomId,
) -> Result<Outcome<SchemaWitness>, SchemaError> {
    if a.is_rule() {
        return Err(SchemaError::IsRule(a));
    }
    let c = compiled(a);
    let mut truth = Vec::new();
    let mut atoms = Vec::new();
    let found = sweep(fr.n_states(), c.vars.len(), |values| {
        atoms.clear();
        atoms.extend(c.atom_vars.iter().map(|&i| values[i]));
        c.program.eval_into(fr, &atoms, &mut truth);
        let t = truth[c.conclusion];
        (!t.is_full()).then(|| witness(c, values, t.complement().members().next().unwrap()))
    });
    Ok(found.map_or(Outcome::Holds, Outcome::Violated))
}

/// Validity of a rule on `fr`: whenever an instance of the premise is true
/// at every state, so is the matching instance of the conclusion.
pub fn rule_valid_on_frame(fr: &Frame, r: AxiomId) -> Result<Outcome<SchemaWitness>, SchemaError> {
    if !r.is_rule() {
        return Err(SchemaError::NotRule(r));
    }
    let c = compiled(r);
    let premise = c.premise.expect("rules have premises");
    let mut truth = Vec::new();
    let mut atoms = Vec::new();
    let found = sweep(fr.n_states(), c.vars.len(), |values| {
        atoms.clear();
        atoms.extend(c.atom_vars.iter().map(|&i| values[i]));
        c.program.eval_into(fr, &atoms, &mut truth);
        let t = truth[c.conclusion];
        (truth[premise].is_full() && !t.is_full())
            .then(|| witness(c, values, t.complement().members().next().unwrap()))
    });
    Ok(found.map_or(Outcome::Holds, Outcome::Violated))
}

/// Atom denotations and a state at which a formula is false.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ValuationWitness {
    pub valuation: BTreeMap<String, Event>,
    pub state: usize,
}

/// Validity of an arbitrary formula on `fr`: true at every state under every
/// valuation of its atoms, metavariables included.
pub fn formula_valid_on_frame(fr: &Frame, f: &Formula) -> Outcome<ValuationWitness> {
    let (program, slot) = Program::compile(f);
    let names = program.atoms().to_vec();
    let mut truth = Vec::new();
    let found = sweep(fr.n_states(), names.len(), |values| {
        program.eval_into(fr, values, &mut truth);
        let t = truth[slot];
        (!t.is_full()).then(|| ValuationWitness {
            valuation: names.iter().cloned().zip(values.iter().copied()).collect(),
            state: t.complement().members().next().unwrap(),
        })
    });
    found.map_or(Outcome::Holds, Outcome::Violated)
}

/// Whether every axiom and rule of `logic` is valid on `fr`.
pub fn validates_logic(fr: &Frame, logic: LogicId) -> bool {
    logic.members().into_iter().all(|a| {
        if a.is_rule() {
            rule_valid_on_frame(fr, a).unwrap().holds()
        } else {
            schema_valid_on_frame(fr, a).unwrap().holds()
        }
    })
}
