//! Models (a frame plus a valuation), truth sets, belief sets and the
//! belief-change engine: `psi` belongs to the revised beliefs `K_s * phi`
//! iff `U(s, ||phi||) ⊆ ||psi||`, where `U(s,E)` unions `f(s',E)` over the
//! states `s'` believed possible at `s`.

mod eval;
mod km;

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::formula::{Formula, RESERVED_ATOM};
use crate::frame::{Event, Frame, FrameError, RawFrame};

pub use eval::Program;
pub use km::{
    check_km_axiom, check_km_axiom_formula_level, km_instance_holds, Evaluated, FormulaWitness,
    KmAxiom, KmFormulaChecker, KmWitness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("atom {0:?} has no valuation")]
    UnvaluedAtom(String),
    #[error("valuation of {atom:?} lies outside the frame's {n} states")]
    ValuationOutOfRange { atom: String, n: usize },
    #[error("states {0} and {1} satisfy the same atoms, so events are not definable")]
    NonSeparating(usize, usize),
    #[error("cannot change beliefs by an inconsistent input (empty event) at state {state}")]
    EmptyEvent { state: usize },
    #[error(transparent)]
    Frame(#[from] FrameError),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Model {
    frame: Frame,
    valuation: BTreeMap<String, Event>,
}

/// The beliefs held at one state: `K_s = { phi : B(s) ⊆ ||phi|| }`.
#[derive(Clone, Copy, Debug)]
pub struct BeliefState<'a> {
    pub model: &'a Model,
    pub state: usize,
    pub belief_event: Event,
}

impl Model {
    pub fn new(frame: Frame, valuation: BTreeMap<String, Event>) -> Result<Model, ModelError> {
        let n = frame.n_states();
        for (atom, e) in &valuation {
            if e.universe() != n {
                return Err(ModelError::ValuationOutOfRange {
                    atom: atom.clone(),
                    n,
                });
            }
        }
        Ok(Model { frame, valuation })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, Event> {
        &self.valuation
    }

    /// Denotation of an atom. The reserved atom used to spell `T` and `F`
    /// denotes the empty event unless valued explicitly.
    pub fn atom(&self, name: &str) -> Result<Event, ModelError> {
        match self.valuation.get(name) {
            Some(e) => Ok(*e),
            None if name == RESERVED_ATOM => Ok(Event::empty(self.frame.n_states())),
            None => Err(ModelError::UnvaluedAtom(name.to_string())),
        }
    }

    /// `{ s : s ⊨ f }`.
    pub fn truth_set(&self, f: &Formula) -> Result<Event, ModelError> {
        let (program, slot) = Program::compile(f);
        let values = self.atom_values(&program)?;
        Ok(program.eval(&self.frame, &values)[slot])
    }

    pub(crate) fn atom_values(&self, program: &Program) -> Result<Vec<Event>, ModelError> {
        program.atoms().iter().map(|a| self.atom(a)).collect()
    }

    pub fn holds_at(&self, s: usize, f: &Formula) -> Result<bool, ModelError> {
        self.check_state(s)?;
        Ok(self.truth_set(f)?.contains(s))
    }

    fn check_state(&self, s: usize) -> Result<(), ModelError> {
        if s >= self.frame.n_states() {
            return Err(FrameError::StateOutOfRange {
                state: s,
                n: self.frame.n_states(),
            }
            .into());
        }
        Ok(())
    }

    pub fn belief_state(&self, s: usize) -> Result<BeliefState<'_>, ModelError> {
        self.check_state(s)?;
        Ok(BeliefState {
            model: self,
            state: s,
            belief_event: self.frame.belief(s),
        })
    }

    /// The event whose supersets are the truth sets of `K_s * E`.
    pub fn update_event(&self, s: usize, e: Event) -> Result<Event, ModelError> {
        self.check_state(s)?;
        if e.is_empty() {
            return Err(ModelError::EmptyEvent { state: s });
        }
        Ok(self.frame.union_selection(s, e)?)
    }

    /// A Boolean formula whose truth set is `e`: the disjunction of the
    /// descriptions of its member states over the valued atoms.
    pub fn characteristic_formula(&self, e: Event) -> Result<Formula, ModelError> {
        let atoms: Vec<(&String, &Event)> = self
            .valuation
            .iter()
            .filter(|(a, _)| a.as_str() != RESERVED_ATOM)
            .collect();
        let n = self.frame.n_states();
        let profile = |s: usize| atoms.iter().map(|(_, v)| v.contains(s)).collect::<Vec<_>>();
        for s in 0..n {
            for t in s + 1..n {
                if profile(s) == profile(t) {
                    return Err(ModelError::NonSeparating(s, t));
                }
            }
        }
        let describe = |s: usize| {
            Formula::conjunction(atoms.iter().map(|(a, v)| {
                let lit = Formula::atom(a.as_str());
                if v.contains(s) {
                    lit
                } else {
                    Formula::not(lit)
                }
            }))
        };
        Ok(Formula::disjunction(e.members().map(describe)))
    }
}

impl BeliefState<'_> {
    /// `phi ∈ K_s`.
    pub fn believes(&self, phi: &Formula) -> Result<bool, ModelError> {
        Ok(self.belief_event.is_subset(self.model.truth_set(phi)?))
    }

    /// `psi ∈ K_s * phi`.
    pub fn after_update_believes(&self, phi: &Formula, psi: &Formula) -> Result<bool, ModelError> {
        let e = self.model.truth_set(phi)?;
        let u = self.model.update_event(self.state, e)?;
        Ok(u.is_subset(self.model.truth_set(psi)?))
    }
}

/// File format: a frame document plus `"valuation": {"p": [..], ..}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawModel {
    #[serde(flatten)]
    pub frame: RawFrame,
    pub valuation: BTreeMap<String, Vec<usize>>,
}

impl RawModel {
    pub fn validate(&self) -> Result<Model, ModelError> {
        let frame = self
            .frame
            .validate()
            .map_err(|v| ModelError::Frame(FrameError::Invalid(v)))?;
        let n = frame.n_states();
        let valuation = self
            .valuation
            .iter()
            .map(|(a, members)| {
                Event::from_members(n, members.iter().copied())
                    .map(|e| (a.clone(), e))
                    .map_err(|_| ModelError::ValuationOutOfRange { atom: a.clone(), n })
            })
            .collect::<Result<_, _>>()?;
        Model::new(frame, valuation)
    }
}

impl Serialize for Model {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawModel {
            frame: self.frame.to_raw(),
            valuation: self
                .valuation
                .iter()
                .map(|(a, e)| (a.clone(), e.to_vec()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Model {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Model, D::Error> {
        RawModel::deserialize(d)?
            .validate()
            .map_err(serde::de::Error::custom)
    }
}
