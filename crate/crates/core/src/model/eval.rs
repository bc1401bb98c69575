//! Formulas compiled to a shared, slot-indexed DAG so that many formulas can
//! be evaluated against many frames without re-walking trees.

use std::collections::HashMap;

use crate::formula::Formula;
use crate::frame::{Event, Frame};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Atom(usize),
    Not(usize),
    Or(usize, usize),
    Believes(usize),
    Necessity(usize),
    Cond(usize, usize),
}

/// A set of compiled formulas. Structurally equal subformulas share a slot.
#[derive(Clone, Debug, Default)]
pub struct Program {
    ops: Vec<Op>,
    atoms: Vec<String>,
    slots: HashMap<Formula, usize>,
    atom_index: HashMap<String, usize>,
}

impl Program {
    pub fn new() -> Program {
        Program::default()
    }

    pub fn compile(f: &Formula) -> (Program, usize) {
        let mut p = Program::new();
        let slot = p.add(f);
        (p, slot)
    }

    /// Adds `f`, returning the slot holding its truth set after [`Program::eval`].
    pub fn add(&mut self, f: &Formula) -> usize {
        if let Some(&slot) = self.slots.get(f) {
            return slot;
        }
        let op = match f {
            Formula::Atom(name) => {
                let next = self.atoms.len();
                let i = *self.atom_index.entry(name.clone()).or_insert(next);
                if i == next {
                    self.atoms.push(name.clone());
                }
                Op::Atom(i)
            }
            Formula::Not(a) => Op::Not(self.add(a)),
            Formula::Or(a, b) => {
                let a = self.add(a);
                Op::Or(a, self.add(b))
            }
            Formula::Believes(a) => Op::Believes(self.add(a)),
            Formula::Necessity(a) => Op::Necessity(self.add(a)),
            Formula::Cond(a, b) => {
                let a = self.add(a);
                Op::Cond(a, self.add(b))
            }
        };
        self.ops.push(op);
        let slot = self.ops.len() - 1;
        self.slots.insert(f.clone(), slot);
        slot
    }

    /// Atom names in the order [`Program::eval`] expects their events.
    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Truth sets of every slot. `atom_values[i]` is the denotation of
    /// `atoms()[i]`.
    pub fn eval(&self, frame: &Frame, atom_values: &[Event]) -> Vec<Event> {
        let mut out = Vec::with_capacity(self.ops.len());
        self.eval_into(frame, atom_values, &mut out);
        out
    }

    /// As [`Program::eval`], reusing `out`'s allocation.
    pub fn eval_into(&self, frame: &Frame, atom_values: &[Event], out: &mut Vec<Event>) {
        assert_eq!(atom_values.len(), self.atoms.len(), "one event per atom");
        out.clear();
        let n = frame.n_states();
        let full = Event::full(n);
        let empty = Event::empty(n);
        for op in &self.ops {
            let v = match *op {
                Op::Atom(i) => atom_values[i],
                Op::Not(a) => out[a].complement(),
                Op::Or(a, b) => out[a].union(out[b]),
                Op::Believes(a) => {
                    let target = out[a];
                    let mut bits = 0u64;
                    for s in frame.states() {
                        if frame.belief(s).is_subset(target) {
                            bits |= 1 << s;
                        }
                    }
                    Event::from_bits(n, bits).unwrap()
                }
                Op::Necessity(a) => {
                    if out[a].is_full() {
                        full
                    } else {
                        empty
                    }
                }
                Op::Cond(a, b) => {
                    let (ante, cons) = (out[a], out[b]);
                    if ante.is_empty() {
                        full
                    } else {
                        let mut bits = 0u64;
                        for s in frame.states() {
                            if frame.sel(s, ante).is_subset(cons) {
                                bits |= 1 << s;
                            }
                        }
                        Event::from_bits(n, bits).unwrap()
                    }
                }
            };
            out.push(v);
        }
    }
}
