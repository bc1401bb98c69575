//! Finite Kripke-Lewis frames `<S, B, f>`: a serial belief relation and a
//! selection function defined on every state and every non-empty event.
//! No Identity, Normality or Centering condition is imposed on `f`.

mod enumerate;
mod event;
mod property;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use enumerate::{
    enumerate_frames, frame_at, frame_count, sample_frame, sample_frame_with, sample_frames,
    MAX_ENUMERABLE_STATES,
};
pub use event::{Event, MAX_UNIVERSE};
pub use property::{check_property, PropertyId, PropertyWitness};

/// Largest state count a [`Frame`] accepts; the selection table has
/// `n * 2^n` entries.
pub const MAX_STATES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("selection is undefined on the empty event (state {state})")]
    EmptyEvent { state: usize },
    #[error("state {state} is outside a frame with {n} states")]
    StateOutOfRange { state: usize, n: usize },
    #[error("event belongs to a universe of size {found}, frame has {expected} states")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("exhaustive enumeration is limited to {max} states, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid frame: {}", list(.0))]
    Invalid(Vec<Violation>),
}

fn list(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// One broken frame invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoStates,
    TooManyStates {
        n: usize,
        max: usize,
    },
    BeliefCount {
        expected: usize,
        found: usize,
    },
    /// `B(s)` is empty.
    NotSerial {
        state: usize,
    },
    StateOutOfRange {
        context: String,
        index: usize,
    },
    SelectionOnEmptyEvent {
        state: usize,
    },
    DuplicateEntry {
        state: usize,
        event: Vec<usize>,
    },
    MissingEntry {
        state: usize,
        event: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStates => write!(f, "frame has no states"),
            Violation::TooManyStates { n, max } => {
                write!(f, "{n} states exceeds the limit of {max}")
            }
            Violation::BeliefCount { expected, found } => {
                write!(f, "expected {expected} belief sets, found {found}")
            }
            Violation::NotSerial { state } => write!(f, "belief set of state {state} is empty"),
            Violation::StateOutOfRange { context, index } => {
                write!(f, "index {index} out of range in {context}")
            }
            Violation::SelectionOnEmptyEvent { state } => {
                write!(f, "selection entry for state {state} on the empty event")
            }
            Violation::DuplicateEntry { state, event } => {
                write!(
                    f,
                    "duplicate selection entry for state {state}, event {event:?}"
                )
            }
            Violation::MissingEntry { state, event } => {
                write!(
                    f,
                    "missing selection entry for state {state}, event {event:?}"
                )
            }
        }
    }
}

/// One row of a selection table in the file format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionEntry {
    pub s: usize,
    pub event: Vec<usize>,
    pub value: Vec<usize>,
}

/// Unvalidated frame, shaped like the JSON file format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFrame {
    pub states: usize,
    pub belief: Vec<Vec<usize>>,
    pub selection: Vec<SelectionEntry>,
}

impl RawFrame {
    /// Checks every frame invariant, reporting all violations.
    pub fn validate(&self) -> Result<Frame, Vec<Violation>> {
        let n = self.states;
        if n == 0 {
            return Err(vec![Violation::NoStates]);
        }
        if n > MAX_STATES {
            return Err(vec![Violation::TooManyStates { n, max: MAX_STATES }]);
        }
        let mut violations = Vec::new();
        if self.belief.len() != n {
            violations.push(Violation::BeliefCount {
                expected: n,
                found: self.belief.len(),
            });
        }
        let mut belief = vec![Event::empty(n); n];
        for (s, members) in self.belief.iter().enumerate().take(n) {
            match Event::from_members(n, members.iter().copied()) {
                Ok(e) => {
                    belief[s] = e;
                    if e.is_empty() {
                        violations.push(Violation::NotSerial { state: s });
                    }
                }
                Err(index) => violations.push(Violation::StateOutOfRange {
                    context: format!("belief of state {s}"),
                    index,
                }),
            }
        }
        let width = 1usize << n;
        let mut table: Vec<Option<Event>> = vec![None; n * width];
        for entry in &self.selection {
            if entry.s >= n {
                violations.push(Violation::StateOutOfRange {
                    context: "selection entry state".into(),
                    index: entry.s,
                });
                continue;
            }
            let event = match Event::from_members(n, entry.event.iter().copied()) {
                Ok(e) => e,
                Err(index) => {
                    violations.push(Violation::StateOutOfRange {
                        context: format!("selection event of state {}", entry.s),
                        index,
                    });
                    continue;
                }
            };
            let value = match Event::from_members(n, entry.value.iter().copied()) {
                Ok(e) => e,
                Err(index) => {
                    violations.push(Violation::StateOutOfRange {
                        context: format!("selection value of state {}", entry.s),
                        index,
                    });
                    continue;
                }
            };
            if event.is_empty() {
                violations.push(Violation::SelectionOnEmptyEvent { state: entry.s });
                continue;
            }
            let slot = &mut table[entry.s * width + event.bits() as usize];
            if slot.is_some() {
                violations.push(Violation::DuplicateEntry {
                    state: entry.s,
                    event: event.to_vec(),
                });
            }
            *slot = Some(value);
        }
        for s in 0..n {
            for e in Event::nonempty(n) {
                if table[s * width + e.bits() as usize].is_none() {
                    violations.push(Violation::MissingEntry {
                        state: s,
                        event: e.to_vec(),
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        let selection = table
            .into_iter()
            .map(|v| v.unwrap_or(Event::empty(n)))
            .collect();
        Ok(Frame {
            n,
            belief,
            selection,
        })
    }
}

/// A validated frame. Immutable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    n: usize,
    belief: Vec<Event>,
    /// Indexed by `s * 2^n + bits(E)`; the `E = {}` slots are unused.
    selection: Vec<Event>,
}

impl Frame {
    /// Builds a frame from belief sets and a selection function; `f` is only
    /// called on non-empty events.
    pub fn from_fn<F>(n: usize, belief: Vec<Event>, mut f: F) -> Result<Frame, Vec<Violation>>
    where
        F: FnMut(usize, Event) -> Event,
    {
        if n == 0 {
            return Err(vec![Violation::NoStates]);
        }
        if n > MAX_STATES {
            return Err(vec![Violation::TooManyStates { n, max: MAX_STATES }]);
        }
        let raw = RawFrame {
            states: n,
            belief: belief.iter().map(|e| e.to_vec()).collect(),
            selection: (0..n)
                .flat_map(|s| Event::nonempty(n).map(move |e| (s, e)))
                .map(|(s, e)| SelectionEntry {
                    s,
                    event: e.to_vec(),
                    value: f(s, e).to_vec(),
                })
                .collect(),
        };
        raw.validate()
    }

    /// Builds a frame from a dense table without re-validating; callers
    /// guarantee seriality and universe agreement.
    pub(crate) fn from_parts(n: usize, belief: Vec<Event>, selection: Vec<Event>) -> Frame {
        debug_assert!(belief.iter().all(|b| !b.is_empty()));
        debug_assert_eq!(selection.len(), n << n);
        Frame {
            n,
            belief,
            selection,
        }
    }

    pub fn n_states(&self) -> usize {
        self.n
    }

    pub fn states(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn full(&self) -> Event {
        Event::full(self.n)
    }

    pub fn belief(&self, s: usize) -> Event {
        self.belief[s]
    }

    fn check(&self, s: usize, e: Event) -> Result<(), FrameError> {
        if s >= self.n {
            return Err(FrameError::StateOutOfRange {
                state: s,
                n: self.n,
            });
        }
        if e.universe() != self.n {
            return Err(FrameError::UniverseMismatch {
                expected: self.n,
                found: e.universe(),
            });
        }
        if e.is_empty() {
            return Err(FrameError::EmptyEvent { state: s });
        }
        Ok(())
    }

    /// `f(s, E)`.
    pub fn selection(&self, s: usize, e: Event) -> Result<Event, FrameError> {
        self.check(s, e)?;
        Ok(self.sel(s, e))
    }

    /// `f(s, E)` without argument checks; `E` must be non-empty.
    #[inline]
    pub(crate) fn sel(&self, s: usize, e: Event) -> Event {
        debug_assert!(!e.is_empty());
        self.selection[(s << self.n) | e.bits() as usize]
    }

    /// The union of `f(s', E)` over `s'` in `B(s)`.
    pub fn union_selection(&self, s: usize, e: Event) -> Result<Event, FrameError> {
        self.check(s, e)?;
        Ok(self.union_sel(s, e))
    }

    #[inline]
    pub(crate) fn union_sel(&self, s: usize, e: Event) -> Event {
        let mut acc = Event::empty(self.n);
        for t in self.belief[s].members() {
            acc = acc.union(self.sel(t, e));
        }
        acc
    }

    pub fn to_raw(&self) -> RawFrame {
        RawFrame {
            states: self.n,
            belief: self.belief.iter().map(|b| b.to_vec()).collect(),
            selection: self
                .states()
                .flat_map(|s| Event::nonempty(self.n).map(move |e| (s, e)))
                .map(|(s, e)| SelectionEntry {
                    s,
                    event: e.to_vec(),
                    value: self.sel(s, e).to_vec(),
                })
                .collect(),
        }
    }

    /// Distinct values of `f`, for diagnostics.
    pub fn selection_values(&self) -> BTreeSet<Event> {
        self.states()
            .flat_map(|s| Event::nonempty(self.n).map(move |e| self.sel(s, e)))
            .collect()
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame(n={}, B=[", self.n)?;
        for (s, b) in self.belief.iter().enumerate() {
            if s > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("], f={")?;
        let mut first = true;
        for s in self.states() {
            for e in Event::nonempty(self.n) {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "({s},{e})->{}", self.sel(s, e))?;
            }
        }
        f.write_str("})")
    }
}

impl Serialize for Frame {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_raw().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Frame {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Frame, D::Error> {
        let raw = RawFrame::deserialize(d)?;
        raw.validate()
            .map_err(|v| serde::de::Error::custom(FrameError::Invalid(v)))
    }
}
