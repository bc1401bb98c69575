//! The trimodal language: Boolean connectives over atoms plus the belief
//! operator `B`, the necessity operator `[]` and the binary conditional `>`.
//!
//! Only `~` and `|` are primitive among the Boolean connectives. `&`, `->`,
//! `<->`, `T` and `F` are constructors that expand into the primitive basis,
//! so two formulas written with different sugar compare equal exactly when
//! their expansions do.
//!
//! Schema metavariables are ordinary atoms drawn from a reserved uppercase
//! namespace (`PHI`, `PSI`, `CHI`), see [`MetaVar`].

mod parse;
mod print;
pub mod random;
pub mod reference;
mod schema;
mod taut;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::{parse, ParseError};
pub use schema::{instantiate, Binding, InstantiateError, Schema};
pub use taut::{is_tautology, TautologyChecker, TautologyError, DEFAULT_MAX_OPAQUE_ATOMS};

/// Atom used to spell the constants: `T` is `a0 | ~a0`, `F` is `a0 & ~a0`.
pub const RESERVED_ATOM: &str = "a0";

/// A formula of the trimodal language, in the primitive `~`/`|` basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// `B a`: the agent believes `a`.
    Believes(Box<Formula>),
    /// `[] a`: `a` is necessarily true.
    Necessity(Box<Formula>),
    /// `(a > b)`: if `a` were the case then `b` would be the case.
    Cond(Box<Formula>, Box<Formula>),
}

/// Placeholder for a Boolean formula inside an axiom schema.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MetaVar {
    Phi,
    Psi,
    Chi,
}

impl MetaVar {
    pub const ALL: [MetaVar; 3] = [MetaVar::Phi, MetaVar::Psi, MetaVar::Chi];

    /// Spelling inside formulas.
    pub fn name(self) -> &'static str {
        match self {
            MetaVar::Phi => "PHI",
            MetaVar::Psi => "PSI",
            MetaVar::Chi => "CHI",
        }
    }

    /// Spelling used as a binding key in proof files (`phi=...`).
    pub fn key(self) -> &'static str {
        match self {
            MetaVar::Phi => "phi",
            MetaVar::Psi => "psi",
            MetaVar::Chi => "chi",
        }
    }

    pub fn from_name(name: &str) -> Option<MetaVar> {
        MetaVar::ALL.into_iter().find(|m| m.name() == name)
    }

    pub fn from_key(key: &str) -> Option<MetaVar> {
        MetaVar::ALL.into_iter().find(|m| m.key() == key)
    }
}

impl fmt::Display for MetaVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn meta(m: MetaVar) -> Formula {
        Formula::Atom(m.name().to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::or(Formula::not(a), Formula::not(b)))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    pub fn top() -> Formula {
        let a = Formula::atom(RESERVED_ATOM);
        Formula::or(a.clone(), Formula::not(a))
    }

    pub fn bottom() -> Formula {
        let a = Formula::atom(RESERVED_ATOM);
        Formula::and(a.clone(), Formula::not(a))
    }

    pub fn believes(f: Formula) -> Formula {
        Formula::Believes(Box::new(f))
    }

    pub fn necessity(f: Formula) -> Formula {
        Formula::Necessity(Box::new(f))
    }

    /// `~[]~f`: the truth set of `f` is non-empty.
    pub fn possibly(f: Formula) -> Formula {
        Formula::not(Formula::necessity(Formula::not(f)))
    }

    pub fn cond(antecedent: Formula, consequent: Formula) -> Formula {
        Formula::Cond(Box::new(antecedent), Box::new(consequent))
    }

    /// Left-nested conjunction of `parts`; `T` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        let mut it = parts.into_iter();
        match it.next() {
            None => Formula::top(),
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Left-nested disjunction of `parts`; `F` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        let mut it = parts.into_iter();
        match it.next() {
            None => Formula::bottom(),
            Some(first) => it.fold(first, Formula::or),
        }
    }

    /// True iff the formula contains no `B`, `[]` or `>` node.
    pub fn is_boolean(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(a) => a.is_boolean(),
            Formula::Or(a, b) => a.is_boolean() && b.is_boolean(),
            Formula::Believes(_) | Formula::Necessity(_) | Formula::Cond(..) => false,
        }
    }

    pub fn is_metavar(&self) -> Option<MetaVar> {
        match self {
            Formula::Atom(name) => MetaVar::from_name(name),
            _ => None,
        }
    }

    /// Every atom name occurring in the formula, metavariables included.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Not(a) | Formula::Believes(a) | Formula::Necessity(a) => a.collect_atoms(out),
            Formula::Or(a, b) | Formula::Cond(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn metavars(&self) -> BTreeSet<MetaVar> {
        self.atoms()
            .iter()
            .filter_map(|a| MetaVar::from_name(a))
            .collect()
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(a) | Formula::Believes(a) | Formula::Necessity(a) => 1 + a.size(),
            Formula::Or(a, b) | Formula::Cond(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(a) | Formula::Believes(a) | Formula::Necessity(a) => 1 + a.depth(),
            Formula::Or(a, b) | Formula::Cond(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Simultaneous replacement of metavariable atoms. Unbound metavariables
    /// are left in place.
    pub fn substitute(&self, binding: &BTreeMap<MetaVar, Formula>) -> Formula {
        match self {
            Formula::Atom(name) => match MetaVar::from_name(name).and_then(|m| binding.get(&m)) {
                Some(f) => f.clone(),
                None => self.clone(),
            },
            Formula::Not(a) => Formula::not(a.substitute(binding)),
            Formula::Or(a, b) => Formula::or(a.substitute(binding), b.substitute(binding)),
            Formula::Believes(a) => Formula::believes(a.substitute(binding)),
            Formula::Necessity(a) => Formula::necessity(a.substitute(binding)),
            Formula::Cond(a, b) => Formula::cond(a.substitute(binding), b.substitute(binding)),
        }
    }

    /// Rename atoms according to `map`; atoms not in the map are kept.
    pub fn rename_atoms(&self, map: &BTreeMap<String, String>) -> Formula {
        match self {
            Formula::Atom(name) => Formula::Atom(map.get(name).unwrap_or(name).clone()),
            Formula::Not(a) => Formula::not(a.rename_atoms(map)),
            Formula::Or(a, b) => Formula::or(a.rename_atoms(map), b.rename_atoms(map)),
            Formula::Believes(a) => Formula::believes(a.rename_atoms(map)),
            Formula::Necessity(a) => Formula::necessity(a.rename_atoms(map)),
            Formula::Cond(a, b) => Formula::cond(a.rename_atoms(map), b.rename_atoms(map)),
        }
    }

    /// One-way matching: treats metavariable atoms of `self` as pattern
    /// variables and extends `binding` so that `self` instantiates to
    /// `target`. Metavariables of `target` are plain data.
    ///
    /// On failure `binding` may hold partial assignments.
    pub fn match_into(&self, target: &Formula, binding: &mut Binding) -> bool {
        match (self, target) {
            (Formula::Atom(name), _) => match MetaVar::from_name(name) {
                Some(m) => match binding.get(&m) {
                    Some(bound) => bound == target,
                    None => {
                        binding.insert(m, target.clone());
                        true
                    }
                },
                None => self == target,
            },
            (Formula::Not(a), Formula::Not(b))
            | (Formula::Believes(a), Formula::Believes(b))
            | (Formula::Necessity(a), Formula::Necessity(b)) => a.match_into(b, binding),
            (Formula::Or(a1, b1), Formula::Or(a2, b2))
            | (Formula::Cond(a1, b1), Formula::Cond(a2, b2)) => {
                a1.match_into(a2, binding) && b1.match_into(b2, binding)
            }
            _ => false,
        }
    }

    /// `Some((a, b))` when the formula is `a -> b`.
    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Or(l, r) => match l.as_ref() {
                Formula::Not(a) => Some((a, r)),
                _ => None,
            },
            _ => None,
        }
    }

    /// `Some((a, b))` when the formula is `a <-> b`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        let (l, r) = self.as_conjunction()?;
        let (a, b) = l.as_implication()?;
        let (b2, a2) = r.as_implication()?;
        (a == a2 && b == b2).then_some((a, b))
    }

    /// `Some((a, b))` when the formula is `a & b`.
    pub fn as_conjunction(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Or(l, r) => match (l.as_ref(), r.as_ref()) {
                    (Formula::Not(a), Formula::Not(b)) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_top(&self) -> bool {
        *self == Formula::top()
    }

    pub fn is_bottom(&self) -> bool {
        *self == Formula::bottom()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

/// Serialized as its canonical text.
impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Formula, ParseError> {
        parse(s)
    }
}

/// Render a formula in the concrete syntax; `parse(&print(f)) == f`.
pub fn print(f: &Formula) -> String {
    print::print(f)
}
