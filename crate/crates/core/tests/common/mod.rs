//! Naive set-based oracles shared by the integration tests. Everything here
//! works on `BTreeSet<usize>` and reads frames only through their tables.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use kl_core::formula::Formula;
use kl_core::frame::{Event, Frame};

pub type Set = BTreeSet<usize>;

pub fn set(e: Event) -> Set {
    e.members().collect()
}

pub fn event(n: usize, s: &Set) -> Event {
    Event::from_members(n, s.iter().copied()).unwrap()
}

/// Every subset of `0..n`, empty set first.
pub fn subsets(n: usize) -> Vec<Set> {
    (0u32..1 << n)
        .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect())
        .collect()
}

pub fn nonempty_subsets(n: usize) -> Vec<Set> {
    subsets(n).into_iter().filter(|s| !s.is_empty()).collect()
}

pub fn all_states(fr: &Frame) -> Set {
    (0..fr.n_states()).collect()
}

pub fn belief(fr: &Frame, s: usize) -> Set {
    set(fr.belief(s))
}

pub fn select(fr: &Frame, s: usize, e: &Set) -> Set {
    set(fr.selection(s, event(fr.n_states(), e)).unwrap())
}

/// The union of `f(s', E)` over `s'` in `B(s)`.
pub fn cup(fr: &Frame, s: usize, e: &Set) -> Set {
    belief(fr, s)
        .into_iter()
        .flat_map(|t| select(fr, t, e))
        .collect()
}

/// Truth set by the satisfaction clauses, one connective at a time.
/// Atoms missing from `val` are false everywhere.
pub fn truth(fr: &Frame, val: &BTreeMap<String, Set>, f: &Formula) -> Set {
    let all = all_states(fr);
    match f {
        Formula::Atom(a) => val.get(a).cloned().unwrap_or_default(),
        Formula::Not(a) => all.difference(&truth(fr, val, a)).copied().collect(),
        Formula::Or(a, b) => truth(fr, val, a)
            .union(&truth(fr, val, b))
            .copied()
            .collect(),
        Formula::Believes(a) => {
            let ta = truth(fr, val, a);
            all.into_iter()
                .filter(|&s| belief(fr, s).is_subset(&ta))
                .collect()
        }
        Formula::Necessity(a) => {
            if truth(fr, val, a) == all {
                all
            } else {
                Set::new()
            }
        }
        Formula::Cond(a, b) => {
            let ta = truth(fr, val, a);
            if ta.is_empty() {
                return all;
            }
            let tb = truth(fr, val, b);
            all.into_iter()
                .filter(|&s| select(fr, s, &ta).is_subset(&tb))
                .collect()
        }
    }
}

pub fn valuation(pairs: &[(&str, &Set)]) -> BTreeMap<String, Set> {
    pairs
        .iter()
        .map(|(a, s)| (a.to_string(), (*s).clone()))
        .collect()
}
