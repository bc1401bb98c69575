use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Event, Frame};
use crate::Outcome;

/// Frame properties characterizing the belief-change axioms. `U(s,E)`
/// below is the union of `f(s',E)` over `s'` in `B(s)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum PropertyId {
    /// `U(s,E) ⊆ E`.
    #[serde(rename = "P_star2_diamond_1")]
    PStar2Diamond1,
    /// If `B(s) ⊆ E` then `U(s,E) = B(s)`.
    #[serde(rename = "P_diamond_2")]
    PDiamond2,
    /// `U(s,E)` is non-empty.
    #[serde(rename = "P_star5b_diamond_3b")]
    PStar5bDiamond3b,
    /// For `E ∩ F ≠ ∅`: `U(s,E) ∩ F ⊆ U(s,E∩F)`.
    #[serde(rename = "P_star7_diamond_5")]
    PStar7Diamond5,
    /// For `E ∩ F ≠ ∅`: if `U(s,E) ⊆ F` and `U(s,F) ⊆ E` then `U(s,E) = U(s,F)`.
    #[serde(rename = "P_diamond_6w")]
    PDiamond6w,
    /// For non-empty `E`, `F`: `U(s,E∪F) ⊆ U(s,E) ∪ U(s,F)`.
    #[serde(rename = "P_diamond_7s")]
    PDiamond7s,
    /// If `B(s) ∩ E ≠ ∅` and `B(s) ⊆ (S∖E) ∪ F` then `U(s,E) ⊆ F`.
    #[serde(rename = "P_star_4")]
    PStar4,
}

impl PropertyId {
    pub const ALL: [PropertyId; 7] = [
        PropertyId::PStar2Diamond1,
        PropertyId::PDiamond2,
        PropertyId::PStar5bDiamond3b,
        PropertyId::PStar7Diamond5,
        PropertyId::PDiamond6w,
        PropertyId::PDiamond7s,
        PropertyId::PStar4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::PStar2Diamond1 => "P_star2_diamond_1",
            PropertyId::PDiamond2 => "P_diamond_2",
            PropertyId::PStar5bDiamond3b => "P_star5b_diamond_3b",
            PropertyId::PStar7Diamond5 => "P_star7_diamond_5",
            PropertyId::PDiamond6w => "P_diamond_6w",
            PropertyId::PDiamond7s => "P_diamond_7s",
            PropertyId::PStar4 => "P_star_4",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PropertyId::PStar2Diamond1 => "P*2_◇1",
            PropertyId::PDiamond2 => "P◇2",
            PropertyId::PStar5bDiamond3b => "P*5b_◇3b",
            PropertyId::PStar7Diamond5 => "P*7_◇5",
            PropertyId::PDiamond6w => "P◇6w",
            PropertyId::PDiamond7s => "P◇7s",
            PropertyId::PStar4 => "P*4",
        }
    }

    /// True when the witness carries a second event `F`.
    pub fn binary(self) -> bool {
        !matches!(
            self,
            PropertyId::PStar2Diamond1 | PropertyId::PDiamond2 | PropertyId::PStar5bDiamond3b
        )
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = String;

    fn from_str(s: &str) -> Result<PropertyId, String> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name() == s || p.label() == s)
            .ok_or_else(|| format!("unknown property {s:?}"))
    }
}

/// Where a property fails: state `s` and the quantified events.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct PropertyWitness {
    pub state: usize,
    pub e: Event,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Event>,
}

/// Decides `p` on `fr` by sweeping states ascending, then `E`, then `F`, in
/// ascending bit order, returning the first failure.
pub fn check_property(fr: &Frame, p: PropertyId) -> Outcome<PropertyWitness> {
    let n = fr.n_states();
    let width = 1usize << n;
    for s in fr.states() {
        // u[bits] = U(s, E); slot 0 unused.
        let mut u = vec![Event::empty(n); width];
        for e in Event::nonempty(n) {
            u[e.bits() as usize] = fr.union_sel(s, e);
        }
        let ue = |e: Event| u[e.bits() as usize];
        let b = fr.belief(s);
        let unary = |e: Event| PropertyWitness {
            state: s,
            e,
            f: None,
        };
        let pair = |e: Event, f: Event| PropertyWitness {
            state: s,
            e,
            f: Some(f),
        };
        for e in Event::nonempty(n) {
            match p {
                PropertyId::PStar2Diamond1 => {
                    if !ue(e).is_subset(e) {
                        return Outcome::Violated(unary(e));
                    }
                }
                PropertyId::PDiamond2 => {
                    if b.is_subset(e) && ue(e) != b {
                        return Outcome::Violated(unary(e));
                    }
                }
                PropertyId::PStar5bDiamond3b => {
                    if ue(e).is_empty() {
                        return Outcome::Violated(unary(e));
                    }
                }
                PropertyId::PStar7Diamond5 => {
                    for f in Event::nonempty(n) {
                        let ef = e.intersection(f);
                        if !ef.is_empty() && !ue(e).intersection(f).is_subset(ue(ef)) {
                            return Outcome::Violated(pair(e, f));
                        }
                    }
                }
                PropertyId::PDiamond6w => {
                    for f in Event::nonempty(n) {
                        if e.intersects(f)
                            && ue(e).is_subset(f)
                            && ue(f).is_subset(e)
                            && ue(e) != ue(f)
                        {
                            return Outcome::Violated(pair(e, f));
                        }
                    }
                }
                PropertyId::PDiamond7s => {
                    for f in Event::nonempty(n) {
                        if !ue(e.union(f)).is_subset(ue(e).union(ue(f))) {
                            return Outcome::Violated(pair(e, f));
                        }
                    }
                }
                PropertyId::PStar4 => {
                    // F = {} makes the antecedent unsatisfiable, so the sweep
                    // may start at the first non-empty event.
                    for f in Event::nonempty(n) {
                        if b.intersects(e)
                            && b.is_subset(e.complement().union(f))
                            && !ue(e).is_subset(f)
                        {
                            return Outcome::Violated(pair(e, f));
                        }
                    }
                }
            }
        }
    }
    Outcome::Holds
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(n: usize, m: &[usize]) -> Event {
        Event::from_members(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn identity_like_selection_satisfies_success() {
        let belief = vec![ev(2, &[0]), ev(2, &[0, 1])];
        let b2 = belief.clone();
        let fr = Frame::from_fn(2, belief, |s, e| {
            let m = e.intersection(b2[s]);
            if m.is_empty() {
                e
            } else {
                m
            }
        })
        .unwrap();
        assert_eq!(
            check_property(&fr, PropertyId::PStar2Diamond1),
            Outcome::Holds
        );
    }

    #[test]
    fn complement_selection_escapes() {
        let full = ev(2, &[0, 1]);
        let fr = Frame::from_fn(2, vec![ev(2, &[0]), full], |_, e| e.complement()).unwrap();
        assert_eq!(
            check_property(&fr, PropertyId::PStar2Diamond1),
            Outcome::Violated(PropertyWitness {
                state: 0,
                e: ev(2, &[0]),
                f: None
            })
        );
    }

    #[test]
    fn preservation_fails_when_union_shrinks_belief() {
        let full = ev(2, &[0, 1]);
        let fr = Frame::from_fn(
            2,
            vec![full, full],
            |_, e| {
                if e == full {
                    ev(2, &[0])
                } else {
                    e
                }
            },
        )
        .unwrap();
        assert_eq!(
            check_property(&fr, PropertyId::PDiamond2),
            Outcome::Violated(PropertyWitness {
                state: 0,
                e: full,
                f: None
            })
        );
    }

    #[test]
    fn names_parse_back() {
        for p in PropertyId::ALL {
            assert_eq!(p.name().parse::<PropertyId>().unwrap(), p);
            assert_eq!(p.label().parse::<PropertyId>().unwrap(), p);
            assert_eq!(
                serde_json::to_string(&p).unwrap(),
                format!("\"{}\"", p.name())
            );
        }
    }
}
