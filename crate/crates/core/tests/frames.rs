mod common;

use common::{belief, cup, nonempty_subsets, select, subsets, Set};
use kl_core::frame::{
    check_property, enumerate_frames, frame_count, sample_frames, Event, Frame, PropertyId,
    RawFrame, Violation,
};

/// Each property restated literally over explicit sets.
fn naive(fr: &Frame, p: PropertyId) -> bool {
    let n = fr.n_states();
    let states = 0..n;
    let ne = nonempty_subsets(n);
    let all: Set = (0..n).collect();
    let pairs = || ne.iter().flat_map(|e| ne.iter().map(move |f| (e, f)));
    let inter = |a: &Set, b: &Set| -> Set { a.intersection(b).copied().collect() };
    let union = |a: &Set, b: &Set| -> Set { a.union(b).copied().collect() };
    match p {
        PropertyId::PStar2Diamond1 => states
            .clone()
            .all(|s| ne.iter().all(|e| cup(fr, s, e).is_subset(e))),
        PropertyId::PDiamond2 => states.clone().all(|s| {
            ne.iter()
                .all(|e| !belief(fr, s).is_subset(e) || cup(fr, s, e) == belief(fr, s))
        }),
        PropertyId::PStar5bDiamond3b => states.clone().all(|s| {
            ne.iter()
                .all(|e| belief(fr, s).iter().any(|&t| !select(fr, t, e).is_empty()))
        }),
        PropertyId::PStar7Diamond5 => states.clone().all(|s| {
            pairs().all(|(e, f)| {
                let ef = inter(e, f);
                if ef.is_empty() {
                    return true;
                }
                let lhs: Set = belief(fr, s)
                    .iter()
                    .flat_map(|&t| inter(&select(fr, t, e), f))
                    .collect();
                lhs.is_subset(&cup(fr, s, &ef))
            })
        }),
        PropertyId::PDiamond6w => states.clone().all(|s| {
            pairs().all(|(e, f)| {
                let (ue, uf) = (cup(fr, s, e), cup(fr, s, f));
                inter(e, f).is_empty() || !(ue.is_subset(f) && uf.is_subset(e)) || ue == uf
            })
        }),
        PropertyId::PDiamond7s => states.clone().all(|s| {
            pairs().all(|(e, f)| {
                cup(fr, s, &union(e, f)).is_subset(&union(&cup(fr, s, e), &cup(fr, s, f)))
            })
        }),
        PropertyId::PStar4 => states.clone().all(|s| {
            let b = belief(fr, s);
            ne.iter().all(|e| {
                subsets(n).iter().all(|f| {
                    let outside: Set = all.difference(e).copied().collect();
                    inter(&b, e).is_empty()
                        || !b.is_subset(&union(&outside, f))
                        || cup(fr, s, e).is_subset(f)
                })
            })
        }),
    }
}

/// Whether `p` fails at the reported state and events.
fn witness_fails(fr: &Frame, p: PropertyId, s: usize, e: &Set, f: Option<&Set>) -> bool {
    let b = belief(fr, s);
    let ue = cup(fr, s, e);
    match (p, f) {
        (PropertyId::PStar2Diamond1, None) => !ue.is_subset(e),
        (PropertyId::PDiamond2, None) => b.is_subset(e) && ue != b,
        (PropertyId::PStar5bDiamond3b, None) => ue.is_empty(),
        (PropertyId::PStar7Diamond5, Some(f)) => {
            let ef: Set = e.intersection(f).copied().collect();
            let lhs: Set = ue.intersection(f).copied().collect();
            !ef.is_empty() && !lhs.is_subset(&cup(fr, s, &ef))
        }
        (PropertyId::PDiamond6w, Some(f)) => {
            let uf = cup(fr, s, f);
            e.intersection(f).next().is_some() && ue.is_subset(f) && uf.is_subset(e) && ue != uf
        }
        (PropertyId::PDiamond7s, Some(f)) => {
            let ef: Set = e.union(f).copied().collect();
            let rhs: Set = ue.union(&cup(fr, s, f)).copied().collect();
            !cup(fr, s, &ef).is_subset(&rhs)
        }
        (PropertyId::PStar4, Some(f)) => {
            let outside: Set = (0..fr.n_states()).filter(|i| !e.contains(i)).collect();
            let allowed: Set = outside.union(f).copied().collect();
            b.intersection(e).next().is_some() && b.is_subset(&allowed) && !ue.is_subset(f)
        }
        _ => false,
    }
}

fn agree_on(frames: impl Iterator<Item = Frame>) -> usize {
    let mut count = 0;
    for fr in frames {
        count += 1;
        for p in PropertyId::ALL {
            let outcome = check_property(&fr, p);
            assert_eq!(outcome.holds(), naive(&fr, p), "{p} on {fr:?}");
            if let Some(w) = outcome.witness() {
                let f = w.f.map(common::set);
                assert!(
                    witness_fails(&fr, p, w.state, &common::set(w.e), f.as_ref()),
                    "{p} witness {w:?}"
                );
            }
        }
    }
    count
}

#[test]
fn properties_match_naive_restatement_on_all_two_state_frames() {
    assert_eq!(agree_on(enumerate_frames(2).unwrap()), 36_864);
}

#[test]
fn properties_match_naive_restatement_on_sampled_three_state_frames() {
    assert_eq!(agree_on(sample_frames(3, 300, 11)), 300);
}

#[test]
fn enumeration_is_exhaustive_and_distinct() {
    let frames: Vec<Frame> = enumerate_frames(2).unwrap().collect();
    let distinct: std::collections::HashSet<String> = frames
        .iter()
        .map(|f| serde_json::to_string(f).unwrap())
        .collect();
    // (2^n - 1)^n serial belief assignments, (2^n)^(n (2^n - 1)) tables.
    let expected = 3usize.pow(2) * 4usize.pow(2 * 3);
    assert_eq!(frames.len(), expected);
    assert_eq!(distinct.len(), expected);
    assert_eq!(frame_count(1), Some(2));
    assert_eq!(enumerate_frames(1).unwrap().count(), 2);
}

#[test]
fn success_property_is_neither_universal_nor_empty() {
    let count = enumerate_frames(2)
        .unwrap()
        .filter(|fr| check_property(fr, PropertyId::PStar2Diamond1).holds())
        .count();
    assert!(count > 0 && count < 36_864, "{count}");
}

#[test]
fn revision_preservation_implies_its_weakening() {
    // If B(s) ∩ E is non-empty then U(s,E) ⊆ B(s) ∩ E.
    for fr in enumerate_frames(2).unwrap() {
        if !check_property(&fr, PropertyId::PStar4).holds() {
            continue;
        }
        for s in 0..2 {
            for e in nonempty_subsets(2) {
                let be: Set = belief(&fr, s).intersection(&e).copied().collect();
                if !be.is_empty() {
                    assert!(cup(&fr, s, &e).is_subset(&be));
                }
            }
        }
    }
}

fn ev(n: usize, m: &[usize]) -> Event {
    Event::from_members(n, m.iter().copied()).unwrap()
}

#[test]
fn union_selection_is_a_literal_union() {
    let full = ev(2, &[0, 1]);
    let fr = Frame::from_fn(2, vec![full, ev(2, &[1])], |s, e| {
        if e == full {
            ev(2, &[s])
        } else {
            e
        }
    })
    .unwrap();
    assert_eq!(fr.union_selection(0, full).unwrap(), full);
    assert_eq!(fr.union_selection(1, full).unwrap(), ev(2, &[1]));
    assert!(fr.union_selection(0, Event::empty(2)).is_err());
}

#[test]
fn selection_relative_to_beliefs_has_success() {
    // f(s,E) = E ∩ B(s) when that is non-empty, else E.
    for fr in enumerate_frames(2).unwrap().step_by(97) {
        let b: Vec<Event> = fr.states().map(|s| fr.belief(s)).collect();
        let g = Frame::from_fn(2, b.clone(), |s, e| {
            let i = e.intersection(b[s]);
            if i.is_empty() {
                e
            } else {
                i
            }
        })
        .unwrap();
        assert!(check_property(&g, PropertyId::PStar2Diamond1).holds());
    }
}

#[test]
fn validation_lists_every_violation() {
    let ok = RawFrame {
        states: 1,
        belief: vec![vec![0]],
        selection: vec![kl_core::frame::SelectionEntry {
            s: 0,
            event: vec![0],
            value: vec![],
        }],
    };
    assert!(ok.validate().is_ok(), "normality is not required");
    let mut bad = ok.clone();
    bad.belief = vec![vec![]];
    bad.selection.clear();
    let violations = bad.validate().unwrap_err();
    assert_eq!(violations.len(), 2, "{violations:?}");
    assert!(
        violations
            .iter()
            .any(|v| matches!(v, Violation::NotSerial { state: 0 })),
        "{violations:?}"
    );
}

#[test]
fn frame_json_round_trip() {
    for fr in sample_frames(3, 50, 5) {
        let text = serde_json::to_string(&fr).unwrap();
        let back: Frame = serde_json::from_str(&text).unwrap();
        assert_eq!(back, fr);
    }
}
