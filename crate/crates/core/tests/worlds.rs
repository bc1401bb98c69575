mod common;

use common::{nonempty_subsets, set, Set};
use kl_core::frame::Event;
use kl_core::worlds::{
    audit_k7, audit_k9, check_lemma_k7s, check_lemma_k9s, enumerate_families, generate_family,
    Constraint, LemmaOutcome, WorldSpace, WorldUpdateFamily,
};
use proptest::prelude::*;

fn u(fam: &WorldUpdateFamily, w: usize, e: &Set) -> Set {
    set(fam
        .update(w, common::event(fam.space().n_worlds(), e))
        .unwrap())
}

fn lift(fam: &WorldUpdateFamily, k: &Set, e: &Set) -> Set {
    k.iter().flat_map(|&w| u(fam, w, e)).collect()
}

fn inter(a: &Set, b: &Set) -> Set {
    a.intersection(b).copied().collect()
}

fn union(a: &Set, b: &Set) -> Set {
    a.union(b).copied().collect()
}

fn k7_hypothesis(fam: &WorldUpdateFamily) -> bool {
    let n = fam.space().n_worlds();
    let ne = nonempty_subsets(n);
    (0..n).all(|w| {
        ne.iter().all(|e| {
            ne.iter()
                .all(|f| u(fam, w, &union(e, f)).is_subset(&union(&u(fam, w, e), &u(fam, w, f))))
        })
    })
}

fn k7_conclusion(fam: &WorldUpdateFamily) -> bool {
    let ne = nonempty_subsets(fam.space().n_worlds());
    ne.iter().all(|k| {
        ne.iter().all(|e| {
            ne.iter().all(|f| {
                lift(fam, k, &union(e, f)).is_subset(&union(&lift(fam, k, e), &lift(fam, k, f)))
            })
        })
    })
}

/// If the update meets F, updating by E ∩ F stays inside that meet.
fn k9_step(lhs: &Set, f: &Set, narrowed: &Set) -> bool {
    let meet = inter(lhs, f);
    meet.is_empty() || narrowed.is_subset(&meet)
}

fn k9_hypothesis(fam: &WorldUpdateFamily) -> bool {
    let n = fam.space().n_worlds();
    let ne = nonempty_subsets(n);
    (0..n).all(|w| {
        ne.iter().all(|e| {
            ne.iter().all(|f| {
                let ef = inter(e, f);
                ef.is_empty() || k9_step(&u(fam, w, e), f, &u(fam, w, &ef))
            })
        })
    })
}

fn k9_conclusion(fam: &WorldUpdateFamily) -> bool {
    let ne = nonempty_subsets(fam.space().n_worlds());
    ne.iter().all(|k| {
        ne.iter().all(|e| {
            ne.iter().all(|f| {
                let ef = inter(e, f);
                ef.is_empty() || k9_step(&lift(fam, k, e), f, &lift(fam, k, &ef))
            })
        })
    })
}

fn classify(hypothesis: bool, conclusion: bool) -> &'static str {
    match (hypothesis, conclusion) {
        (false, _) => "hypothesis",
        (true, true) => "holds",
        (true, false) => "conclusion",
    }
}

fn kind(o: &LemmaOutcome) -> &'static str {
    match o {
        LemmaOutcome::Holds => "holds",
        LemmaOutcome::HypothesisViolated(_) => "hypothesis",
        LemmaOutcome::ConclusionViolated(_) => "conclusion",
    }
}

fn agree(fam: &WorldUpdateFamily) {
    assert_eq!(
        kind(&check_lemma_k7s(fam)),
        classify(k7_hypothesis(fam), k7_conclusion(fam))
    );
    assert_eq!(
        kind(&check_lemma_k9s(fam)),
        classify(k9_hypothesis(fam), k9_conclusion(fam))
    );
    assert_eq!(audit_k7(fam).is_none(), k7_hypothesis(fam));
    assert_eq!(audit_k9(fam).is_none(), k9_hypothesis(fam));
}

#[test]
fn lemma_checks_match_naive_sweeps_on_every_one_atom_family() {
    let space = WorldSpace::with_atoms(1).unwrap();
    let mut count = 0;
    for fam in enumerate_families(&space).unwrap() {
        agree(&fam);
        count += 1;
    }
    // 2 worlds, 3 non-empty inputs each, 4 possible results per entry.
    assert_eq!(count, 4usize.pow(2 * 3));
}

#[test]
fn lemma_checks_match_naive_sweeps_on_two_atom_families() {
    let space = WorldSpace::with_atoms(2).unwrap();
    for seed in 0..20 {
        for c in [Constraint::None, Constraint::K7, Constraint::K9] {
            agree(&generate_family(&space, seed, c).unwrap());
        }
    }
}

#[test]
fn generated_families_satisfy_their_hypothesis() {
    let space = WorldSpace::with_atoms(2).unwrap();
    for seed in 100..200 {
        assert!(k7_hypothesis(
            &generate_family(&space, seed, Constraint::K7).unwrap()
        ));
        assert!(k9_hypothesis(
            &generate_family(&space, seed, Constraint::K9).unwrap()
        ));
    }
    let a = generate_family(&space, 7, Constraint::K9).unwrap();
    assert_eq!(a, generate_family(&space, 7, Constraint::K9).unwrap());
}

/// Minimal worlds under a per-world ranking.
fn ranked(ranks: Vec<Vec<u32>>) -> WorldUpdateFamily {
    let space = WorldSpace::with_atoms(2).unwrap();
    WorldUpdateFamily::from_fn(space, |w, e| {
        let best = e.members().map(|v| ranks[w][v]).min().unwrap();
        Event::from_members(4, e.members().filter(|&v| ranks[w][v] == best)).unwrap()
    })
}

#[test]
fn conjunction_lifting_fails_on_a_ranked_family() {
    let fam = ranked(vec![
        vec![0, 1, 1, 1],
        vec![1, 0, 1, 1],
        vec![2, 1, 0, 3],
        vec![1, 1, 1, 0],
    ]);
    assert!(k9_hypothesis(&fam));
    let (k, e, f): (Set, Set, Set) = ([0, 2].into(), [0, 1, 2].into(), [0, 1].into());
    assert_eq!(inter(&lift(&fam, &k, &e), &f), Set::from([0]));
    assert_eq!(lift(&fam, &k, &inter(&e, &f)), Set::from([0, 1]));
    assert!(!k9_conclusion(&fam));
    assert!(matches!(
        check_lemma_k9s(&fam),
        LemmaOutcome::ConclusionViolated(_)
    ));
    assert!(k7_hypothesis(&fam) && k7_conclusion(&fam));
}

#[test]
fn singleton_belief_sets_lift_to_the_world_update() {
    let fam = generate_family(&WorldSpace::with_atoms(2).unwrap(), 3, Constraint::None).unwrap();
    for w in 0..4 {
        for e in Event::nonempty(4) {
            assert_eq!(
                fam.lift_update(Event::singleton(4, w), e).unwrap(),
                fam.update(w, e).unwrap()
            );
        }
    }
    assert!(fam.lift_update(Event::empty(4), Event::full(4)).is_err());
    assert!(fam.lift_update(Event::full(4), Event::empty(4)).is_err());
}

#[test]
fn family_json_round_trip() {
    let fam = generate_family(&WorldSpace::with_atoms(3).unwrap(), 1, Constraint::K7).unwrap();
    let text = serde_json::to_string(&fam).unwrap();
    let back: WorldUpdateFamily = serde_json::from_str(&text).unwrap();
    assert_eq!(back, fam);
}

proptest! {
    #[test]
    fn lifting_distributes_over_unions(seed in any::<u64>(), k1 in 1u64..16, k2 in 1u64..16, e in 1u64..16) {
        let fam = generate_family(&WorldSpace::with_atoms(2).unwrap(), seed, Constraint::None).unwrap();
        let [k1, k2, e] = [k1, k2, e].map(|b| Event::from_bits(4, b).unwrap());
        let whole = fam.lift_update(k1.union(k2), e).unwrap();
        prop_assert_eq!(whole, fam.lift_update(k1, e).unwrap().union(fam.lift_update(k2, e).unwrap()));
        prop_assert_eq!(set(whole), lift(&fam, &set(k1.union(k2)), &set(e)));
    }
}
