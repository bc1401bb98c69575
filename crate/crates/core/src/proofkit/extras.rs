use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CheckFailure, Checker, Justification, Label, Logic, ProofScript, Registry};
use crate::frame::{check_property, enumerate_frames, Frame, PropertyId};
use crate::schema::{formula_valid_on_frame, validates_logic, AxiomId, LogicId, ValuationWitness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum Route {
    /// Shared by both logics.
    Identity,
    Derived {
        script: String,
        lines: usize,
    },
    Missing,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentItem {
    pub axiom: AxiomId,
    pub route: Route,
    pub ok: bool,
    pub failure: Option<CheckFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentReport {
    pub logic: String,
    pub items: Vec<ContainmentItem>,
}

impl ContainmentReport {
    pub fn all_ok(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }
}

/// Accounts for each axiom and rule of the update logic inside `logic`
/// (normally the revision logic): either it is shared, or its registered
/// derivation checks.
pub fn verify_containment(registry: &Registry, logic: Logic) -> ContainmentReport {
    let checker = Checker::new(registry, logic.clone());
    let items = LogicId::KM
        .extension()
        .into_iter()
        .map(|axiom| {
            if logic.is_primitive(axiom) {
                return ContainmentItem {
                    axiom,
                    route: Route::Identity,
                    ok: true,
                    failure: None,
                };
            }
            match registry.get(axiom.name()) {
                None => ContainmentItem {
                    axiom,
                    route: Route::Missing,
                    ok: false,
                    failure: None,
                },
                Some(script) => {
                    let route = Route::Derived {
                        script: script.id.clone(),
                        lines: script.lines.len(),
                    };
                    let result = checker.check_registered(axiom.name());
                    ContainmentItem {
                        axiom,
                        route,
                        ok: result.is_ok(),
                        failure: result.err(),
                    }
                }
            }
        })
        .collect();
    ContainmentReport {
        logic: logic.to_string(),
        items,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    /// Remove the line at this position.
    Delete(usize),
    /// Exchange the lines at these positions.
    Swap(usize, usize),
}

/// Every single-line deletion and every exchange of two lines.
pub fn mutations(script: &ProofScript) -> impl Iterator<Item = (Mutation, ProofScript)> + '_ {
    let n = script.lines.len();
    let deletes = (0..n).map(Mutation::Delete);
    let swaps = (0..n).flat_map(move |i| (i + 1..n).map(move |j| Mutation::Swap(i, j)));
    deletes.chain(swaps).map(move |m| {
        let mut s = script.clone();
        match m {
            Mutation::Delete(i) => {
                s.lines.remove(i);
            }
            Mutation::Swap(i, j) => s.lines.swap(i, j),
        }
        (m, s)
    })
}

/// Properties every frame of `logic` must have.
fn logic_properties(logic: LogicId) -> Vec<PropertyId> {
    use PropertyId::*;
    match logic {
        LogicId::L => vec![],
        LogicId::KM => vec![
            PStar2Diamond1,
            PDiamond2,
            PStar5bDiamond3b,
            PStar7Diamond5,
            PDiamond6w,
            PDiamond7s,
        ],
        LogicId::AGM => vec![PStar2Diamond1, PStar5bDiamond3b, PStar7Diamond5, PStar4],
    }
}

/// Up to `count` two-state frames with the properties of `logic` on which
/// every axiom and rule of `logic` is valid, chosen by `seed`.
pub fn logic_frames(logic: LogicId, count: usize, seed: u64) -> Vec<Frame> {
    let props = logic_properties(logic);
    let pool: Vec<Frame> = enumerate_frames(2)
        .expect("two-state frames are enumerable")
        .filter(|fr| props.iter().all(|&p| check_property(fr, p).holds()))
        .filter(|fr| validates_logic(fr, logic))
        .collect();
    if pool.len() <= count {
        return pool;
    }
    let mut picked = sample(&mut ChaCha8Rng::seed_from_u64(seed), pool.len(), count).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| pool[i].clone()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SoundnessFailure {
    pub script: String,
    pub label: Label,
    pub frame: Frame,
    pub witness: ValuationWitness,
}

/// Checks that each line not resting on a hypothesis is valid on every
/// frame in `frames`. Returns the number of lines checked.
pub fn soundness_spot_check(
    script: &ProofScript,
    frames: &[Frame],
) -> Result<usize, SoundnessFailure> {
    let mut from_hyp: BTreeSet<Label> = BTreeSet::new();
    let mut checked = 0;
    for line in &script.lines {
        let tainted = line.justification == Justification::Hypothesis
            || line
                .justification
                .references()
                .iter()
                .any(|r| from_hyp.contains(r));
        if tainted {
            from_hyp.insert(line.label);
            continue;
        }
        for fr in frames {
            if let Some(w) = formula_valid_on_frame(fr, &line.formula).witness() {
                return Err(SoundnessFailure {
                    script: script.id.clone(),
                    label: line.label,
                    frame: fr.clone(),
                    witness: w.clone(),
                });
            }
        }
        checked += 1;
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofkit::{builtin_registry, Reason};

    #[test]
    fn update_logic_is_contained_in_revision_logic() {
        let r = builtin_registry();
        let report = verify_containment(&r, Logic::new(LogicId::AGM));
        assert_eq!(report.items.len(), 9);
        assert!(report.all_ok(), "{report:?}");
        let pres = report
            .items
            .iter()
            .find(|i| i.axiom == AxiomId::ADiamond2)
            .unwrap();
        assert_eq!(
            pres.route,
            Route::Derived {
                script: "A_diamond_2".into(),
                lines: 19
            }
        );
    }

    #[test]
    fn containment_depends_on_preservation_axiom() {
        let r = builtin_registry();
        let report = verify_containment(&r, Logic::new(LogicId::AGM).without(AxiomId::AStar4));
        let pres = report
            .items
            .iter()
            .find(|i| i.axiom == AxiomId::ADiamond2)
            .unwrap();
        let failure = pres.failure.as_ref().expect("derivation must fail");
        assert_eq!(failure.label, Some(5));
        assert!(matches!(
            failure.reason,
            Reason::NotInLogic {
                id: AxiomId::AStar4,
                ..
            }
        ));
    }

    #[test]
    fn mutation_count() {
        let r = builtin_registry();
        let s = r.get("A_star_3").unwrap();
        assert_eq!(mutations(s).count(), 11 + 55);
    }
}
