use serde::Serialize;

use super::{schema_valid_on_frame, AxiomId};
use crate::frame::{
    check_property, enumerate_frames, sample_frames, Frame, FrameError, PropertyId,
};

/// A schema and the frame property it characterizes. `property: None`
/// marks a schema valid on every frame.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct CorrespondencePair {
    pub axiom: AxiomId,
    pub property: Option<PropertyId>,
}

pub fn correspondence_pairs() -> [CorrespondencePair; 8] {
    let pair = |axiom, property| CorrespondencePair { axiom, property };
    [
        pair(AxiomId::AStar1Diamond0, None),
        pair(AxiomId::AStar2Diamond1, Some(PropertyId::PStar2Diamond1)),
        pair(AxiomId::ADiamond2, Some(PropertyId::PDiamond2)),
        pair(
            AxiomId::AStar5bDiamond3b,
            Some(PropertyId::PStar5bDiamond3b),
        ),
        pair(AxiomId::AStar7Diamond5, Some(PropertyId::PStar7Diamond5)),
        pair(AxiomId::ADiamond6w, Some(PropertyId::PDiamond6w)),
        pair(AxiomId::ADiamond7s, Some(PropertyId::PDiamond7s)),
        pair(AxiomId::AStar4, Some(PropertyId::PStar4)),
    ]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Agreement {
    pub property_holds: bool,
    pub axiom_valid: bool,
    pub agree: bool,
}

/// Evaluates both sides of a pair on one frame.
pub fn correspondence_check(fr: &Frame, pair: CorrespondencePair) -> Agreement {
    let property_holds = pair.property.is_none_or(|p| check_property(fr, p).holds());
    let axiom_valid = schema_valid_on_frame(fr, pair.axiom)
        .expect("paired ids are schemas")
        .holds();
    Agreement {
        property_holds,
        axiom_valid,
        agree: property_holds == axiom_valid,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SuiteMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub axiom: AxiomId,
    pub property: Option<PropertyId>,
    pub property_count: u64,
    pub axiom_count: u64,
    pub disagreements: Vec<Frame>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub states: usize,
    pub mode: SuiteMode,
    pub frames: u64,
    pub pairs: Vec<PairReport>,
    /// A frame validating the update preservation schema but not the
    /// revision schema `A*4`, when both pairs were run.
    pub strictness_witness: Option<Frame>,
}

impl CorrespondenceReport {
    pub fn disagreement_count(&self) -> usize {
        self.pairs.iter().map(|p| p.disagreements.len()).sum()
    }
}

/// Runs `pairs` over every frame on `n` states, or over a seeded sample.
pub fn run_correspondence_suite(
    n: usize,
    mode: SuiteMode,
    pairs: &[CorrespondencePair],
) -> Result<CorrespondenceReport, FrameError> {
    let frames: Box<dyn Iterator<Item = Frame>> = match mode {
        SuiteMode::Exhaustive => Box::new(enumerate_frames(n)?),
        SuiteMode::Sampled { count, seed } => Box::new(sample_frames(n, count, seed)),
    };
    let mut reports: Vec<PairReport> = pairs
        .iter()
        .map(|p| PairReport {
            axiom: p.axiom,
            property: p.property,
            property_count: 0,
            axiom_count: 0,
            disagreements: Vec::new(),
        })
        .collect();
    let preservation = pairs.iter().position(|p| p.axiom == AxiomId::ADiamond2);
    let revision = pairs.iter().position(|p| p.axiom == AxiomId::AStar4);
    let mut strictness_witness = None;
    let mut count = 0u64;
    let mut valid = vec![false; pairs.len()];
    for fr in frames {
        count += 1;
        for (i, pair) in pairs.iter().enumerate() {
            let a = correspondence_check(&fr, *pair);
            let r = &mut reports[i];
            r.property_count += a.property_holds as u64;
            r.axiom_count += a.axiom_valid as u64;
            if !a.agree {
                r.disagreements.push(fr.clone());
            }
            valid[i] = a.axiom_valid;
        }
        if strictness_witness.is_none() {
            if let (Some(p), Some(r)) = (preservation, revision) {
                if valid[p] && !valid[r] {
                    strictness_witness = Some(fr.clone());
                }
            }
        }
    }
    Ok(CorrespondenceReport {
        states: n,
        mode,
        frames: count,
        pairs: reports,
        strictness_witness,
    })
}
