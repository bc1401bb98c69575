//! The update axioms checked two ways: with formulas replaced by their truth
//! sets (the canonical check), and literally over formulas, with `phi`,
//! `psi`, `chi` ranging over the characteristic formulas of all events.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Model, ModelError, Program};
use crate::formula::{is_tautology, Formula};
use crate::frame::{Event, Frame};
use crate::Outcome;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum KmAxiom {
    /// `K * phi` is deductively closed.
    #[serde(rename = "K_diamond_0")]
    K0,
    /// `phi ∈ K * phi`.
    #[serde(rename = "K_diamond_1")]
    K1,
    /// If `phi ∈ K` then `K * phi = K`.
    #[serde(rename = "K_diamond_2")]
    K2,
    /// If `~phi` is not a tautology then `K * phi` is consistent.
    #[serde(rename = "K_diamond_3b")]
    K3b,
    /// Equivalent inputs yield equal results.
    #[serde(rename = "K_diamond_4")]
    K4,
    /// `K * (phi & psi) ⊆ (K * phi) + psi`.
    #[serde(rename = "K_diamond_5")]
    K5,
    /// If `psi ∈ K * phi`, `phi ∈ K * psi` and `phi & psi` is consistent then
    /// `K * phi = K * psi`.
    #[serde(rename = "K_diamond_6w")]
    K6w,
    /// `(K * phi) ∩ (K * psi) ⊆ K * (phi | psi)`.
    #[serde(rename = "K_diamond_7s")]
    K7s,
}

impl KmAxiom {
    pub const ALL: [KmAxiom; 8] = [
        KmAxiom::K0,
        KmAxiom::K1,
        KmAxiom::K2,
        KmAxiom::K3b,
        KmAxiom::K4,
        KmAxiom::K5,
        KmAxiom::K6w,
        KmAxiom::K7s,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KmAxiom::K0 => "K_diamond_0",
            KmAxiom::K1 => "K_diamond_1",
            KmAxiom::K2 => "K_diamond_2",
            KmAxiom::K3b => "K_diamond_3b",
            KmAxiom::K4 => "K_diamond_4",
            KmAxiom::K5 => "K_diamond_5",
            KmAxiom::K6w => "K_diamond_6w",
            KmAxiom::K7s => "K_diamond_7s",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            KmAxiom::K0 => "K◇0",
            KmAxiom::K1 => "K◇1",
            KmAxiom::K2 => "K◇2",
            KmAxiom::K3b => "K◇3b",
            KmAxiom::K4 => "K◇4",
            KmAxiom::K5 => "K◇5",
            KmAxiom::K6w => "K◇6w",
            KmAxiom::K7s => "K◇7s",
        }
    }
}

impl fmt::Display for KmAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KmAxiom {
    type Err = String;

    fn from_str(s: &str) -> Result<KmAxiom, String> {
        KmAxiom::ALL
            .into_iter()
            .find(|a| a.name() == s || a.label() == s)
            .ok_or_else(|| format!("unknown KM axiom {s:?}"))
    }
}

/// Input events at which an axiom fails.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct KmWitness {
    pub e: Event,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Event>,
}

/// Event-level check at state `s`. `K◇0` and `K◇4` hold by construction,
/// since the update result depends only on the input's truth set.
pub fn check_km_axiom(m: &Model, s: usize, a: KmAxiom) -> Result<Outcome<KmWitness>, ModelError> {
    m.check_state(s)?;
    let fr = m.frame();
    let n = fr.n_states();
    let u = |e: Event| m.update_event(s, e).expect("non-empty input");
    let b = fr.belief(s);
    let one = |e| Outcome::Violated(KmWitness { e, f: None });
    let two = |e, f| Outcome::Violated(KmWitness { e, f: Some(f) });
    for e in Event::nonempty(n) {
        match a {
            KmAxiom::K0 | KmAxiom::K4 => return Ok(Outcome::Holds),
            KmAxiom::K1 => {
                if !u(e).is_subset(e) {
                    return Ok(one(e));
                }
            }
            KmAxiom::K2 => {
                if b.is_subset(e) && u(e) != b {
                    return Ok(one(e));
                }
            }
            KmAxiom::K3b => {
                if u(e).is_empty() {
                    return Ok(one(e));
                }
            }
            KmAxiom::K5 => {
                for f in Event::nonempty(n) {
                    let both = e.intersection(f);
                    // (K*phi)+psi has event U(E) ∩ F; inclusion of belief
                    // sets reverses into inclusion of events.
                    if !both.is_empty() && !u(e).intersection(f).is_subset(u(both)) {
                        return Ok(two(e, f));
                    }
                }
            }
            KmAxiom::K6w => {
                for f in Event::nonempty(n) {
                    if e.intersects(f) && u(e).is_subset(f) && u(f).is_subset(e) && u(e) != u(f) {
                        return Ok(two(e, f));
                    }
                }
            }
            KmAxiom::K7s => {
                for f in Event::nonempty(n) {
                    if !u(e.union(f)).is_subset(u(e).union(u(f))) {
                        return Ok(two(e, f));
                    }
                }
            }
        }
    }
    Ok(Outcome::Holds)
}

/// Where a formula-level check fails: the events whose characteristic
/// formulas were substituted for `phi`, `psi`, `chi`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FormulaWitness {
    pub phi: Event,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Event>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<Event>,
    /// The instance that fails, e.g. `B(p > q)` for `K◇1`.
    pub statement: String,
}

/// Formula-level checker for one valuation; reusable across every frame
/// with the same number of states.
pub struct KmFormulaChecker {
    n: usize,
    width: usize,
    chars: Vec<Formula>,
    program: Program,
    atom_values: Vec<Event>,
    dom: Vec<usize>,
    bel: Vec<usize>,
    mem: Vec<usize>,
    mem_top: Vec<usize>,
    mem_imp: Vec<usize>,
    conj_dom: Vec<usize>,
    conj_mem: Vec<usize>,
    disj_mem: Vec<usize>,
    /// For each `phi`, the slots of `B(alt > chi)` (indexed by `chi`) for
    /// every listed alternative `alt` with `phi <-> alt` a tautology.
    equivalents: Vec<Vec<(Formula, Vec<usize>)>>,
}

/// Truth sets of a [`KmFormulaChecker`] on one frame.
pub struct Evaluated<'a> {
    checker: &'a KmFormulaChecker,
    truth: Vec<Event>,
}

impl KmFormulaChecker {
    /// Uses `model`'s valuation, which must separate its states.
    pub fn new(model: &Model) -> Result<KmFormulaChecker, ModelError> {
        let n = model.frame().n_states();
        let width = 1usize << n;
        let chars: Vec<Formula> = Event::all(n)
            .map(|e| model.characteristic_formula(e))
            .collect::<Result<_, _>>()?;
        let mut p = Program::new();
        let c = &chars;
        let mut dom = Vec::new();
        let mut bel = Vec::new();
        let mut mem_top = Vec::new();
        let mut mem = Vec::new();
        let mut conj_dom = Vec::new();
        let mut mem_imp = Vec::new();
        let mut conj_mem = Vec::new();
        let mut disj_mem = Vec::new();
        let b_cond = |a: Formula, b: Formula| Formula::believes(Formula::cond(a, b));
        for e in 0..width {
            dom.push(p.add(&Formula::possibly(c[e].clone())));
            bel.push(p.add(&Formula::believes(c[e].clone())));
            mem_top.push(p.add(&b_cond(c[e].clone(), Formula::top())));
            for f in 0..width {
                mem.push(p.add(&b_cond(c[e].clone(), c[f].clone())));
                let conj = Formula::and(c[e].clone(), c[f].clone());
                conj_dom.push(p.add(&Formula::possibly(conj.clone())));
                for g in 0..width {
                    let imp = Formula::implies(c[f].clone(), c[g].clone());
                    mem_imp.push(p.add(&b_cond(c[e].clone(), imp)));
                    conj_mem.push(p.add(&b_cond(conj.clone(), c[g].clone())));
                    let disj = Formula::or(c[e].clone(), c[f].clone());
                    disj_mem.push(p.add(&b_cond(disj, c[g].clone())));
                }
            }
        }
        let mut equivalents = Vec::new();
        for e in 0..width {
            let mut alts: Vec<Formula> = (0..width)
                .map(|f| c[f].clone())
                .filter(|alt| {
                    is_tautology(&Formula::iff(c[e].clone(), alt.clone())).expect("few atoms")
                })
                .collect();
            alts.push(Formula::not(Formula::not(c[e].clone())));
            let rows = alts
                .into_iter()
                .map(|alt| {
                    let slots = (0..width)
                        .map(|g| p.add(&b_cond(alt.clone(), c[g].clone())))
                        .collect();
                    (alt, slots)
                })
                .collect();
            equivalents.push(rows);
        }
        let atom_values = model.atom_values(&p)?;
        Ok(KmFormulaChecker {
            n,
            width,
            chars,
            program: p,
            atom_values,
            dom,
            bel,
            mem,
            mem_top,
            mem_imp,
            conj_dom,
            conj_mem,
            disj_mem,
            equivalents,
        })
    }

    pub fn characteristic(&self, e: Event) -> &Formula {
        &self.chars[e.bits() as usize]
    }

    /// Evaluates every compiled formula on `frame` under the checker's
    /// valuation.
    pub fn evaluate(&self, frame: &Frame) -> Evaluated<'_> {
        assert_eq!(
            frame.n_states(),
            self.n,
            "frame size differs from valuation"
        );
        Evaluated {
            checker: self,
            truth: self.program.eval(frame, &self.atom_values),
        }
    }
}

impl Evaluated<'_> {
    fn at(&self, slot: usize, s: usize) -> bool {
        self.truth[slot].contains(s)
    }

    fn ev(&self, i: usize) -> Event {
        Event::from_bits(self.checker.n, i as u64).unwrap()
    }

    /// Checks axiom `a` at state `s`, quantifying `phi`, `psi`, `chi` over all
    /// characteristic formulas in ascending event order.
    pub fn check(&self, s: usize, a: KmAxiom) -> Outcome<FormulaWitness> {
        (0..self.checker.width)
            .find_map(|e| self.first_failure(s, a, e, None))
            .map_or(Outcome::Holds, Outcome::Violated)
    }

    /// Whether the instance with `phi` and (for binary axioms) `psi` fixed
    /// holds for every remaining choice.
    pub fn instance_holds(&self, s: usize, a: KmAxiom, e: Event, f: Option<Event>) -> bool {
        self.first_failure(s, a, e.bits() as usize, f.map(|f| f.bits() as usize))
            .is_none()
    }

    fn first_failure(
        &self,
        s: usize,
        a: KmAxiom,
        e: usize,
        fixed_f: Option<usize>,
    ) -> Option<FormulaWitness> {
        let c = self.checker;
        let w = c.width;
        let chars = &c.chars;
        let fs: Vec<usize> = match fixed_f {
            Some(f) => vec![f],
            None => (0..w).collect(),
        };
        let wit = |f: Option<usize>, g: Option<usize>, statement: String| FormulaWitness {
            phi: self.ev(e),
            psi: f.map(|f| self.ev(f)),
            chi: g.map(|g| self.ev(g)),
            statement,
        };
        let bc = |a: &Formula, b: &Formula| Formula::believes(Formula::cond(a.clone(), b.clone()));
        let in_domain = self.at(c.dom[e], s);
        match a {
            KmAxiom::K0 => {
                if !in_domain {
                    return None;
                }
                if !self.at(c.mem_top[e], s) {
                    return Some(wit(None, None, bc(&chars[e], &Formula::top()).to_string()));
                }
                for f in fs {
                    for g in 0..w {
                        let closed = !self.at(c.mem[e * w + f], s)
                            || !self.at(c.mem_imp[(e * w + f) * w + g], s)
                            || self.at(c.mem[e * w + g], s);
                        if !closed {
                            return Some(wit(
                                Some(f),
                                Some(g),
                                bc(&chars[e], &chars[g]).to_string(),
                            ));
                        }
                    }
                }
                None
            }
            KmAxiom::K1 => (in_domain && !self.at(c.mem[e * w + e], s))
                .then(|| wit(None, None, bc(&chars[e], &chars[e]).to_string())),
            KmAxiom::K2 => {
                if !self.at(c.bel[e], s) {
                    return None;
                }
                (0..w)
                    .find(|&g| self.at(c.bel[g], s) != self.at(c.mem[e * w + g], s))
                    .map(|g| {
                        let st = Formula::iff(
                            Formula::believes(chars[g].clone()),
                            bc(&chars[e], &chars[g]),
                        );
                        wit(None, Some(g), st.to_string())
                    })
            }
            KmAxiom::K3b => {
                let consistent = (0..w).any(|g| !self.at(c.mem[e * w + g], s));
                (in_domain && !consistent).then(|| {
                    wit(
                        None,
                        None,
                        Formula::not(bc(&chars[e], &Formula::bottom())).to_string(),
                    )
                })
            }
            KmAxiom::K4 => {
                if !in_domain {
                    return None;
                }
                for (alt, slots) in &c.equivalents[e] {
                    for g in 0..w {
                        if self.at(c.mem[e * w + g], s) != self.at(slots[g], s) {
                            let st = Formula::iff(bc(&chars[e], &chars[g]), bc(alt, &chars[g]));
                            return Some(wit(None, Some(g), st.to_string()));
                        }
                    }
                }
                None
            }
            KmAxiom::K5 => {
                for f in fs {
                    if !self.at(c.conj_dom[e * w + f], s) {
                        continue;
                    }
                    for g in 0..w {
                        let i = (e * w + f) * w + g;
                        if self.at(c.conj_mem[i], s) && !self.at(c.mem_imp[i], s) {
                            let st = bc(
                                &chars[e],
                                &Formula::implies(chars[f].clone(), chars[g].clone()),
                            );
                            return Some(wit(Some(f), Some(g), st.to_string()));
                        }
                    }
                }
                None
            }
            KmAxiom::K6w => {
                for f in fs {
                    let hyp = self.at(c.conj_dom[e * w + f], s)
                        && self.at(c.mem[e * w + f], s)
                        && self.at(c.mem[f * w + e], s);
                    if !hyp {
                        continue;
                    }
                    for g in 0..w {
                        if self.at(c.mem[e * w + g], s) != self.at(c.mem[f * w + g], s) {
                            let st =
                                Formula::iff(bc(&chars[e], &chars[g]), bc(&chars[f], &chars[g]));
                            return Some(wit(Some(f), Some(g), st.to_string()));
                        }
                    }
                }
                None
            }
            KmAxiom::K7s => {
                if !in_domain {
                    return None;
                }
                for f in fs {
                    if !self.at(c.dom[f], s) {
                        continue;
                    }
                    for g in 0..w {
                        let joint = self.at(c.mem[e * w + g], s) && self.at(c.mem[f * w + g], s);
                        if joint && !self.at(c.disj_mem[(e * w + f) * w + g], s) {
                            let disj = Formula::or(chars[e].clone(), chars[f].clone());
                            return Some(wit(Some(f), Some(g), bc(&disj, &chars[g]).to_string()));
                        }
                    }
                }
                None
            }
        }
    }
}

/// Formula-level check of `a` at state `s` of `m`.
pub fn check_km_axiom_formula_level(
    m: &Model,
    s: usize,
    a: KmAxiom,
) -> Result<Outcome<FormulaWitness>, ModelError> {
    m.check_state(s)?;
    let checker = KmFormulaChecker::new(m)?;
    Ok(checker.evaluate(m.frame()).check(s, a))
}

/// Formula-level instance of `a` at the given input events.
pub fn km_instance_holds(
    m: &Model,
    s: usize,
    a: KmAxiom,
    e: Event,
    f: Option<Event>,
) -> Result<bool, ModelError> {
    m.check_state(s)?;
    let checker = KmFormulaChecker::new(m)?;
    Ok(checker.evaluate(m.frame()).instance_holds(s, a, e, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(n: usize, m: &[usize]) -> Event {
        Event::from_members(n, m.iter().copied()).unwrap()
    }

    fn model(fr: Frame) -> Model {
        Model::new(fr, [("p".to_string(), ev(2, &[0]))].into()).unwrap()
    }

    #[test]
    fn success_holds_on_identity_frames() {
        let m = model(Frame::from_fn(2, vec![Event::full(2); 2], |_, e| e).unwrap());
        for a in KmAxiom::ALL {
            if a != KmAxiom::K2 {
                assert!(check_km_axiom(&m, 0, a).unwrap().holds(), "{a}");
            }
        }
    }

    #[test]
    fn preservation_failure_is_found_both_ways() {
        let full = Event::full(2);
        let fr = Frame::from_fn(
            2,
            vec![full, full],
            |_, e| if e == full { ev(2, &[0]) } else { e },
        )
        .unwrap();
        let m = model(fr);
        let event = check_km_axiom(&m, 0, KmAxiom::K2).unwrap();
        assert_eq!(event, Outcome::Violated(KmWitness { e: full, f: None }));
        let formula = check_km_axiom_formula_level(&m, 0, KmAxiom::K2).unwrap();
        assert!(!formula.holds());
        assert!(!km_instance_holds(&m, 0, KmAxiom::K2, full, None).unwrap());
    }

    #[test]
    fn denotation_determined_axioms_always_hold() {
        let fr = Frame::from_fn(2, vec![Event::full(2); 2], |_, _| Event::empty(2)).unwrap();
        let m = model(fr);
        assert!(check_km_axiom(&m, 1, KmAxiom::K4).unwrap().holds());
        assert!(check_km_axiom(&m, 1, KmAxiom::K0).unwrap().holds());
        assert!(check_km_axiom_formula_level(&m, 1, KmAxiom::K4)
            .unwrap()
            .holds());
        assert!(check_km_axiom_formula_level(&m, 1, KmAxiom::K0)
            .unwrap()
            .holds());
        assert!(!check_km_axiom(&m, 1, KmAxiom::K3b).unwrap().holds());
    }
}
