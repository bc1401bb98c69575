//! Registry of axiom schemas and rules, their validity on frames, and the
//! harness pairing each schema with the frame property it characterizes.

mod correspond;
mod validity;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::formula::{parse, Formula, Schema};

pub use correspond::{
    correspondence_check, correspondence_pairs, run_correspondence_suite, Agreement,
    CorrespondencePair, CorrespondenceReport, PairReport, SuiteMode,
};
pub use validity::{
    formula_valid_on_frame, rule_valid_on_frame, schema_valid_on_frame, validates_logic,
    SchemaError, SchemaWitness, ValuationWitness,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum AxiomId {
    DB,
    CBox,
    CB,
    CCond,
    NB,
    AStar1Diamond0,
    AStar2Diamond1,
    ADiamond2,
    AStar5bDiamond3b,
    AStar7Diamond5,
    ADiamond6w,
    ADiamond7s,
    AStar3,
    AStar4,
    AStar8Diamond9s,
    RStar5aDiamond3a,
    RStar6Diamond4,
    CNotBoxNot,
    CBInv,
    KCond,
    RMNotBoxNot,
    NBRule,
    RMBCond,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Axiom,
    Rule,
}

/// The three logics: the base logic and its update and revision extensions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum LogicId {
    L,
    KM,
    AGM,
}

impl LogicId {
    pub const ALL: [LogicId; 3] = [LogicId::L, LogicId::KM, LogicId::AGM];

    pub fn name(self) -> &'static str {
        match self {
            LogicId::L => "L",
            LogicId::KM => "KM",
            LogicId::AGM => "AGM",
        }
    }

    /// Axioms and rules beyond the primitive rules, in registry order.
    pub fn members(self) -> Vec<AxiomId> {
        AxiomId::ALL
            .into_iter()
            .filter(|a| a.info().in_logic(self))
            .collect()
    }

    /// The axioms and rules this logic adds to the base logic.
    pub fn extension(self) -> Vec<AxiomId> {
        AxiomId::ALL
            .into_iter()
            .filter(|a| match self {
                LogicId::L => a.info().primitive_l,
                LogicId::KM => a.info().in_km,
                LogicId::AGM => a.info().in_agm,
            })
            .collect()
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LogicId {
    type Err = String;

    fn from_str(s: &str) -> Result<LogicId, String> {
        match s.trim_start_matches("L_") {
            "L" => Ok(LogicId::L),
            "KM" => Ok(LogicId::KM),
            "AGM" => Ok(LogicId::AGM),
            _ => Err(format!("unknown logic {s:?}, expected L, KM or AGM")),
        }
    }
}

/// Static description of one registry entry.
#[derive(Clone, Debug)]
pub struct AxiomInfo {
    pub id: AxiomId,
    pub kind: Kind,
    /// For axioms the schema itself; for rules the conclusion template.
    pub schema: Schema,
    /// Premise template of a rule.
    pub premise: Option<Formula>,
    /// Axiom of the base logic.
    pub primitive_l: bool,
    /// Theorem or derived rule of the base logic, justified by a script.
    pub derived_in_l: bool,
    pub in_km: bool,
    pub in_agm: bool,
}

impl AxiomInfo {
    pub fn in_logic(&self, logic: LogicId) -> bool {
        let base = self.primitive_l || self.derived_in_l;
        match logic {
            LogicId::L => base,
            LogicId::KM => base || self.in_km,
            LogicId::AGM => base || self.in_agm,
        }
    }

    pub fn template(&self) -> &Formula {
        &self.schema.template
    }
}

impl AxiomId {
    pub const ALL: [AxiomId; 23] = [
        AxiomId::DB,
        AxiomId::CBox,
        AxiomId::CB,
        AxiomId::CCond,
        AxiomId::NB,
        AxiomId::AStar1Diamond0,
        AxiomId::AStar2Diamond1,
        AxiomId::ADiamond2,
        AxiomId::AStar5bDiamond3b,
        AxiomId::AStar7Diamond5,
        AxiomId::ADiamond6w,
        AxiomId::ADiamond7s,
        AxiomId::AStar3,
        AxiomId::AStar4,
        AxiomId::AStar8Diamond9s,
        AxiomId::RStar5aDiamond3a,
        AxiomId::RStar6Diamond4,
        AxiomId::CNotBoxNot,
        AxiomId::CBInv,
        AxiomId::KCond,
        AxiomId::RMNotBoxNot,
        AxiomId::NBRule,
        AxiomId::RMBCond,
    ];

    pub fn name(self) -> &'static str {
        self.parts().0
    }

    pub fn label(self) -> &'static str {
        self.parts().1
    }

    /// (name, label, kind, premise, template, boolean-only, L axiom,
    /// derived in L, in KM, in AGM)
    #[allow(clippy::type_complexity)]
    fn parts(
        self,
    ) -> (
        &'static str,
        &'static str,
        Kind,
        Option<&'static str>,
        &'static str,
        bool,
        bool,
        bool,
        bool,
        bool,
    ) {
        use Kind::{Axiom as A, Rule as R};
        match self {
            AxiomId::DB => (
                "D_B",
                "D_B",
                A,
                None,
                "B PHI -> ~B~PHI",
                false,
                true,
                false,
                false,
                false,
            ),
            AxiomId::CBox => (
                "C_box",
                "C_□",
                A,
                None,
                "[]PHI & []PSI -> [](PHI & PSI)",
                false,
                true,
                false,
                false,
                false,
            ),
            AxiomId::CB => (
                "C_B",
                "C_B",
                A,
                None,
                "B PHI & B PSI -> B(PHI & PSI)",
                false,
                true,
                false,
                false,
                false,
            ),
            AxiomId::CCond => (
                "C_cond",
                "C_>",
                A,
                None,
                "(CHI > PHI) & (CHI > PSI) -> (CHI > (PHI & PSI))",
                false,
                true,
                false,
                false,
                false,
            ),
            AxiomId::NB => (
                "NB",
                "NB",
                A,
                None,
                "[]PHI -> B PHI",
                false,
                true,
                false,
                false,
                false,
            ),
            AxiomId::AStar1Diamond0 => (
                "A_star1_diamond_0",
                "A*1_◇0",
                A,
                None,
                "B(PHI > PSI) & B(PHI > (PSI -> CHI)) -> B(PHI > CHI)",
                false,
                false,
                true,
                true,
                true,
            ),
            AxiomId::AStar2Diamond1 => (
                "A_star2_diamond_1",
                "A*2_◇1",
                A,
                None,
                "B(PHI > PHI)",
                true,
                false,
                false,
                true,
                true,
            ),
            AxiomId::ADiamond2 => (
                "A_diamond_2",
                "A◇2",
                A,
                None,
                "B PHI -> (B PSI <-> B(PHI > PSI))",
                true,
                false,
                false,
                true,
                false,
            ),
            AxiomId::AStar5bDiamond3b => (
                "A_star5b_diamond_3b",
                "A*5b_◇3b",
                A,
                None,
                "~[]~PHI & B(PHI > PSI) -> ~B(PHI > ~PSI)",
                true,
                false,
                false,
                true,
                true,
            ),
            AxiomId::AStar7Diamond5 => (
                "A_star7_diamond_5",
                "A*7_◇5",
                A,
                None,
                "~[]~(PHI & PSI) & B((PHI & PSI) > CHI) -> B(PHI > (PSI -> CHI))",
                true,
                false,
                false,
                true,
                true,
            ),
            AxiomId::ADiamond6w => (
                "A_diamond_6w",
                "A◇6w",
                A,
                None,
                "~[]~(PHI & PSI) & B(PHI > PSI) & B(PSI > PHI) -> (B(PHI > CHI) <-> B(PSI > CHI))",
                true,
                false,
                false,
                true,
                false,
            ),
            AxiomId::ADiamond7s => (
                "A_diamond_7s",
                "A◇7s",
                A,
                None,
                "~[]~PHI & ~[]~PSI & B(PHI > CHI) & B(PSI > CHI) -> B((PHI | PSI) > CHI)",
                true,
                false,
                false,
                true,
                false,
            ),
            AxiomId::AStar3 => (
                "A_star_3",
                "A*3",
                A,
                None,
                "~[]~PHI & B(PHI > PSI) -> B(PHI -> PSI)",
                true,
                false,
                false,
                false,
                true,
            ),
            AxiomId::AStar4 => (
                "A_star_4",
                "A*4",
                A,
                None,
                "~B~PHI & B(PHI -> PSI) -> B(PHI > PSI)",
                true,
                false,
                false,
                false,
                true,
            ),
            AxiomId::AStar8Diamond9s => (
                "A_star8_diamond_9s",
                "A*8_◇9s",
                A,
                None,
                "~B(PHI > ~PSI) & B(PHI > (PSI -> CHI)) -> B((PHI & PSI) > (PSI & CHI))",
                true,
                false,
                false,
                false,
                true,
            ),
            AxiomId::RStar5aDiamond3a => (
                "R_star5a_diamond_3a",
                "R*5a_◇3a",
                R,
                Some("~PHI"),
                "B(PHI > PSI)",
                true,
                false,
                false,
                true,
                true,
            ),
            AxiomId::RStar6Diamond4 => (
                "R_star6_diamond_4",
                "R*6_◇4",
                R,
                Some("PHI <-> PSI"),
                "B(PHI > CHI) <-> B(PSI > CHI)",
                true,
                false,
                false,
                true,
                true,
            ),
            AxiomId::CNotBoxNot => (
                "C_not_box_not",
                "C_¬□¬",
                A,
                None,
                "~[]~(PHI & PSI) -> ~[]~PHI",
                false,
                false,
                true,
                false,
                false,
            ),
            AxiomId::CBInv => (
                "C_B_inv",
                "C_B_inv",
                A,
                None,
                "B(PHI & PSI) -> B PHI & B PSI",
                false,
                false,
                true,
                false,
                false,
            ),
            AxiomId::KCond => (
                "K_cond",
                "K_>",
                A,
                None,
                "(PHI > PSI) & (PHI > (PSI -> CHI)) -> (PHI > CHI)",
                false,
                false,
                true,
                false,
                false,
            ),
            AxiomId::RMNotBoxNot => (
                "RM_not_box_not",
                "RM_¬□¬",
                R,
                Some("PHI -> PSI"),
                "~[]~PHI -> ~[]~PSI",
                false,
                false,
                true,
                false,
                false,
            ),
            AxiomId::NBRule => (
                "N_B",
                "N_B",
                R,
                Some("PHI"),
                "B PHI",
                false,
                false,
                true,
                false,
                false,
            ),
            AxiomId::RMBCond => (
                "RM_B_cond",
                "RM_B>",
                R,
                Some("PHI -> PSI"),
                "B(CHI > PHI) -> B(CHI > PSI)",
                false,
                false,
                true,
                false,
                false,
            ),
        }
    }

    pub fn info(self) -> &'static AxiomInfo {
        static REGISTRY: OnceLock<Vec<AxiomInfo>> = OnceLock::new();
        let all = REGISTRY.get_or_init(|| {
            AxiomId::ALL
                .into_iter()
                .map(|id| {
                    let (name, _, kind, premise, template, boolean, prim, derived, km, agm) =
                        id.parts();
                    AxiomInfo {
                        id,
                        kind,
                        schema: Schema::new(
                            name,
                            parse(template).expect("registry template"),
                            boolean,
                        ),
                        premise: premise.map(|p| parse(p).expect("registry premise")),
                        primitive_l: prim,
                        derived_in_l: derived,
                        in_km: km,
                        in_agm: agm,
                    }
                })
                .collect()
        });
        &all[self as usize]
    }

    pub fn kind(self) -> Kind {
        self.info().kind
    }

    pub fn is_rule(self) -> bool {
        self.kind() == Kind::Rule
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<AxiomId, String> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.name() == s || a.label() == s)
            .ok_or_else(|| format!("unknown axiom or rule {s:?}"))
    }
}

impl TryFrom<String> for AxiomId {
    type Error = String;

    fn try_from(s: String) -> Result<AxiomId, String> {
        s.parse()
    }
}

impl From<AxiomId> for String {
    fn from(a: AxiomId) -> String {
        a.name().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_indexed_by_discriminant() {
        for a in AxiomId::ALL {
            assert_eq!(a.info().id, a);
            assert_eq!(a.name().parse::<AxiomId>().unwrap(), a);
            assert_eq!(a.label().parse::<AxiomId>().unwrap(), a);
            assert_eq!(a.is_rule(), a.info().premise.is_some());
        }
    }

    #[test]
    fn logic_membership() {
        assert_eq!(LogicId::KM.extension().len(), 9);
        assert_eq!(LogicId::AGM.extension().len(), 9);
        assert_eq!(LogicId::L.extension().len(), 5);
        assert!(LogicId::AGM.members().contains(&AxiomId::AStar4));
        assert!(!LogicId::KM.members().contains(&AxiomId::AStar4));
        assert!(LogicId::L.members().contains(&AxiomId::NBRule));
        assert!(!LogicId::L.members().contains(&AxiomId::ADiamond2));
    }

    #[test]
    fn boolean_flags() {
        assert!(AxiomId::ADiamond2.info().schema.boolean_only);
        assert!(!AxiomId::DB.info().schema.boolean_only);
        assert!(!AxiomId::AStar1Diamond0.info().schema.boolean_only);
    }

    #[test]
    fn serde_uses_names() {
        let s = serde_json::to_string(&AxiomId::ADiamond6w).unwrap();
        assert_eq!(s, "\"A_diamond_6w\"");
        assert_eq!(
            serde_json::from_str::<AxiomId>(&s).unwrap(),
            AxiomId::ADiamond6w
        );
    }
}
