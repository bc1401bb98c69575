//! Hilbert-style proofs for the base logic and its update and revision
//! extensions.
//!
//! A script is plain text:
//!
//! ```text
//! id: C_B_inv
//! logic: L
//! target: B(PHI & PSI) -> B PHI & B PSI
//! 1. PHI & PSI -> PHI ; taut
//! 2. B(PHI & PSI) -> B PHI ; rm_b 1
//! 3. PHI & PSI -> PSI ; taut
//! 4. B(PHI & PSI) -> B PSI ; rm_b 3
//! 5. B(PHI & PSI) -> B PHI & B PSI ; pl 2,4
//! ```
//!
//! Scripts for derived rules also carry `premise: <formula>` and may cite it
//! with `hyp`. A file may hold several scripts, each opened by `id:`.

mod builtin;
mod check;
mod extras;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{parse, Binding, Formula, MetaVar};
use crate::schema::{AxiomId, LogicId};

pub use builtin::{builtin_registry, builtin_scripts};
pub use check::{CheckFailure, Checker, Dependencies, Logic, Reason, Registry};
pub use extras::{
    logic_frames, mutations, soundness_spot_check, verify_containment, ContainmentItem,
    ContainmentReport, Mutation, Route, SoundnessFailure,
};

pub type Label = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Instance of a classical tautology, modal subformulas read as atoms.
    Tautology,
    /// The premise of a derived-rule script.
    Hypothesis,
    AxiomInstance {
        id: AxiomId,
        binding: Binding,
    },
    /// `implication` is `antecedent -> current`.
    ModusPonens {
        antecedent: Label,
        implication: Label,
    },
    NecBox {
        line: Label,
    },
    NecCond {
        line: Label,
        antecedent: Formula,
    },
    RmBox {
        line: Label,
    },
    RmB {
        line: Label,
    },
    RmCond {
        line: Label,
        antecedent: Formula,
    },
    DerivedRule {
        id: AxiomId,
        line: Label,
    },
    PriorLemma {
        script: String,
        binding: Binding,
    },
    /// Propositional consequence of the cited lines.
    Pl {
        lines: Vec<Label>,
    },
}

impl Justification {
    /// Lines this justification cites.
    pub fn references(&self) -> Vec<Label> {
        use Justification::*;
        match self {
            Tautology | Hypothesis | AxiomInstance { .. } | PriorLemma { .. } => Vec::new(),
            ModusPonens {
                antecedent,
                implication,
            } => vec![*antecedent, *implication],
            NecBox { line }
            | NecCond { line, .. }
            | RmBox { line }
            | RmB { line }
            | RmCond { line, .. }
            | DerivedRule { line, .. } => vec![*line],
            Pl { lines } => lines.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub label: Label,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub id: String,
    pub logic: LogicId,
    pub target: Formula,
    pub premise: Option<Formula>,
    pub lines: Vec<ProofLine>,
}

impl ProofScript {
    pub fn parse(text: &str) -> Result<ProofScript, ScriptParseError> {
        let mut all = parse_scripts(text)?;
        match all.len() {
            1 => Ok(all.pop().unwrap()),
            n => Err(ScriptParseError {
                line: 0,
                message: format!("expected one script, found {n}"),
            }),
        }
    }

    pub fn line(&self, label: Label) -> Option<&ProofLine> {
        self.lines.iter().find(|l| l.label == label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("line {line}: {message}")]
pub struct ScriptParseError {
    /// 1-based line of the input text.
    pub line: usize,
    pub message: String,
}

#[derive(Default)]
struct Draft {
    id: Option<String>,
    logic: Option<LogicId>,
    target: Option<Formula>,
    premise: Option<Formula>,
    lines: Vec<ProofLine>,
    start: usize,
}

impl Draft {
    fn finish(self) -> Result<ProofScript, ScriptParseError> {
        let err = |message: &str| ScriptParseError {
            line: self.start,
            message: message.into(),
        };
        Ok(ProofScript {
            id: self.id.clone().ok_or_else(|| err("missing id"))?,
            logic: self.logic.ok_or_else(|| err("missing logic"))?,
            target: self.target.clone().ok_or_else(|| err("missing target"))?,
            premise: self.premise,
            lines: self.lines,
        })
    }
}

/// Parses every script in `text`.
pub fn parse_scripts(text: &str) -> Result<Vec<ProofScript>, ScriptParseError> {
    let mut scripts = Vec::new();
    let mut draft: Option<Draft> = None;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let err = |message: String| ScriptParseError { line: n, message };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some((key, value)) = directive(line) {
            let value = value.trim();
            if key == "id" {
                if let Some(d) = draft.take() {
                    scripts.push(d.finish()?);
                }
                draft = Some(Draft {
                    id: Some(value.to_string()),
                    start: n,
                    ..Draft::default()
                });
                continue;
            }
            let d = draft.get_or_insert_with(|| Draft {
                start: n,
                ..Draft::default()
            });
            let formula = || parse(value).map_err(|e| err(format!("{key}: {e}")));
            match key {
                "logic" => d.logic = Some(value.parse().map_err(err)?),
                "target" => d.target = Some(formula()?),
                "premise" => d.premise = Some(formula()?),
                _ => unreachable!(),
            }
            continue;
        }
        let d = draft.get_or_insert_with(|| Draft {
            start: n,
            ..Draft::default()
        });
        d.lines.push(parse_step(line).map_err(err)?);
    }
    match draft {
        Some(d) => scripts.push(d.finish()?),
        None => {
            return Err(ScriptParseError {
                line: 0,
                message: "no script found".into(),
            });
        }
    }
    Ok(scripts)
}

fn directive(line: &str) -> Option<(&str, &str)> {
    let (key, value) = line.split_once(':')?;
    matches!(key.trim(), "id" | "logic" | "target" | "premise").then(|| (key.trim(), value))
}

fn parse_step(line: &str) -> Result<ProofLine, String> {
    let (label, rest) = line
        .split_once('.')
        .ok_or_else(|| format!("expected `n. <formula> ; <justification>`, got {line:?}"))?;
    let label: Label = label
        .trim()
        .parse()
        .map_err(|_| format!("bad line label {:?}", label.trim()))?;
    let (formula, just) = rest
        .split_once(';')
        .ok_or_else(|| format!("line {label}: missing `;` before the justification"))?;
    let formula = parse(formula.trim()).map_err(|e| format!("line {label}: {e}"))?;
    let justification =
        parse_justification(just.trim()).map_err(|e| format!("line {label}: {e}"))?;
    Ok(ProofLine {
        label,
        formula,
        justification,
    })
}

fn parse_label(s: &str) -> Result<Label, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("expected a line number, got {:?}", s.trim()))
}

fn parse_binding(s: &str) -> Result<Binding, String> {
    let mut s = s.trim();
    if s.is_empty() {
        return Ok(Binding::new());
    }
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        if inner.contains('=') {
            s = inner;
        }
    }
    s.split(',')
        .map(|pair| {
            let (key, value) = pair.split_once('=').ok_or_else(|| {
                format!("expected `name=formula` in binding, got {:?}", pair.trim())
            })?;
            let var = MetaVar::from_key(key.trim().to_lowercase().as_str())
                .ok_or_else(|| format!("unknown metavariable {:?}", key.trim()))?;
            let f = parse(value.trim()).map_err(|e| format!("binding {}: {e}", key.trim()))?;
            Ok((var, f))
        })
        .collect()
}

fn parse_justification(s: &str) -> Result<Justification, String> {
    let (word, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
    let rest = rest.trim();
    let one = |rest: &str| parse_label(rest);
    let line_and_formula = |rest: &str| -> Result<(Label, Formula), String> {
        let (l, f) = rest
            .split_once(char::is_whitespace)
            .ok_or_else(|| format!("`{word}` needs a line number and a formula"))?;
        Ok((parse_label(l)?, parse(f.trim()).map_err(|e| e.to_string())?))
    };
    let id_and_rest = |rest: &str| -> Result<(String, String), String> {
        let (id, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        if id.is_empty() {
            return Err(format!("`{word}` needs a name"));
        }
        Ok((id.to_string(), tail.trim().to_string()))
    };
    use Justification::*;
    Ok(match word {
        "taut" | "tautology" => Tautology,
        "hyp" => Hypothesis,
        "ax" => {
            let (id, tail) = id_and_rest(rest)?;
            AxiomInstance {
                id: id.parse()?,
                binding: parse_binding(&tail)?,
            }
        }
        "lemma" => {
            let (id, tail) = id_and_rest(rest)?;
            PriorLemma {
                script: id,
                binding: parse_binding(&tail)?,
            }
        }
        "rule" => {
            let (id, tail) = id_and_rest(rest)?;
            DerivedRule {
                id: id.parse()?,
                line: parse_label(&tail)?,
            }
        }
        "mp" => {
            let parts: Vec<&str> = rest
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|p| !p.is_empty())
                .collect();
            match parts.as_slice() {
                [a, b] => ModusPonens {
                    antecedent: parse_label(a)?,
                    implication: parse_label(b)?,
                },
                _ => return Err("`mp` needs two line numbers".into()),
            }
        }
        "nec_box" => NecBox { line: one(rest)? },
        "rm_box" => RmBox { line: one(rest)? },
        "rm_b" => RmB { line: one(rest)? },
        "nec_cond" => {
            let (line, antecedent) = line_and_formula(rest)?;
            NecCond { line, antecedent }
        }
        "rm_cond" => {
            let (line, antecedent) = line_and_formula(rest)?;
            RmCond { line, antecedent }
        }
        "pl" => {
            let lines = rest
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|p| !p.is_empty())
                .map(parse_label)
                .collect::<Result<Vec<_>, _>>()?;
            if lines.is_empty() {
                return Err("`pl` needs at least one line".into());
            }
            Pl { lines }
        }
        other => return Err(format!("unknown justification {other:?}")),
    })
}

fn write_binding(f: &mut fmt::Formatter<'_>, b: &Binding) -> fmt::Result {
    if b.is_empty() {
        return Ok(());
    }
    let parts: Vec<String> = b.iter().map(|(m, v)| format!("{}={v}", m.key())).collect();
    write!(f, " [{}]", parts.join(", "))
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Justification::*;
        match self {
            Tautology => f.write_str("taut"),
            Hypothesis => f.write_str("hyp"),
            AxiomInstance { id, binding } => {
                write!(f, "ax {id}")?;
                write_binding(f, binding)
            }
            ModusPonens {
                antecedent,
                implication,
            } => write!(f, "mp {antecedent} {implication}"),
            NecBox { line } => write!(f, "nec_box {line}"),
            NecCond { line, antecedent } => write!(f, "nec_cond {line} {antecedent}"),
            RmBox { line } => write!(f, "rm_box {line}"),
            RmB { line } => write!(f, "rm_b {line}"),
            RmCond { line, antecedent } => write!(f, "rm_cond {line} {antecedent}"),
            DerivedRule { id, line } => write!(f, "rule {id} {line}"),
            PriorLemma { script, binding } => {
                write!(f, "lemma {script}")?;
                write_binding(f, binding)
            }
            Pl { lines } => {
                let l: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
                write!(f, "pl {}", l.join(","))
            }
        }
    }
}

impl fmt::Display for ProofLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}. {} ; {}",
            self.label, self.formula, self.justification
        )
    }
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "id: {}", self.id)?;
        writeln!(f, "logic: {}", self.logic)?;
        writeln!(f, "target: {}", self.target)?;
        if let Some(p) = &self.premise {
            writeln!(f, "premise: {p}")?;
        }
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Metavariable bindings by lowercase key, for JSON reports.
pub fn binding_map(b: &Binding) -> BTreeMap<&'static str, String> {
    b.iter().map(|(m, f)| (m.key(), f.to_string())).collect()
}
