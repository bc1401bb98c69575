use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use kl_core::formula::{parse, Formula};
use kl_core::frame::{check_property, enumerate_frames, Frame, PropertyId, RawFrame};
use kl_core::model::{check_km_axiom, KmAxiom, KmFormulaChecker, Model};
use kl_core::proofkit::{self, builtin_registry, builtin_scripts, parse_scripts, Checker, Logic};
use kl_core::schema::{
    correspondence_pairs, rule_valid_on_frame, run_correspondence_suite, schema_valid_on_frame,
    AxiomId, CorrespondencePair, LogicId, SuiteMode,
};
use kl_core::suite::{run_selected, SuiteConfig, CRITERIA};
use kl_core::worlds::{
    check_lemma_k7s, check_lemma_k9s, enumerate_families, generate_family, Constraint,
    LemmaOutcome, WorldSpace, WorldUpdateFamily,
};

/// A checked claim: whether it holds, plus both renderings.
pub struct Report {
    pub holds: bool,
    pub text: String,
    pub json: Value,
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let data = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&data).with_context(|| format!("loading {}", path.display()))
}

fn formula(src: &str) -> Result<Formula> {
    parse(src).map_err(|e| anyhow!("formula {src:?}: {e}"))
}

fn ids<T: std::str::FromStr<Err = String>>(names: &[String]) -> Result<Vec<T>> {
    names
        .iter()
        .map(|n| n.parse::<T>().map_err(|e| anyhow!(e)))
        .collect()
}

pub fn eval(model: &Path, state: usize, src: &str) -> Result<Report> {
    let m: Model = load(model)?;
    let f = formula(src)?;
    let holds = m.holds_at(state, &f)?;
    Ok(Report {
        holds,
        text: holds.to_string(),
        json: json!({ "state": state, "formula": f, "value": holds }),
    })
}

pub fn truth_set(model: &Path, src: &str) -> Result<Report> {
    let m: Model = load(model)?;
    let f = formula(src)?;
    let e = m.truth_set(&f)?;
    Ok(Report {
        holds: true,
        text: e.to_string(),
        json: json!({ "formula": f, "truth_set": e }),
    })
}

pub fn frame_check(path: &Path, properties: &[String], axioms: &[String]) -> Result<Report> {
    let properties: Vec<PropertyId> = ids(properties)?;
    let axioms: Vec<AxiomId> = ids(axioms)?;
    let raw: RawFrame = load(path)?;
    let frame = match raw.validate() {
        Ok(fr) => fr,
        Err(violations) => {
            let mut text = format!("invalid frame: {} violations\n", violations.len());
            for v in &violations {
                writeln!(text, "  {v}")?;
            }
            let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
            return Ok(Report {
                holds: false,
                text,
                json: json!({ "valid": false, "violations": list }),
            });
        }
    };
    let mut holds = true;
    let mut text = format!("valid frame on {} states\n", frame.n_states());
    let mut results = Vec::new();
    for p in properties {
        let outcome = check_property(&frame, p);
        holds &= outcome.holds();
        match outcome.witness() {
            None => writeln!(text, "{p}: holds")?,
            Some(w) => writeln!(
                text,
                "{p}: fails at state {} with E = {}{}",
                w.state,
                w.e,
                second(w.f)
            )?,
        }
        results.push(json!({ "property": p, "outcome": outcome }));
    }
    for a in axioms {
        let outcome = if a.is_rule() {
            rule_valid_on_frame(&frame, a)
        } else {
            schema_valid_on_frame(&frame, a)
        }?;
        holds &= outcome.holds();
        match outcome.witness() {
            None => writeln!(text, "{a}: valid")?,
            Some(w) => {
                let binding: Vec<String> = w
                    .binding
                    .iter()
                    .map(|(m, e)| format!("{m} = {e}"))
                    .collect();
                writeln!(
                    text,
                    "{a}: false at state {} with {}",
                    w.state,
                    binding.join(", ")
                )?
            }
        }
        results.push(json!({ "axiom": a, "outcome": outcome }));
    }
    Ok(Report {
        holds,
        text,
        json: json!({ "valid": true, "checks": results }),
    })
}

fn second(f: Option<kl_core::frame::Event>) -> String {
    f.map(|f| format!(", F = {f}")).unwrap_or_default()
}

pub fn frame_enum(
    states: usize,
    properties: &[String],
    limit: Option<usize>,
    count_only: bool,
) -> Result<Report> {
    let properties: Vec<PropertyId> = ids(properties)?;
    let frames = enumerate_frames(states)?
        .filter(|fr| properties.iter().all(|&p| check_property(fr, p).holds()))
        .take(limit.unwrap_or(usize::MAX));
    if count_only {
        let n = frames.count();
        return Ok(Report {
            holds: true,
            text: n.to_string(),
            json: json!({ "count": n }),
        });
    }
    let frames: Vec<Frame> = frames.collect();
    let mut text = String::new();
    for fr in &frames {
        writeln!(text, "{}", serde_json::to_string(fr)?)?;
    }
    Ok(Report {
        holds: true,
        text,
        json: json!(frames),
    })
}

pub fn check_km(
    path: &Path,
    state: Option<usize>,
    axioms: &[String],
    formula_level: bool,
) -> Result<Report> {
    let m: Model = load(path)?;
    let mut axioms: Vec<KmAxiom> = ids(axioms)?;
    if axioms.is_empty() {
        axioms = KmAxiom::ALL.to_vec();
    }
    let states: Vec<usize> = match state {
        Some(s) => vec![s],
        None => m.frame().states().collect(),
    };
    let checker = if formula_level {
        Some(KmFormulaChecker::new(&m)?)
    } else {
        None
    };
    let evaluated = checker.as_ref().map(|c| c.evaluate(m.frame()));
    let mut holds = true;
    let mut text = String::new();
    let mut results = Vec::new();
    for &s in &states {
        for &a in &axioms {
            let outcome = check_km_axiom(&m, s, a)?;
            holds &= outcome.holds();
            match outcome.witness() {
                None => write!(text, "state {s} {a}: holds")?,
                Some(w) => write!(text, "state {s} {a}: fails with E = {}{}", w.e, second(w.f))?,
            }
            let mut entry = json!({ "state": s, "axiom": a, "outcome": outcome });
            if let Some(ev) = &evaluated {
                let fl = ev.check(s, a);
                holds &= fl.holds() == outcome.holds();
                match fl.witness() {
                    None => write!(text, "; formula level holds")?,
                    Some(w) => write!(text, "; formula level fails at {}", w.statement)?,
                }
                entry["formula_level"] = json!(fl);
            }
            text.push('\n');
            results.push(entry);
        }
    }
    Ok(Report {
        holds,
        text,
        json: json!({ "checks": results }),
    })
}

pub fn correspond(
    states: usize,
    exhaustive: bool,
    sample: Option<usize>,
    pairs: &[String],
    seed: u64,
) -> Result<Report> {
    let mode = match (exhaustive, sample) {
        (_, Some(count)) => SuiteMode::Sampled { count, seed },
        (true, None) => SuiteMode::Exhaustive,
        (false, None) => bail!("one of --exhaustive or --sample is required"),
    };
    let selected: Vec<CorrespondencePair> = if pairs.iter().any(|p| p == "all") {
        correspondence_pairs().to_vec()
    } else {
        let wanted: Vec<AxiomId> = ids(pairs)?;
        let all = correspondence_pairs();
        wanted
            .into_iter()
            .map(|a| {
                all.iter()
                    .copied()
                    .find(|p| p.axiom == a)
                    .ok_or_else(|| anyhow!("no pair for {a}"))
            })
            .collect::<Result<_>>()?
    };
    let r = run_correspondence_suite(states, mode, &selected)?;
    let mut text = format!("{} frames on {} states\n", r.frames, r.states);
    for p in &r.pairs {
        let property = p
            .property
            .map_or("(every frame)".to_string(), |p| p.to_string());
        writeln!(
            text,
            "{:<20} {:<20} property {:>6}  axiom {:>6}  disagreements {}",
            p.axiom.to_string(),
            property,
            p.property_count,
            p.axiom_count,
            p.disagreements.len()
        )?;
    }
    if let Some(fr) = &r.strictness_witness {
        writeln!(text, "strictness witness: {}", serde_json::to_string(fr)?)?;
    }
    Ok(Report {
        holds: r.disagreement_count() == 0,
        text,
        json: serde_json::to_value(&r)?,
    })
}

fn lemma_check(k9: bool) -> fn(&WorldUpdateFamily) -> LemmaOutcome {
    if k9 {
        check_lemma_k9s
    } else {
        check_lemma_k7s
    }
}

fn describe(outcome: &LemmaOutcome) -> String {
    match outcome {
        LemmaOutcome::Holds => "holds".to_string(),
        LemmaOutcome::HypothesisViolated(h) => {
            format!("hypothesis fails at world {} with E = {}, F = {}", h.world, h.e, h.f)
        }
        LemmaOutcome::ConclusionViolated(w) => format!(
            "conclusion fails with K = {}, E = {}, F = {}: {} is not within {}, offending worlds {}",
            w.k, w.e, w.f, w.lhs, w.rhs, w.offending_worlds
        ),
    }
}

pub fn lemma_on_file(path: &Path, k9: bool) -> Result<Report> {
    let fam: WorldUpdateFamily = load(path)?;
    let outcome = lemma_check(k9)(&fam);
    Ok(Report {
        holds: !matches!(outcome, LemmaOutcome::ConclusionViolated(_)),
        text: describe(&outcome),
        json: serde_json::to_value(&outcome)?,
    })
}

pub fn lemma_sweep(atoms: usize, count: usize, k9: bool, seed: u64) -> Result<Report> {
    let space = WorldSpace::with_atoms(atoms)?;
    let check = lemma_check(k9);
    let families: Box<dyn Iterator<Item = Result<WorldUpdateFamily>>> = if atoms == 1 {
        Box::new(enumerate_families(&space)?.map(Ok))
    } else {
        let constraint = if k9 { Constraint::K9 } else { Constraint::K7 };
        let space = space.clone();
        Box::new(
            (0..count as u64)
                .map(move |i| Ok(generate_family(&space, seed.wrapping_add(i), constraint)?)),
        )
    };
    let (mut total, mut hypothesis, mut violations) = (0usize, 0usize, 0usize);
    let mut first = None;
    for fam in families {
        let fam = fam?;
        total += 1;
        match check(&fam) {
            LemmaOutcome::Holds => {}
            LemmaOutcome::HypothesisViolated(_) => hypothesis += 1,
            outcome @ LemmaOutcome::ConclusionViolated(_) => {
                violations += 1;
                if first.is_none() {
                    first = Some((fam, outcome));
                }
            }
        }
    }
    let mut text = format!(
        "{total} families, {} satisfy the hypothesis, {violations} violations\n",
        total - hypothesis
    );
    if let Some((fam, outcome)) = &first {
        writeln!(text, "first violation: {}", describe(outcome))?;
        writeln!(text, "family: {}", serde_json::to_string(fam)?)?;
    }
    let json = json!({
        "families": total,
        "hypothesis_failures": hypothesis,
        "violations": violations,
        "first_violation": first.map(|(fam, outcome)| json!({ "family": fam, "outcome": outcome })),
    });
    Ok(Report {
        holds: violations == 0,
        text,
        json,
    })
}

pub fn worlds_generate(atoms: usize, constraint: Constraint, seed: u64) -> Result<Report> {
    let fam = generate_family(&WorldSpace::with_atoms(atoms)?, seed, constraint)?;
    let json = serde_json::to_value(&fam)?;
    Ok(Report {
        holds: true,
        text: serde_json::to_string(&json)?,
        json,
    })
}

fn logic(name: &str, without: &[String]) -> Result<Logic> {
    let base: LogicId = name.parse().map_err(|e: String| anyhow!(e))?;
    let removed: Vec<AxiomId> = ids(without)?;
    Ok(removed.into_iter().fold(Logic::new(base), Logic::without))
}

pub fn prove_check(target: &str, logic_name: Option<&str>, without: &[String]) -> Result<Report> {
    let mut registry = builtin_registry();
    let scripts = match target.strip_prefix("builtin:") {
        Some(id) => vec![registry
            .get(id)
            .ok_or_else(|| anyhow!("no builtin script {id:?}"))?
            .clone()],
        None => {
            let text = fs::read_to_string(target).with_context(|| format!("reading {target}"))?;
            let scripts = parse_scripts(&text).map_err(|e| anyhow!("{target}: {e}"))?;
            if scripts.is_empty() {
                bail!("{target}: no scripts");
            }
            for s in &scripts {
                registry.insert(s.clone());
            }
            scripts
        }
    };
    let mut holds = true;
    let mut text = String::new();
    let mut results = Vec::new();
    for s in &scripts {
        let l = match logic_name {
            Some(name) => logic(name, without)?,
            None => logic(s.logic.name(), without)?,
        };
        let result = Checker::new(&registry, l.clone()).check_script(s);
        holds &= result.is_ok();
        match &result {
            Ok(deps) => {
                let axioms: Vec<String> = deps.axioms.iter().map(ToString::to_string).collect();
                writeln!(
                    text,
                    "{}: valid in {l} ({} lines; uses {})",
                    s.id,
                    s.lines.len(),
                    axioms.join(", ")
                )?;
                results.push(json!({ "script": s.id, "logic": l.to_string(), "valid": true, "dependencies": deps }));
            }
            Err(e) => {
                writeln!(text, "{}: rejected in {l}: {e}", s.id)?;
                results.push(
                    json!({ "script": s.id, "logic": l.to_string(), "valid": false, "failure": e }),
                );
            }
        }
    }
    Ok(Report {
        holds,
        text,
        json: json!({ "scripts": results }),
    })
}

pub fn prove_list() -> Report {
    let mut text = String::new();
    let mut list = Vec::new();
    for s in builtin_scripts() {
        let _ = writeln!(
            text,
            "{:<24} {:<4} {:>3} lines  {}",
            s.id,
            s.logic.name(),
            s.lines.len(),
            s.target
        );
        list.push(
            json!({ "id": s.id, "logic": s.logic, "lines": s.lines.len(), "target": s.target }),
        );
    }
    Report {
        holds: true,
        text,
        json: json!(list),
    }
}

pub fn prove_show(id: &str) -> Result<Report> {
    let registry = builtin_registry();
    let s = registry
        .get(id)
        .ok_or_else(|| anyhow!("no builtin script {id:?}"))?;
    Ok(Report {
        holds: true,
        text: s.to_string(),
        json: json!({ "id": s.id, "script": s.to_string() }),
    })
}

pub fn verify_containment(logic_name: &str, without: &[String]) -> Result<Report> {
    let l = logic(logic_name, without)?;
    let report = proofkit::verify_containment(&builtin_registry(), l);
    let mut text = format!("update logic inside {}\n", report.logic);
    for item in &report.items {
        let route = match &item.route {
            proofkit::Route::Identity => "shared".to_string(),
            proofkit::Route::Derived { script, lines } => {
                format!("derived by {script} ({lines} lines)")
            }
            proofkit::Route::Missing => "no derivation".to_string(),
        };
        let status = if item.ok { "ok" } else { "FAILED" };
        write!(text, "{:<20} {status:<6} {route}", item.axiom.to_string())?;
        if let Some(f) = &item.failure {
            write!(text, ": {f}")?;
        }
        text.push('\n');
    }
    Ok(Report {
        holds: report.all_ok(),
        text,
        json: serde_json::to_value(&report)?,
    })
}

pub fn suite(config: &SuiteConfig, only: &[String]) -> Result<Report> {
    for id in only {
        if !CRITERIA.iter().any(|(c, _)| c == id) {
            bail!("unknown criterion {id:?}");
        }
    }
    let report = run_selected(config, |id| only.is_empty() || only.iter().any(|o| o == id));
    let mut text = String::new();
    for c in &report.criteria {
        writeln!(text, "{c}")?;
    }
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    writeln!(
        text,
        "{passed} of {} criteria passed",
        report.criteria.len()
    )?;
    Ok(Report {
        holds: report.passed(),
        text,
        json: serde_json::to_value(&report)?,
    })
}
