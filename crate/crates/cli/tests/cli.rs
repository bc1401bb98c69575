use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn kl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Two states with B(s) = {s}, selecting the current state when possible.
/// Under p = {0,1}, q = {0} the conditional `p > q` holds exactly at 0.
fn model_json() -> String {
    let events: [&[usize]; 3] = [&[0], &[1], &[0, 1]];
    let mut selection = Vec::new();
    for s in 0..2 {
        for e in events {
            let value: Vec<usize> = if e.contains(&s) { vec![s] } else { e.to_vec() };
            selection.push(json!({ "s": s, "event": e, "value": value }));
        }
    }
    json!({
        "states": 2,
        "belief": [[0], [1]],
        "selection": selection,
        "valuation": { "p": [0, 1], "q": [0] },
    })
    .to_string()
}

#[test]
fn eval_reports_truth_and_exit_code() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.json", &model_json());
    let out = kl(&[
        "eval",
        "--model",
        arg(&model),
        "--state",
        "0",
        "--formula",
        "B(p > q)",
    ]);
    assert_eq!((code(&out), stdout(&out).trim()), (0, "true"));
    let out = kl(&[
        "eval",
        "--model",
        arg(&model),
        "--state",
        "1",
        "--formula",
        "B(p > q)",
    ]);
    assert_eq!((code(&out), stdout(&out).trim()), (1, "false"));
}

#[test]
fn truth_set_of_conditional() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.json", &model_json());
    let out = kl(&["truth-set", "--model", arg(&model), "--formula", "(p > q)"]);
    assert_eq!(stdout(&out).trim(), "{0}");
    let out = kl(&[
        "--format",
        "json",
        "truth-set",
        "--model",
        arg(&model),
        "--formula",
        "(q > ~p)",
    ]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    // f(s, {0}) = {0} is never inside ||~p|| = {}.
    assert_eq!(v["truth_set"], json!([]));
}

#[test]
fn check_km_success_postulate_with_formula_level() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.json", &model_json());
    let model_arg = arg(&model);
    let out = kl(&[
        "check-km",
        "--model",
        model_arg,
        "--axiom",
        "K_diamond_1",
        "--formula-level",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn bad_inputs_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.json", &model_json());
    assert_eq!(
        code(&kl(&[
            "eval",
            "--model",
            arg(&model),
            "--state",
            "0",
            "--formula",
            "p >"
        ])),
        2
    );
    assert_eq!(
        code(&kl(&[
            "eval",
            "--model",
            arg(&model),
            "--state",
            "5",
            "--formula",
            "p"
        ])),
        2
    );
    assert_eq!(
        code(&kl(&[
            "eval",
            "--model",
            "/nonexistent.json",
            "--state",
            "0",
            "--formula",
            "p"
        ])),
        2
    );
    assert_eq!(code(&kl(&["frame-enum", "--states", "3", "--count"])), 2);
    assert_eq!(code(&kl(&["correspond", "--states", "2"])), 2);
    assert_eq!(code(&kl(&["no-such-command"])), 2);
    let garbled = write(&dir, "g.json", "{\"states\": 2");
    assert_eq!(code(&kl(&["frame-check", "--frame", arg(&garbled)])), 2);
}

#[test]
fn invalid_frame_is_a_failed_claim() {
    let dir = TempDir::new().unwrap();
    let frame = write(
        &dir,
        "f.json",
        r#"{"states": 1, "belief": [[]], "selection": [{"s": 0, "event": [0], "value": [0]}]}"#,
    );
    let out = kl(&["frame-check", "--frame", arg(&frame)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("invalid frame"));
}

#[test]
fn frame_enum_counts() {
    let out = kl(&["frame-enum", "--states", "2", "--count"]);
    assert_eq!(stdout(&out).trim(), "36864");
    let out = kl(&["frame-enum", "--states", "1"]);
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn emitted_strictness_witness_reproduces() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let out = kl(&[
        "--format",
        "json",
        "--out",
        arg(&report),
        "correspond",
        "--states",
        "2",
        "--exhaustive",
        "--pair",
        "A_diamond_2",
        "--pair",
        "A_star_4",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["frames"], 36_864);
    let frame = write(&dir, "w.json", &v["strictness_witness"].to_string());
    assert_eq!(
        code(&kl(&[
            "frame-check",
            "--frame",
            arg(&frame),
            "--axiom",
            "A_diamond_2"
        ])),
        0
    );
    assert_eq!(
        code(&kl(&[
            "frame-check",
            "--frame",
            arg(&frame),
            "--axiom",
            "A_star_4"
        ])),
        1
    );
    assert_eq!(
        code(&kl(&[
            "frame-check",
            "--frame",
            arg(&frame),
            "--property",
            "P_star_4"
        ])),
        1
    );
    assert_eq!(
        code(&kl(&[
            "frame-check",
            "--frame",
            arg(&frame),
            "--property",
            "P_diamond_2"
        ])),
        0
    );
}

#[test]
fn sampled_correspondence_depends_on_seed_only() {
    let run = |seed: &str| {
        stdout(&kl(&[
            "--seed",
            seed,
            "correspond",
            "--states",
            "3",
            "--sample",
            "200",
        ]))
    };
    assert_eq!(run("3"), run("3"));
    assert_ne!(run("3"), run("4"));
}

#[test]
fn builtin_proofs() {
    let out = kl(&["prove-check", "builtin:A_diamond_2", "--logic", "AGM"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(
        code(&kl(&[
            "prove",
            "check",
            "builtin:A_diamond_2",
            "--logic",
            "KM"
        ])),
        1
    );
    assert_eq!(
        code(&kl(&[
            "prove-check",
            "builtin:A_diamond_2",
            "--without",
            "A_star_4"
        ])),
        1
    );
    assert_eq!(code(&kl(&["prove-check", "builtin:nothing"])), 2);
    let listed = stdout(&kl(&["prove", "list"]));
    assert!(listed.lines().count() >= 11);
}

#[test]
fn proof_file_round_trip() {
    let dir = TempDir::new().unwrap();
    let good = "id: weaken\nlogic: L\ntarget: B(p & q) -> B p\n1. p & q -> p ; taut\n2. B(p & q) -> B p ; rm_b 1\n";
    let path = write(&dir, "good.proof", good);
    let out = kl(&["prove", "check", arg(&path)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let wrong_rule = good.replace("rm_b 1", "rm_box 1");
    let path = write(&dir, "bad.proof", &wrong_rule);
    assert_eq!(code(&kl(&["prove", "check", arg(&path)])), 1);

    let shown = stdout(&kl(&["prove", "show", "A_star_3"]));
    let path = write(&dir, "a3.proof", &shown);
    assert_eq!(code(&kl(&["prove-check", arg(&path), "--logic", "KM"])), 0);
    let path = write(&dir, "garbage.proof", "1. p ;");
    assert_eq!(code(&kl(&["prove-check", arg(&path)])), 2);
}

#[test]
fn containment() {
    let out = kl(&["verify-containment"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).lines().filter(|l| l.contains(" ok ")).count(),
        9
    );
    assert_eq!(
        code(&kl(&["verify-containment", "--without", "A_star_4"])),
        1
    );
}

#[test]
fn worlds_family_files_reproduce_verdicts() {
    let dir = TempDir::new().unwrap();
    let gen = |constraint: &str, seed: &str| {
        stdout(&kl(&[
            "--seed",
            seed,
            "worlds",
            "generate",
            "--atoms",
            "2",
            "--constraint",
            constraint,
        ]))
    };
    assert_eq!(gen("k9", "5"), gen("k9", "5"));
    let k9 = write(&dir, "k9.json", &gen("k9", "5"));
    let out = kl(&[
        "--format",
        "json",
        "worlds",
        "check-lemma",
        "k9s",
        "--family",
        arg(&k9),
    ]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "conclusion_violated");

    let k7 = write(&dir, "k7.json", &gen("k7", "5"));
    assert_eq!(code(&kl(&["worlds-check", "k7s", "--family", arg(&k7)])), 0);
    assert_eq!(code(&kl(&["worlds", "check-lemma", "k7s"])), 0);
}

#[test]
fn suite_exit_codes() {
    let out = kl(&["suite", "--only", "5"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("[PASS] 5"));
    let out = kl(&[
        "--format",
        "json",
        "suite",
        "--only",
        "6b",
        "--families",
        "20",
    ]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["criteria"][0]["passed"], false);
    assert_eq!(code(&kl(&["suite", "--only", "9"])), 2);
}
