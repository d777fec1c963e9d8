use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn hybrix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hybrix")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TWO: &str = r#"{"atoms":1,"diamond":[[0]],"designated":[0],"kind":"hybrid"}"#;

#[test]
fn product_breaks_validity() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", TWO);
    let out = hybrix(&["valid", "--algebra", s(&a), "--formula", "<> i1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["valid"], true);

    let prod = hybrix(&["product", s(&a), s(&a)]);
    assert_eq!(code(&prod), 0);
    let aa = write(&dir, "aa.json", std::str::from_utf8(&prod.stdout).unwrap());
    let out = hybrix(&["valid", "--algebra", s(&aa), "--formula", "<> i1"]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["falsifier"]["assignment"]["noms"]["i1"], serde_json::json!([0]));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(code(&hybrix(&["parse", "--lang", "H", "E p1"])), 2);
    assert_eq!(code(&hybrix(&["parse", "p &"])), 2);
    assert_eq!(code(&hybrix(&["frobnicate"])), 2);
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"atoms":1,"diamond":[[3]],"kind":"hybrid"}"#);
    let out = hybrix(&["valid", "--algebra", s(&bad), "--formula", "p"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(code(&hybrix(&["valid", "--algebra", "/nonexistent.json", "--formula", "p"])), 2);
}

#[test]
fn parse_prints_json_and_minimal_language() {
    let out = hybrix(&["parse", "--lang", "H_AT", "@i p"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["language"], "H_AT");
    assert_eq!(v["formula"]["kind"], "sat");
}

#[test]
fn output_is_deterministic() {
    let a = hybrix(&["gen", "hybrid", "--size", "2", "--random", "5", "--seed", "11"]);
    let b = hybrix(&["gen", "hybrid", "--size", "2", "--random", "5", "--seed", "11"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_counts() {
    let count = |args: &[&str]| stdout_json(&hybrix(args)).as_array().unwrap().len();
    assert_eq!(count(&["gen", "bao", "--size", "1"]), 2);
    assert_eq!(count(&["gen", "hybrid", "--size", "1"]), 2);
    assert_eq!(count(&["gen", "frame", "--size", "1", "--powerset"]), 2);
    assert_eq!(count(&["gen", "bao", "--size", "2"]), 16);
    assert_eq!(code(&hybrix(&["gen", "bao", "--size", "9"])), 2);
}

#[test]
fn dead_end_frame_separates() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.json",
        r#"{"worlds":["u","v"],"rel":[["u","u"]],"admissible":"powerset","points":["v"]}"#,
    );
    assert_eq!(code(&hybrix(&["valid", "--frame", s(&g), "--formula", "j -> []bot"])), 0);
    assert_eq!(code(&hybrix(&["valid", "--frame", s(&g), "--formula", "[]bot"])), 1);

    let out = hybrix(&["dualize", "--to", "algebra", "--frame", s(&g)]);
    assert_eq!(code(&out), 0);
    let alg = write(&dir, "alg.json", &stdout_json(&out)["algebra"].to_string());
    assert_eq!(code(&hybrix(&["perm", "--algebra", s(&alg)])), 1);
    assert_eq!(code(&hybrix(&["roundtrip", "--frame", s(&g)])), 0);
    assert_eq!(code(&hybrix(&["roundtrip", "--algebra", s(&alg)])), 0);
}

#[test]
fn prove_check_accepts_and_rejects() {
    let dir = TempDir::new().unwrap();
    let plus = r#"{"logic":{"base":"H","plus":true,"sigma":["j -> []bot"]},
        "steps":[{"kind":"sigma","index":0,"formula":"j -> []bot"},
                 {"kind":"rule","rule":"name","premises":[1],"formula":"[]bot"}]}"#;
    let good = write(&dir, "good.json", plus);
    let out = hybrix(&["prove-check", s(&good)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["conclusion"], "~<>~bot");

    let bad = write(&dir, "bad.json", &plus.replace("\"plus\":true", "\"plus\":false"));
    let out = hybrix(&["prove-check", s(&bad)]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["error"]["index"], 2);

    // Permeated models of Σ have every atom designated and dead, so []bot holds.
    let out = hybrix(&["prove-check", s(&good), "--audit", "--max-atoms", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout_json(&out)["audit"]["checked"].as_u64().unwrap() > 0);

    let k = write(
        &dir,
        "k.json",
        r#"{"logic":{"base":"H","plus":false,"sigma":[]},
            "steps":[{"kind":"axiom","schema":"K","params":{},"formula":"[](p -> q) -> []p -> []q"}]}"#,
    );
    assert_eq!(code(&hybrix(&["prove-check", s(&k), "--audit", "--max-atoms", "2"])), 0);
    assert_eq!(code(&hybrix(&["prove-check", s(&write(&dir, "junk.json", "{"))])), 2);
}

#[test]
fn relativize_and_hybridize() {
    let dir = TempDir::new().unwrap();
    // a1 R a0 only; i names a1, which a0 cannot see back to.
    let base = write(
        &dir,
        "base.json",
        r#"{"atoms":2,"diamond":[[1],[]],"kind":"orthodox","constants":{"i":[1]}}"#,
    );
    let out = hybrix(&["relativize", "--algebra", s(&base), "--seed", "a1"]);
    assert_eq!(stdout_json(&out)["d"], serde_json::json!([0, 1]));
    let out = hybrix(&["relativize", "--algebra", s(&base), "--seed", "a0"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["d"], serde_json::json!([0]));
    assert_eq!(v["classes"]["i"]["class"], "bottom");

    let out = hybrix(&["relativize", "--algebra", s(&base), "--seed", "a0", "--seed", "a1", "--lemmas"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&hybrix(&["relativize", "--algebra", s(&base), "--seed", "b7"])), 2);

    let nu = write(&dir, "nu.json", r#"{"props":{"p":[1]}}"#);
    let out = hybrix(&["hybridize", "--algebra", s(&base), "--formula", "p", "--assignment", s(&nu)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["refutes"], true);
    assert_eq!(v["structure"]["kind"], "hybrid");

    let top = write(&dir, "top.json", r#"{"props":{"p":[0,1]}}"#);
    assert_eq!(code(&hybrix(&["hybridize", "--algebra", s(&base), "--formula", "p", "--assignment", s(&top)])), 2);
}

#[test]
fn at_laws_replay() {
    let dir = TempDir::new().unwrap();
    let canonical = write(&dir, "c.json", r#"{"atoms":2,"diamond":[[0],[1]],"designated":[0,1],"kind":"hybrid"}"#);
    assert_eq!(code(&hybrix(&["valid", "--algebra", s(&canonical), "--at-laws"])), 0);
    // @ constantly ⊥ breaks @_x ⊤ = ⊤.
    let broken = write(
        &dir,
        "b.json",
        r#"{"atoms":1,"diamond":[[]],"designated":[0],"kind":"hybrid","at":[{"coord":[0],"values":[[],[]]}]}"#,
    );
    let out = hybrix(&["valid", "--algebra", s(&broken), "--at-laws"]);
    assert_eq!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!stdout_json(&out)["violations"].as_array().unwrap().is_empty());
}

#[test]
fn suites_run_with_config_and_witness_dir() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "cfg.json", r#"{"max_atoms":2,"max_worlds":2,"trials":10}"#);
    let witnesses = dir.path().join("w");
    let out = hybrix(&["suite", "all", "--config", s(&cfg), "--witness-dir", s(&witnesses)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let reports = stdout_json(&out);
    assert_eq!(reports.as_array().unwrap().len(), 8);
    assert!(reports.as_array().unwrap().iter().all(|r| r["failures"].as_array().unwrap().is_empty()));
    assert_eq!(std::fs::read_dir(&witnesses).unwrap().count(), 0);

    let bad = write(&dir, "bad.json", r#"{"max_atoms":0}"#);
    assert_eq!(code(&hybrix(&["suite", "lemmas", "--config", s(&bad)])), 2);
    assert_eq!(code(&hybrix(&["suite", "nope"])), 2);
}
