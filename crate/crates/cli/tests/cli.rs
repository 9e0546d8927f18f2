use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sigmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmax")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn fraction(v: &Value) -> (i64, i64) {
    (v["num"].as_i64().unwrap(), v["den"].as_i64().unwrap())
}

#[test]
fn check_valid_probability_exits_zero() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "d.json",
        r#"{"space":{"kind":"random","labels":["a","b","c"]},"kind":"probability","values":{"a":0.5,"b":"1/4","c":0.25}}"#,
    );
    let out = sigmax(&["check", "--in", p(&f), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"]["additivity"]["status"], "pass");
}

#[test]
fn failed_axiom_exits_one() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "d.json",
        r#"{"space":{"kind":"fuzzy","labels":["a","b"]},"kind":"possibility","normalized":true,"values":{"a":0.5,"b":0.25}}"#,
    );
    let out = sigmax(&["check", "--in", p(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn malformed_input_exits_two_naming_file_and_field() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", r#"{"space":{"kind":"random","labels":["a"]},"kind":"probabilty","values":{"a":1}}"#);
    let out = sigmax(&["check", "--in", p(&f)]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("bad.json") && err.contains("kind"), "{err}");

    let missing = sigmax(&["check", "--in", p(&dir.path().join("nope.json"))]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("nope.json"));

    let label = write(&dir, "l.json", r#"{"space":{"kind":"random","labels":["a"]},"kind":"probability","values":{"a":1,"z":0}}"#);
    let out = sigmax(&["check", "--in", p(&label)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("values.z"));
}

#[test]
fn nonpositive_tolerance_is_rejected() {
    let out = sigmax(&["verify", "--tolerance", "0", "--sweep", "axioms", "--count", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixture_then_compare_union_reports_the_three_identities() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("fx.json");
    let gen = sigmax(&["fixtures", "--name", "example-5.1", "--grid", "64x64", "--out", p(&f)]);
    assert_eq!(gen.status.code(), Some(0), "{}", stderr(&gen));

    let out = sigmax(&["compare-union", "--in", p(&f), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    let find = |a: &str, b: &str| {
        pairs
            .iter()
            .find(|e| e["first"] == a && e["second"] == b)
            .map(|e| &e["report"])
            .unwrap_or_else(|| panic!("pair {a} {b}"))
    };
    for (a, b) in [("YOUTH", "MID"), ("MID", "AGED")] {
        let r = find(a, b);
        assert_eq!(r["class"], "projection-nested");
        assert_eq!(fraction(&r["max_error"]).0, 0);
        assert_eq!(fraction(&r["pi_union_exact"]), fraction(&r["pi_union_max"]));
    }
    let r = find("YOUTH", "AGED");
    assert_eq!(r["class"], "projection-exclusive");
    assert_eq!(fraction(&r["pi_union_exact"]), fraction(&r["pi_sigma"]));
    assert_eq!(v["extraction"]["holds"], true);

    let classes = sigmax(&["classify", "--in", p(&f)]);
    assert!(stdout(&classes).contains("projection-exclusive"));
}

#[test]
fn age_group_compatibilities() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("age.json");
    assert!(sigmax(&["fixtures", "--name", "age-groups", "--out", p(&f)]).status.success());
    let out = sigmax(&["measure", "--in", p(&f), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(fraction(&v["values"]["YOUTH"]), (1, 2));
    assert_eq!(fraction(&v["values"]["MID"]), (1, 1));
    assert_eq!(fraction(&v["values"]["AGED"]), (0, 1));
}

#[test]
fn unknown_fixture_exits_two() {
    let out = sigmax(&["fixtures", "--name", "example-9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("example-9"));
}

#[test]
fn simulate_fair_die_is_deterministic_and_close() {
    let args = ["simulate", "--die", "fair6", "--n", "1000000", "--seed", "42", "--format", "json"];
    let first = sigmax(&args);
    let second = sigmax(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert!(v["max_deviation"].as_f64().unwrap() <= 0.005);
    let counts: u64 = v["table"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).sum();
    assert_eq!(counts, 1_000_000);
}

#[test]
fn infer_compose_update_round_trip() {
    let dir = TempDir::new().unwrap();
    let joint = write(
        &dir,
        "j.json",
        r#"{"kind":"probability","rows":["r1","r2"],"cols":["c1","c2"],"matrix":[[0.1,0.3],[0.2,0.4]]}"#,
    );
    let out = sigmax(&["infer", "--in", p(&joint), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rel = write(&dir, "rel.json", &v["conditional"].to_string());
    let prior = write(&dir, "prior.json", &v["row_marginal"].to_string());
    let back = sigmax(&["infer", "--relation", p(&rel), "--prior", p(&prior), "--format", "json"]);
    let b: Value = serde_json::from_str(&stdout(&back)).unwrap();
    assert_eq!(fraction(&b["matrix"][1][1]), (2, 5));

    let r1 = write(&dir, "r1.json", r#"{"kind":"possibility","given":["a","b"],"out":["x","y"],"matrix":[[1,0.5],[0.25,1]]}"#);
    let r2 = write(&dir, "r2.json", r#"{"kind":"possibility","given":["x","y"],"out":["u","v"],"matrix":[[1,0.5],[0.5,1]]}"#);
    let out = sigmax(&["compose", "--first", p(&r1), "--second", p(&r2), "--format", "json"]);
    let c: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(fraction(&c["matrix"][0][1]), (1, 2));
    assert_eq!(fraction(&c["matrix"][1][1]), (1, 1));
    let mismatch = sigmax(&["compose", "--first", p(&r2), "--second", p(&r2)]);
    assert_eq!(mismatch.status.code(), Some(2));

    let pp = write(&dir, "pp.json", r#"{"space":{"kind":"fuzzy","labels":["a","b"]},"kind":"possibility","values":{"a":1,"b":0.5}}"#);
    let out = sigmax(&["update", "--prior", p(&pp), "--likelihood", p(&r1), "--observed", "y", "--format", "json"]);
    let u: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(fraction(&u["values"]["a"]), (1, 2));
    assert_eq!(fraction(&u["values"]["b"]), (1, 1));
}

#[test]
fn verify_emits_json_lines_and_out_file() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("verdicts.jsonl");
    let out = sigmax(&["verify", "--sweep", "axioms", "--count", "50", "--seed", "3", "--format", "json", "--out", p(&f)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let body = fs::read_to_string(&f).unwrap();
    assert!(!body.is_empty());
    for line in body.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["passed"], true);
        assert!(v["witness"].is_null());
    }
    let again = sigmax(&["verify", "--sweep", "axioms", "--count", "50", "--seed", "3", "--format", "json"]);
    assert_eq!(stdout(&again), body);
}
