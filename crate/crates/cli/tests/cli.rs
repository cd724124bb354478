use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fsmcov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsmcov"))
        .args(args)
        .env_remove("FSMCOV_COLOR")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

/// A temp dir holding every fixture as `<name>.json`.
fn fixture_dir() -> TempDir {
    let dir = TempDir::new().unwrap();
    let out = fsmcov(&["fixtures", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    dir
}

fn graph(dir: &TempDir, name: &str) -> String {
    dir.path().join(format!("{name}.json")).to_str().unwrap().to_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn diamond_edge_pairs_missing() {
    let dir = fixture_dir();
    let s = write(dir.path(), "s.json", r#"{"paths":[["a","b"],["c","d"]]}"#);
    let g = graph(&dir, "fix-diamond");
    let out = fsmcov(&[
        "check",
        "--graph",
        &g,
        "--suite",
        s.to_str().unwrap(),
        "--criterion",
        "epc",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("a-d") && text.contains("c-b"), "{text}");

    let out = fsmcov(&[
        "check",
        "--graph",
        &g,
        "--suite",
        s.to_str().unwrap(),
        "--criterion",
        "ec",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn check_json_report() {
    let dir = fixture_dir();
    let s = write(dir.path(), "s.json", r#"{"paths":[["a","b"],["c","d"]]}"#);
    let out = fsmcov(&[
        "check",
        "--graph",
        &graph(&dir, "fix-diamond"),
        "--suite",
        s.to_str().unwrap(),
        "--criterion",
        "nsc:1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["criterion"], "NSC(1)");
    assert_eq!(v["satisfied"], false);
    assert_eq!(v["ratio"], "2/4");
    assert_eq!(v["missing"], serde_json::json!([["a", "d"], ["c", "b"]]));
}

#[test]
fn selfloop_prime_paths_json() {
    let dir = fixture_dir();
    let out = fsmcov(&[
        "requirements",
        "--graph",
        &graph(&dir, "fix-selfloop"),
        "--criterion",
        "ppc",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["items"], serde_json::json!([["a", "b"], ["a", "c"], ["d"]]));
}

#[test]
fn all_paths_on_cyclic_graph_exits_3() {
    let dir = fixture_dir();
    let s = write(dir.path(), "s.json", r#"{"paths":[["a","b"]]}"#);
    let out = fsmcov(&[
        "check",
        "--criterion",
        "apc",
        "--graph",
        &graph(&dir, "fix-oneloop"),
        "--suite",
        s.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    let out = fsmcov(&["generate", "--criterion", "wmc", "--graph", &graph(&dir, "fix-oneloop")]);
    assert_eq!(code(&out), 3);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", "{not json");
    let out = fsmcov(&["requirements", "--graph", bad.to_str().unwrap(), "--criterion", "ec"]);
    assert_eq!(code(&out), 2);
    let missing = dir.path().join("nope.json");
    let out = fsmcov(&[
        "requirements",
        "--graph",
        missing.to_str().unwrap(),
        "--criterion",
        "ec",
    ]);
    assert_eq!(code(&out), 2);

    let fixtures = fixture_dir();
    let g = graph(&fixtures, "fix-diamond");
    let out = fsmcov(&["requirements", "--graph", &g, "--criterion", "xyz"]);
    assert_eq!(code(&out), 2);
    let s = write(dir.path(), "s.json", r#"{"paths":[["a","q"]]}"#);
    let out = fsmcov(&[
        "check",
        "--graph",
        &g,
        "--suite",
        s.to_str().unwrap(),
        "--criterion",
        "ec",
    ]);
    assert_eq!(code(&out), 2);
    let out = fsmcov(&["check", "--graph", &g]);
    assert_eq!(code(&out), 2);
}

#[test]
fn resource_cap_exits_4() {
    let dir = fixture_dir();
    let out = fsmcov(&[
        "generate",
        "--graph",
        &graph(&dir, "fix-triple"),
        "--criterion",
        "apc",
        "--max-paths",
        "3",
    ]);
    assert_eq!(code(&out), 4);
}

#[test]
fn generate_then_minimize_round_trip() {
    let dir = fixture_dir();
    let g = graph(&dir, "fix-twoloops");
    let out = fsmcov(&["generate", "--graph", &g, "--criterion", "ppc", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let suite = write(dir.path(), "gen.json", &stdout(&out));
    let suite = suite.to_str().unwrap();
    assert_eq!(
        code(&fsmcov(&[
            "check",
            "--graph",
            &g,
            "--suite",
            suite,
            "--criterion",
            "ppc"
        ])),
        0
    );

    let out = fsmcov(&[
        "minimize",
        "--graph",
        &g,
        "--suite",
        suite,
        "--criterion",
        "ppc",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let min = write(dir.path(), "min.json", &stdout(&out));
    assert_eq!(
        code(&fsmcov(&[
            "check",
            "--graph",
            &g,
            "--suite",
            min.to_str().unwrap(),
            "--criterion",
            "ppc"
        ])),
        0
    );
    let before = json(&fsmcov(&[
        "generate",
        "--graph",
        &g,
        "--criterion",
        "ppc",
        "--format",
        "json",
    ]))["paths"]
        .as_array()
        .unwrap()
        .len();
    let after = json(&out)["paths"].as_array().unwrap().len();
    assert!(after <= before);
}

#[test]
fn specified_paths_from_file_and_inline() {
    let dir = fixture_dir();
    let g = graph(&dir, "fix-diamond");
    let spec = write(dir.path(), "spec.json", r#"{"paths":[["a","d"]]}"#);
    let s = write(dir.path(), "s.json", r#"{"paths":[["a","b"],["c","d"]]}"#);
    let s = s.to_str().unwrap();
    let from_file = format!("spc:@{}", spec.to_str().unwrap());
    assert_eq!(
        code(&fsmcov(&[
            "check",
            "--graph",
            &g,
            "--suite",
            s,
            "--criterion",
            &from_file
        ])),
        1
    );
    assert_eq!(
        code(&fsmcov(&[
            "check",
            "--graph",
            &g,
            "--suite",
            s,
            "--criterion",
            "spc:a-b"
        ])),
        0
    );
}

#[test]
fn dot_input() {
    let dir = TempDir::new().unwrap();
    let dot = write(
        dir.path(),
        "g.dot",
        r#"digraph { 1 [start=true]; 3 [end=true]; 1 -> 2 [id="a"]; 2 -> 3 [id="b"]; 2 -> 2 [id="c"]; }"#,
    );
    let out = fsmcov(&[
        "requirements",
        "--graph",
        dot.to_str().unwrap(),
        "--criterion",
        "ppc",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["items"], serde_json::json!([["a", "b"], ["c"]]));
}

#[test]
fn subsume_reports_witness() {
    let out = fsmcov(&["subsume", "ec", "epc", "--trials", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["status"], "refuted");
    assert_eq!(v["expected"], "NS");
    assert_eq!(v["witness"]["origin"], "fix-diamond");

    let out = fsmcov(&["subsume", "epc", "ec", "--trials", "20"]);
    assert!(stdout(&out).contains("confirmed"));
}

#[test]
fn table_json_is_deterministic() {
    let a = fsmcov(&["table", "--trials", "5", "--seed", "7", "--format", "json"]);
    let b = fsmcov(&["table", "--trials", "5", "--seed", "7", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["summary"]["cells"], 110);
    assert_eq!(v["summary"]["contradictions"], 0);
    assert_eq!(v["open_questions"].as_array().unwrap().len(), 2);
}

#[test]
fn fixtures_dump() {
    let out = fsmcov(&["fixtures"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v.as_object().unwrap().len(), 6);
    assert_eq!(v["fix-oneloop"]["start"], "1");
}
