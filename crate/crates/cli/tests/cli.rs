//! End-to-end tests of the binary: exit-code contract, output
//! determinism, and the gating of the structural suite on regular
//! instances.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_restricted-range"))
}

fn write_instance(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("restricted-range-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    // tests run in parallel and share fixture names; write-then-rename
    // keeps concurrent writers from exposing a truncated file
    let tmp = dir.join(format!("{name}.{:?}.tmp", std::thread::current().id()));
    std::fs::write(&tmp, body).unwrap();
    std::fs::rename(&tmp, &path).unwrap();
    path
}

fn set_3_2() -> PathBuf {
    write_instance(
        "set_3_2.json",
        r#"{"model":"set","universe_size":3,"range":[0,1]}"#,
    )
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn verify_passes_on_the_eight_element_instance() {
    let path = set_3_2();
    let out = run(&["verify", "--instance", path.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["schema"], "restricted-range/1");
    assert_eq!(parsed["pass"], true);
    let report = &parsed["reports"][0];
    assert_eq!(report["element_count"], 8);
    assert_eq!(report["ideal_count"], 3);
    assert_eq!(report["dstar_classes"], 2);
}

#[test]
fn verify_output_is_deterministic() {
    let path = set_3_2();
    let args = [
        "verify",
        "--instance",
        path.to_str().unwrap(),
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn verify_multiple_instances_with_jobs() {
    let p1 = set_3_2();
    let p2 = write_instance(
        "vec_2_2_1.json",
        r#"{"model":"vector_space","prime":2,"dim":2,"range_basis":[[1,0]]}"#,
    );
    let sequential = run(&[
        "verify",
        "--instance",
        p1.to_str().unwrap(),
        "--instance",
        p2.to_str().unwrap(),
    ]);
    let parallel = run(&[
        "verify",
        "--instance",
        p1.to_str().unwrap(),
        "--instance",
        p2.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert_eq!(sequential.status.code(), Some(0));
    assert_eq!(sequential.stdout, parallel.stdout);
}

#[test]
fn malformed_input_exits_2() {
    let path = write_instance(
        "bad.json",
        r#"{"model":"set","universe_size":3,"range":[9]}"#,
    );
    let out = run(&["enumerate", "--instance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = run(&["enumerate", "--instance", "/nonexistent/x.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let path = write_instance(
        "big.json",
        r#"{"model":"set","universe_size":5,"range":[0,1,2]}"#,
    );
    let out = run(&[
        "enumerate",
        "--instance",
        path.to_str().unwrap(),
        "--cap",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(
        msg.contains("243"),
        "cap error should carry the exact count: {msg}"
    );
}

#[test]
fn relations_refuse_regular_instances() {
    let path = write_instance(
        "full.json",
        r#"{"model":"set","universe_size":3,"range":[0,1,2]}"#,
    );
    let out = run(&[
        "relations",
        "--instance",
        path.to_str().unwrap(),
        "--rel",
        "R",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_on_regular_instance_reports_notice() {
    let path = write_instance(
        "full2.json",
        r#"{"model":"set","universe_size":3,"range":[0,1,2]}"#,
    );
    let out = run(&["verify", "--instance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let notice = parsed["reports"][0]["notice"].as_str().unwrap();
    assert!(notice.contains("regular instance"));
}

#[test]
fn dstar_dot_has_two_classes_on_codim_two() {
    let path = write_instance(
        "set_4_2.json",
        r#"{"model":"set","universe_size":4,"range":[0,1]}"#,
    );
    let out = run(&[
        "relations",
        "--instance",
        path.to_str().unwrap(),
        "--rel",
        "Dstar",
        "--format",
        "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("label=").count(), 2);
}

#[test]
fn witness_reports_verified_postcondition() {
    let path = set_3_2();
    let out = run(&[
        "witness",
        "--instance",
        path.to_str().unwrap(),
        "--op",
        "regularize",
        "--args",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["postcondition"], "verified");
    assert_eq!(parsed["result"]["img"], serde_json::json!([0, 1, 1]));
    // violated precondition surfaces as input error
    let bad = run(&[
        "witness",
        "--instance",
        path.to_str().unwrap(),
        "--op",
        "regularize",
        "--args",
        "0",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    // out-of-range element index likewise
    let oob = run(&[
        "witness",
        "--instance",
        path.to_str().unwrap(),
        "--op",
        "rank-drop",
        "--args",
        "99,1",
    ]);
    assert_eq!(oob.status.code(), Some(2));
}

#[test]
fn unknown_relation_is_rejected() {
    let path = set_3_2();
    let out = run(&[
        "relations",
        "--instance",
        path.to_str().unwrap(),
        "--rel",
        "Zstar",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ideals_report_theorem_forms_and_chain() {
    let path = set_3_2();
    let out = run(&["ideals", "--instance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["ideals"].as_array().unwrap().len(), 3);
    assert_eq!(parsed["hasse_edges"], serde_json::json!([[0, 1], [1, 2]]));
    assert_eq!(parsed["incomparable"]["outcome"], "not_applicable");
}

#[test]
fn relations_csv_output() {
    let path = set_3_2();
    let out = run(&[
        "relations",
        "--instance",
        path.to_str().unwrap(),
        "--rel",
        "Lstar",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("class,element,label"));
    assert_eq!(text.lines().count(), 9); // header + 8 elements
}

#[test]
fn bundled_instances_match_the_corpus() {
    // the committed instance files must stay in sync with the corpus
    let repo_instances = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances");
    let dir = std::env::temp_dir().join("restricted-range-corpus-sync");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run(&["corpus", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for entry in std::fs::read_dir(&dir).unwrap() {
        let fresh = entry.unwrap();
        let committed = repo_instances.join(fresh.file_name());
        let a = std::fs::read_to_string(fresh.path()).unwrap();
        let b = std::fs::read_to_string(&committed)
            .unwrap_or_else(|_| panic!("missing {}", committed.display()));
        assert_eq!(a, b, "{} drifted from the corpus", committed.display());
    }
}

#[test]
fn corpus_roundtrips_through_enumerate() {
    let dir = std::env::temp_dir().join("restricted-range-corpus-test");
    let _ = std::fs::remove_dir_all(&dir);
    let out = run(&["corpus", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let entries = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(entries, 11);
    let one = dir.join("set_5_3.json");
    let enumerate = run(&["enumerate", "--instance", one.to_str().unwrap()]);
    assert_eq!(enumerate.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&enumerate.stdout).unwrap();
    assert_eq!(parsed["element_count"], 243);
}
