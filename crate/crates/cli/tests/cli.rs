use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lemnisum")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn alpha_table_has_ten_rows_and_schema() {
    let out = run(&["tables", "--what", "alpha"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0]["value"], "1/1536");
    assert_eq!(rows[9]["value"], "392931/21474836480");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["conjecture", "--pmax", "3"][..],
        &["tables", "--what", "plus2", "--format", "text"],
        &["integral", "--kind", "minus2", "--p", "1", "--numeric", "--prec", "96"],
        &["relations", "--which", "plus-square", "--a", "1", "--prec", "96"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn conjecture_reports_every_relation() {
    let v = json(&run(&["conjecture", "--pmax", "8"]));
    let rows = v["entries"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r["g_relation_ok"] == true && r["h_relation_ok"] == true));
    assert_eq!(rows[0]["i"], "-1/256");
}

#[test]
fn invalid_configuration_exits_with_two() {
    for args in [
        &["--prec", "32", "conjecture"][..],
        &["conjecture", "--pmax", "0"],
        &["sum", "--family", "sinh2", "--exp", "3"],
        &["sum", "--family", "tanh", "--exp", "2"],
        &["integral", "--kind", "minus2", "--p", "0"],
        &["integral", "--kind", "plus1"],
        &["relations", "--which", "minus-square", "--a", "3"],
        &["tables", "--what", "delta"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn progress_goes_to_stderr() {
    let out = run(&["sum", "--family", "cosh2", "--exp", "2", "--numeric", "--prec", "96"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["agrees"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("summing"));
}

#[test]
fn precision_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lemnisum"))
        .args(["conjecture", "--pmax", "1"])
        .env("LEMNISUM_PREC", "128")
        .output()
        .unwrap();
    assert_eq!(json(&out)["prec"], 128);
}

#[test]
fn verify_passes_at_moderate_precision() {
    let out = run(&["verify", "--prec", "136", "--pmax", "8", "--format", "text"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("failed: 0"));
    assert!(!text.contains("runtime_ms"));
    assert!(text.contains("status=exact_pass") && text.contains("status=numeric_pass"));
}
