use std::path::Path;
use std::process::{Command, Output};

use cli::ReportDoc;
use serde_json::Value;

fn ct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ct")).args(args).output().expect("ct runs")
}

fn compute(args: &[&str]) -> (Output, Value) {
    let mut full = vec!["compute"];
    full.extend_from_slice(args);
    let out = ct(&full);
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, json)
}

fn validate(doc: &Value) {
    let schema: Value = serde_json::from_str(cli::REPORT_SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{}: {e}", e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}");
}

const CIRCLE: [&str; 8] = ["--model", "circle", "--m", "6", "--L", "6", "--N", "2"];

#[test]
fn point_has_one_free_bar_at_degree_zero() {
    let (out, doc) = compute(&["--model", "point", "--theory", "s1", "--uorder", "3", "--grid", "0"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    validate(&doc);
    let p = &doc["per_T"][0];
    assert_eq!(p["T"], "0");
    assert_eq!(p["barcode"]["free"], serde_json::json!([0]));
    assert_eq!(p["barcode"]["torsion"], serde_json::json!([]));
    assert_eq!(p["eta"]["nonzero"], true);
}

#[test]
fn zl_of_order_one_is_the_non_equivariant_job() {
    let args = |theory: &'static str| {
        let mut a = CIRCLE.to_vec();
        a.extend(["--grid", "0,3", "--theory", theory]);
        a
    };
    let mut zl = args("zl");
    zl.extend(["--ell", "1"]);
    let (o1, a) = compute(&zl);
    let (o2, b) = compute(&args("noneq"));
    assert!(o1.status.success() && o2.status.success());
    let dims = |d: &Value| d["per_T"].as_array().unwrap().iter().map(|p| p["dims"].clone()).collect::<Vec<_>>();
    assert_eq!(dims(&a), dims(&b));
    assert_eq!(dims(&b)[0], serde_json::json!({"0": 1, "1": 1}));
}

#[test]
fn descending_grid_is_a_usage_error_naming_the_field() {
    let mut a = CIRCLE.to_vec();
    a.extend(["--theory", "noneq", "--grid", "3,0"]);
    let (out, _) = compute(&a);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("usage") && err.contains("grid"), "{err}");
}

#[test]
fn inconsistent_ncap_is_a_usage_error() {
    let (out, _) = compute(&["--model", "point", "--uorder", "3", "--ncap", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ncap"));
}

#[test]
fn empty_grid_passes_trivially() {
    let mut a = CIRCLE.to_vec();
    a.extend(["--theory", "noneq", "--grid", ""]);
    let (out, doc) = compute(&a);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    validate(&doc);
    assert_eq!(doc["per_T"], serde_json::json!([]));
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let mut a = CIRCLE.to_vec();
    a.extend(["--theory", "s1", "--uorder", "1", "--grid", "0,3"]);
    let (_, one) = compute(&[a.as_slice(), &["--jobs", "1"]].concat());
    let (_, again) = compute(&[a.as_slice(), &["--jobs", "1"]].concat());
    let (_, two) = compute(&[a.as_slice(), &["--jobs", "2"]].concat());
    assert_eq!(one, again);
    let strip = |mut v: Value| {
        v["config"].as_object_mut().unwrap().remove("jobs");
        v
    };
    assert_eq!(strip(one), strip(two));
}

#[test]
fn state_cap_overflow_is_recorded_and_fails_the_run() {
    let mut a = CIRCLE.to_vec();
    a.extend(["--theory", "noneq", "--grid", "0,3", "--state-cap", "2"]);
    let (out, doc) = compute(&a);
    assert_eq!(out.status.code(), Some(1));
    validate(&doc);
    let p = &doc["per_T"][0];
    assert_eq!(p["status"], "failed");
    assert_eq!(p["failure"]["kind"], "state-space overflow");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.json");
    std::fs::write(&cfg, r#"{"model": "circle", "m": 6, "L": "6", "N": 2, "theory": "noneq", "grid": [0, "3/2"]}"#).unwrap();
    let (out, doc) = compute(&["--config", cfg.to_str().unwrap(), "--grid", "0,3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let ts: Vec<&str> = doc["per_T"].as_array().unwrap().iter().map(|p| p["T"].as_str().unwrap()).collect();
    assert_eq!(ts, ["0", "3"]);
}

#[test]
fn unknown_config_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.json");
    std::fs::write(&cfg, r#"{"model": "point", "colour": 3}"#).unwrap();
    let (out, _) = compute(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

fn written(dir: &Path) -> (ReportDoc, String, Value) {
    let json = std::fs::read_to_string(dir.join("report.json")).unwrap();
    let csv = std::fs::read_to_string(dir.join("report.csv")).unwrap();
    (ReportDoc::from_json(&json).unwrap(), csv, serde_json::from_str(&json).unwrap())
}

#[test]
fn circle_report_validates_and_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let mut a = CIRCLE.to_vec();
    a.extend(["--theory", "s1", "--uorder", "2", "--kmax", "1", "--grid", "0,3", "--out", out_path.to_str().unwrap()]);
    let (out, _) = compute(&a);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let (doc, csv, raw) = written(dir.path());
    validate(&raw);
    assert!(doc.passed());
    assert_eq!(doc.capacities.as_ref().unwrap().values["1"], "inf");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("T,degree,rank"));
    assert!(lines.any(|l| l == "3,1,1"));
    let bars = ct(&["barcode", out_path.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&bars.stdout).contains("T = 3: [0,∞) [1,∞)"));
}

#[test]
fn integer_coefficients_report_ranks_without_bars() {
    let mut a = CIRCLE.to_vec();
    a.extend(["--theory", "s1", "--uorder", "1", "--coeff", "integer", "--grid", "0"]);
    let (out, doc) = compute(&a);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    validate(&doc);
    assert_eq!(doc["per_T"][0]["barcode"], Value::Null);
    assert_eq!(doc["per_T"][0]["torsion"], serde_json::json!({}));
}
