use std::process::Command as Process;

use clap::Parser;
use midhankel::laguerre::moment_i;
use midhankel_cli::battery::MomentTable;
use midhankel_cli::commands;
use midhankel_cli::config::RunConfig;
use midhankel_cli::{run, Cli, EXIT_OK, EXIT_VALIDATION, EXIT_VERIFICATION};
use num_bigint::BigInt;
use serde_json::Value;

fn cli(args: &[&str]) -> Cli {
    Cli::try_parse_from(std::iter::once("midhankel").chain(args.iter().copied())).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&cli(&all)).unwrap();
    (serde_json::from_str(&out.stdout).unwrap(), out.code)
}

fn at_m(rows: &Value) -> Vec<f64> {
    rows.as_array()
        .unwrap()
        .iter()
        .map(|r| r["norm_sq_at_m"].as_f64().unwrap())
        .collect()
}

fn binary(args: &[&str]) -> (String, String, i32) {
    let out = Process::new(env!("CARGO_BIN_EXE_midhankel"))
        .args(args)
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn norms_examples() {
    let (doc, code) = json(&["norms", "--s", "2", "--N", "2", "--m", "1", "--n-max", "10"]);
    assert_eq!(code, EXIT_OK);
    assert!(at_m(&doc["rows"])[2..].iter().all(|&v| v == 2.0));
    assert_eq!(doc["observed_sup"], 2.0);

    let (doc, _) = json(&["norms", "--s", "2", "--N", "1", "--n-max", "5"]);
    assert_eq!(at_m(&doc["rows"]), vec![2.0, 6.0, 10.0, 14.0, 18.0, 22.0]);
    assert_eq!(doc["all_agree"], true);

    let (doc, _) = json(&["norms", "--s", "1", "--N", "2", "--n-max", "8"]);
    assert!(at_m(&doc["rows"]).iter().all(|&v| v == 0.0));
}

#[test]
fn norms_scale_with_m() {
    // s!/m^s at m = 1/2 for s = N = 3
    let (doc, _) = json(&["norms", "--s", "3", "--N", "3", "--m", "1/2", "--n-max", "6"]);
    assert!(at_m(&doc["rows"]).iter().all(|&v| v == 48.0));
    let exact = &doc["rows"][4]["norm_sq_exact"];
    assert_eq!(exact, &serde_json::json!({"terms": [[-6, "6/1"]]}));
}

#[test]
fn classify_examples() {
    let verdicts = |args: &[&str]| {
        let (doc, _) = json(args);
        doc["classifications"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| (c["verdict"].as_str().unwrap().to_owned(), c["evidence"].clone()))
            .collect::<Vec<_>>()
    };
    let v = verdicts(&["classify", "--symbol", "1,0,1", "--N", "2"]);
    assert_eq!(v[0].0, "bounded_noncompact");
    let v = verdicts(&["classify", "--symbol", "5", "--N", "1"]);
    assert_eq!(v[0].0, "zero");
    let v = verdicts(&["classify", "--symbol", "0,0,0,1", "--N", "1"]);
    assert_eq!(v[0].0, "unbounded");
    assert_eq!(v[0].1, serde_json::json!({"degree": 2}));
    let v = verdicts(&["classify", "--symbol", "0,3", "--N", "2"]);
    assert_eq!((v[0].0.as_str(), v[1].0.as_str()), ("zero", "compact"));
}

#[test]
fn solve_dbar_examples() {
    let (doc, code) = json(&["solve-dbar", "--rhs", "1", "--N", "1", "--m", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["u"], serde_json::json!({"terms": [[1, 0, {"terms": [[0, "1/1"]]}]]}));
    // ‖z̄‖² = 1/m²
    assert_eq!(doc["norm_sq_exact"], serde_json::json!({"terms": [[-4, "1/1"]]}));
    assert!((doc["norm_sq_at_m"].as_f64().unwrap() - 1.0 / 9.0).abs() < 1e-16);

    let (doc, _) = json(&["solve-dbar", "--symbol", "0", "--N", "3"]);
    assert_eq!(doc["u"], serde_json::json!({"terms": []}));

    let (doc, code) = json(&["solve-dbar", "--rhs", "0,1", "--N", "1", "--m", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["norm_sq_at_m"], 1.0);
    assert_eq!(doc["residual_ok"], true);
    assert_eq!(doc["orthogonal_ok"], true);
    assert_eq!(doc["minimality_ok"], true);
}

#[test]
fn project_rows_agree_and_include_zero_branch() {
    let (doc, code) = json(&["project", "--s", "5", "--N", "2", "--n-max", "7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["all_agree"], true);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    // s - n >= N
    for row in &rows[..4] {
        assert_eq!(row["projection"], serde_json::json!({"terms": []}));
    }
    assert_ne!(rows[4]["projection"], serde_json::json!({"terms": []}));

    let (doc, _) = json(&["project", "--s", "0", "--n", "3", "--N", "1"]);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 1);
    assert_eq!(doc["rows"][0]["projection"], serde_json::json!({"terms": [[0, 3, {"terms": [[0, "1/1"]]}]]}));
}

#[test]
fn verify_default_passes() {
    let out = run(&cli(&["verify", "--N", "2"])).unwrap();
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.warnings.is_empty());
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("category,checks,failures,status,first_failure"));
    assert_eq!(lines.count(), 6);
}

struct Corrupted;

impl MomentTable for Corrupted {
    fn moment(&self, a: u32, b: u32, c: u32) -> BigInt {
        let exact = moment_i(a, b, c);
        if (a, b, c) == (3, 2, 1) {
            exact + 1
        } else {
            exact
        }
    }
}

#[test]
fn verify_fails_on_corrupted_moments() {
    let cfg = RunConfig::resolve(&cli(&["verify", "--n-max", "5", "--format", "json"]).flags).unwrap();
    let out = commands::verify(&cfg, &Corrupted).unwrap();
    assert_eq!(out.code, EXIT_VERIFICATION);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["report"]["passed"], false);
    let failing: Vec<&str> = doc["report"]["categories"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["failures"].as_u64().unwrap() > 0)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["identities", "oracle_agreement"]);
}

#[test]
fn verify_empty_sweep_warns() {
    let out = run(&cli(&["verify", "--n-max", "0"])).unwrap();
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.warnings.len(), 1);
    let (_, stderr, code) = binary(&["verify", "--n-max", "0"]);
    assert_eq!(code, EXIT_OK);
    assert!(stderr.starts_with("warning: empty sweep"));
}

#[test]
fn csv_schema() {
    let (stdout, _, code) = binary(&["norms", "--s", "2", "--N", "1", "--m", "3/7", "--n-max", "3"]);
    assert_eq!(code, EXIT_OK);
    let mut reader = csv::Reader::from_reader(stdout.as_bytes());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["n", "norm_sq_exact", "norm_sq_at_m", "source", "agree"]
    );
    for (n, record) in reader.records().enumerate() {
        let record = record.unwrap();
        assert_eq!(record[0].parse::<usize>().unwrap(), n);
        let exact: midhankel::Scalar = serde_json::from_str(&record[1]).unwrap();
        let mantissa = record[2].split('e').next().unwrap().replace(['-', '.'], "");
        assert_eq!(mantissa.len(), 17);
        let value: f64 = record[2].parse().unwrap();
        let m = midhankel::parse_rational("3/7").unwrap();
        assert_eq!(value, exact.eval(&m).unwrap());
        assert_eq!(&record[4], "true");
    }
}

#[test]
fn deterministic_output() {
    for args in [
        &["verify", "--n-max", "6", "--seed", "11", "--format", "json"][..],
        &["solve-dbar", "--rhs", "1/2,-1,0,3", "--N", "2", "--seed", "4"][..],
        &["norms", "--s", "3", "--N", "1", "--m", "2/3", "--n-max", "9"][..],
    ] {
        let first = binary(args);
        let second = binary(args);
        assert_eq!(first, second);
        assert_eq!(first.2, EXIT_OK);
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"m": "1/2", "N": 2, "s": 2, "n_max": 3, "format": "json"}"#).unwrap();
    let path = path.to_str().unwrap();

    let (stdout, _, code) = binary(&["norms", "--config", path]);
    assert_eq!(code, EXIT_OK);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["m"], "1/2");
    assert_eq!(at_m(&doc["rows"]), vec![8.0; 4]);

    let (stdout, _, _) = binary(&["norms", "--config", path, "--m", "2", "--n-max", "1"]);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(at_m(&doc["rows"]), vec![0.5; 2]);

    std::fs::write(dir.path().join("bad.json"), r#"{"mm": 1}"#).unwrap();
    let bad = dir.path().join("bad.json");
    let (_, stderr, code) = binary(&["norms", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(stderr.contains("bad config"));
}

#[test]
fn validation_errors_exit_one() {
    for args in [
        &["norms", "--s", "1", "--m", "-1"][..],
        &["norms", "--s", "1", "--m", "0"][..],
        &["norms", "--s", "1", "--N", "0"][..],
        &["norms"][..],
        &["classify"][..],
        &["classify", "--symbol", "z+1"][..],
        &["classify", "--symbol", ""][..],
        &["solve-dbar"][..],
        &["project", "--n", "2"][..],
        &["frobnicate"][..],
        &["norms", "--format", "xml"][..],
    ] {
        let (stdout, stderr, code) = binary(args);
        assert_eq!(code, EXIT_VALIDATION, "{args:?}: {stderr}");
        assert!(stdout.is_empty());
        assert!(!stderr.is_empty());
    }
    let (_, _, code) = binary(&["--help"]);
    assert_eq!(code, EXIT_OK);
}
