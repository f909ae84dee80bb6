use std::process::{Command, Output};

use serde_json::Value;

fn qmass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmass"))
        .args(args)
        .env_remove("QMASS_JOBS")
        .output()
        .expect("run qmass")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn strip_elapsed(out: &Output) -> String {
    records(out)
        .into_iter()
        .map(|mut v| {
            v.as_object_mut().unwrap().remove("elapsed_ms");
            v.to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn witness_nine() {
    let out = qmass(&["witness", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    let o = &recs[0]["outputs"];
    assert_eq!(o["det"], serde_json::json!([1, 0]));
    assert_eq!(o["norm_square"], 9);
    assert_eq!(o["verified"], true);
    assert_eq!(recs[0]["version"], "1");
    assert_eq!(recs[0]["command"], "witness");
}

#[test]
fn dyadic_three() {
    let out = qmass(&["dyadic", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let o = &records(&out)[0]["outputs"];
    assert_eq!(o["raw_count"], 49152);
    assert_eq!(o["density"], serde_json::json!({"num": 3, "den": 2}));
    assert!(String::from_utf8_lossy(&out.stdout).contains(r#""density":{"num":3,"den":2}"#));
}

#[test]
fn witness_even_is_usage_error() {
    let out = qmass(&["witness", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n must be odd and ≥ 3"));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_subcommand() {
    let out = qmass(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn capacity_error_exits_2() {
    let out = qmass(&["count-gamma", "250"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
    let out = qmass(&["--max-n-count", "250", "count-gamma", "5"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn failed_witness_search_exits_1() {
    // 2*13 - 5 = 21 is not a sum of two squares, so the family alone fails
    let out = qmass(&["witness", "13", "--strategy", "family"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(records(&out)[0]["outputs"]["verified"], false);
}

#[test]
fn deterministic_output() {
    for args in [
        &["verify", "--from", "3", "--to", "41"][..],
        &["mass", "7", "--method", "truncated", "--prime-bound", "1000"],
        &["compare", "9"],
        &["audit", "3", "--to", "15"],
    ] {
        let a = qmass(args);
        let b = qmass(&[&["--jobs", "3"][..], args].concat());
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(strip_elapsed(&a), strip_elapsed(&b), "{args:?}");
    }
}

#[test]
fn verify_range_records() {
    let out = qmass(&["verify", "--from", "3", "--to", "99"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 49);
    let ns: Vec<u64> = recs.iter().map(|r| r["inputs"]["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, (3..=99).step_by(2).collect::<Vec<_>>());
    assert!(recs.iter().all(|r| r["outputs"]["verified"] == true));
}

#[test]
fn cache_hits_on_second_run() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("results.jsonl");
    let cache = cache.to_str().unwrap();
    let first = qmass(&["--cache", cache, "compare", "5"]);
    let second = qmass(&["--cache", cache, "compare", "5"]);
    let (a, b) = (&records(&first)[0], &records(&second)[0]);
    assert_eq!(a["cache_hit"], false);
    assert_eq!(b["cache_hit"], true);
    assert_eq!(a["outputs"], b["outputs"]);

    std::fs::write(dir.path().join("results.jsonl"), "garbage\n").unwrap();
    let third = qmass(&["--cache", cache, "compare", "5"]);
    assert_eq!(third.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&third.stderr).contains("skipping corrupt cache line"));
    assert_eq!(records(&third)[0]["cache_hit"], false);
}

#[test]
fn density_commands() {
    let out = qmass(&["density", "--p", "3", "--n", "11"]);
    let o = &records(&out)[0]["outputs"];
    assert_eq!(o["density"], serde_json::json!({"num": 80, "den": 81}));
    assert_eq!(o["branch"], "ramified");

    let out = qmass(&["density", "--p", "5", "--n", "3", "--t", "2", "--method", "oracle", "--mode", "reduced"]);
    assert_eq!(records(&out)[0]["outputs"]["density"], serde_json::json!({"num": 576, "den": 625}));

    let out = qmass(&["density", "--p", "5", "--n", "3", "--method", "oracle", "--mode", "naive", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = qmass(&["density", "--p", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_xf_reports_parity_gap() {
    let out = qmass(&["count-xf", "3"]);
    let o = &records(&out)[0]["outputs"];
    assert_eq!(o["count"], 192);
    assert_eq!(o["parity_count"], 64);
    assert_eq!(o["ratio"], 3.0);
}

#[test]
fn mass_and_archimedean() {
    let out = qmass(&["mass", "3"]);
    let o = &records(&out)[0]["outputs"];
    assert!((o["total"].as_f64().unwrap() - 192.0).abs() < 1e-6);
    assert_eq!(o["discriminant"], -20);
    let out = qmass(&["archimedean", "7"]);
    assert!((records(&out)[0]["outputs"]["density"].as_f64().unwrap() - 415.99).abs() < 0.01);
}

#[test]
fn other_output_formats() {
    let out = qmass(&["--output-format", "table", "dyadic", "5"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("raw_count"));
    let out = qmass(&["--output-format", "csv", "dyadic", "5"]);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.starts_with("command,inputs,outputs"));
}

#[test]
fn jobs_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qmass"))
        .args(["witness", "11"])
        .env("QMASS_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_qmass"))
        .args(["--jobs", "2", "witness", "11"])
        .env("QMASS_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
