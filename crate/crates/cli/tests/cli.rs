use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berger-g2")).args(args).output().expect("binary runs")
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn entry<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["check_id"] == id)
        .unwrap_or_else(|| panic!("missing {id}"))
}

fn values_close(a: &Value, b: &Value) -> bool {
    match (a.as_f64(), b.as_f64()) {
        (Some(x), Some(y)) => (x - y).abs() < 1e-12,
        _ => a == b,
    }
}

#[test]
fn verify_all_passes_with_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("all.json");
    let out = run(&["verify", "all", "--json", json.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&json);
    assert_eq!(r["version"], "1");
    let entries = r["entries"].as_array().unwrap();
    assert!(entries.len() > 90);
    for e in entries {
        assert_ne!(e["status"], "fail", "{}", e["check_id"]);
        for key in ["check_id", "paper_anchor", "status", "residual", "runtime_ms", "details"] {
            assert!(e.get(key).is_some(), "{key} missing");
        }
    }
}

#[test]
fn no_timings_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = run(&["verify", "flag", "--no-timings", "-q", "--json", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn measured_values_match_golden() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("m.json");
    assert_eq!(run(&["verify", "all", "-q", "--json", json.to_str().unwrap()]).status.code(), Some(0));
    let r = report(&json);
    let golden: Value = serde_json::from_str(include_str!("golden/measured.json")).unwrap();
    for (id, fields) in golden.as_object().unwrap() {
        let details = &entry(&r, id)["details"];
        for (k, v) in fields.as_object().unwrap() {
            assert!(values_close(&details[k], v), "{id}.{k}: {} != {v}", details[k]);
        }
    }
    let constants = entry(&r, "cohom1.half_flat.constant")["details"]["exact"].as_array().unwrap();
    assert!(!constants.is_empty());
    for c in constants {
        assert_eq!(c[0], "-2/1");
        assert!(c.as_array().unwrap()[1..].iter().all(|x| x == "0/1"));
    }
}

#[test]
fn classify_z6_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("z6.csv");
    let out = run(&["classify", "--group", "Z6", "--csv", csv_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 7);
    let associative = rows.iter().filter(|r| &r[4] == "true").count();
    assert_eq!(associative, 3);
    assert!(rows.iter().all(|r| &r[6] == "true"));
}

#[test]
fn intersect_veronese_finds_twenty_points() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("v.json");
    let out = run(&["intersect-veronese", "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&json);
    let count = entry(&r, "veronese.intersection_count");
    assert_eq!(count["details"]["points"].as_array().unwrap().len(), 20);
    assert_eq!(count["details"]["nu_images"], 10);
}

#[test]
fn orbit_and_scan_subcommands() {
    let out = run(&["orbit", "--case", "oct2", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS orbit.oct2"));

    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("p.csv");
    let out = run(&["scan-grassmannian", "--family", "P", "--steps", "12", "--csv", csv_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<csv::StringRecord> = csv::Reader::from_path(&csv_path).unwrap().records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    for r in &rows {
        assert!(r[2].parse::<f64>().unwrap().abs() <= 1.0 + 1e-12);
    }
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(run(&["--tol=0", "verify", "g2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--group", "Q9"]).status.code(), Some(2));
    assert_eq!(run(&["orbit", "--case", "o999"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "cohom1", "--t-samples", "0"]).status.code(), Some(2));
    assert_eq!(run(&["scan-grassmannian", "--family", "Z", "--steps", "3"]).status.code(), Some(2));
}

#[test]
fn float_mode_passes() {
    let out = run(&["--mode", "float", "verify", "all", "-q"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
