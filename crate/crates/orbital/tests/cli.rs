//! End-to-end tests of the command-line binary: golden output, format
//! validity, determinism, and exit codes.

use std::process::{Command, Output};

fn orbital(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbital"))
        .args(args)
        .output()
        .expect("failed to launch binary")
}

fn stdout(args: &[&str]) -> String {
    let out = orbital(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn catalog_table_matches_golden() {
    let got = stdout(&["catalog", "--format", "table"]);
    let want = include_str!("golden/catalog_table.txt");
    assert_eq!(got, want, "catalog table drifted from the frozen golden output");
}

#[test]
fn catalog_json_is_valid_and_complete() {
    let got = stdout(&["catalog", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&got).unwrap();
    let rows = doc.as_array().unwrap();
    assert_eq!(rows.len(), 115);
    // Spot check an exceptional row.
    let fii = rows.iter().find(|r| r["class"] == "FII").unwrap();
    assert_eq!(fii["root_system"], "BC1");
    assert_eq!(fii["dim"], 16);
    assert_eq!(fii["mults"], serde_json::json!([0, 8, 7]));
}

#[test]
fn catalog_csv_has_header_and_rows() {
    let got = stdout(&["catalog", "--format", "csv", "--max-rank", "2"]);
    let mut lines = got.lines();
    assert_eq!(lines.next().unwrap(), "class,roots,p,rank,dim,eta0,eta1,eta2");
    assert!(got.lines().count() > 10);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["catalog", "--format", "json"],
        vec!["subsystems", "--class", "AIII", "--rank", "2", "--p", "3", "--format", "json"],
        vec!["rank1-phi", "--t", "1.0", "--lambda-max", "50", "--samples", "11"],
    ] {
        let a = stdout(&args);
        let b = stdout(&args);
        assert_eq!(a, b, "{args:?} is not deterministic");
    }
}

#[test]
fn scalar_queries() {
    assert_eq!(stdout(&["rho", "--class", "EIII", "--rank", "2"]).trim(), "15");
    assert_eq!(stdout(&["kgate", "--class", "AII", "--rank", "3"]).trim(), "15/4");
    assert_eq!(stdout(&["kgate", "--class", "EIX"]).trim(), "19");
    assert_eq!(stdout(&["threshold", "--class", "AI", "--rank", "1"]).trim(), "3");
    assert_eq!(stdout(&["threshold", "--class", "CI", "--rank", "4"]).trim(), "2");
    let v = stdout(&["l2gate", "--class", "AIII", "--rank", "2", "--p", "3", "--k", "5"]);
    assert!(v.starts_with("IN_L2"), "{v}");
    let v = stdout(&["l2gate", "--class", "AIII", "--rank", "2", "--p", "3", "--k", "3"]);
    assert!(v.starts_with("UNDECIDED"), "{v}");
    assert_eq!(
        stdout(&["diff", "--class", "AII", "--rank", "2", "--k", "8", "--regular"]).trim(),
        "21"
    );
}

#[test]
fn subsystems_json_lists_bc2_four() {
    let got = stdout(&["subsystems", "--class", "AIII", "--rank", "2", "--p", "3", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&got).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 4);
}

#[test]
fn rank1_phi_emits_csv() {
    let got = stdout(&["rank1-phi", "--t", "0.5", "--lambda-max", "10", "--samples", "6"]);
    let mut lines = got.lines();
    assert_eq!(lines.next().unwrap(), "lambda,phi");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    let phi0: f64 = first[1].parse().unwrap();
    assert!(phi0 > 0.9 && phi0 <= 1.0);
    assert_eq!(got.lines().count(), 7);
}

#[test]
fn usage_errors_exit_2() {
    // Unknown flag (handled by the argument parser).
    assert_eq!(orbital(&["catalog", "--bogus"]).status.code(), Some(2));
    // Unknown class.
    assert_eq!(orbital(&["rho", "--class", "ZZ", "--rank", "2"]).status.code(), Some(2));
    // Domain violation: p < rank.
    assert_eq!(
        orbital(&["rho", "--class", "AIII", "--rank", "3", "--p", "2"]).status.code(),
        Some(2)
    );
    // Odd k for the differentiability order.
    assert_eq!(
        orbital(&["diff", "--class", "AI", "--rank", "3", "--k", "5"]).status.code(),
        Some(2)
    );
    // Subsystems of an exceptional family.
    assert_eq!(orbital(&["subsystems", "--class", "G"]).status.code(), Some(2));
}

#[test]
fn verification_commands() {
    // A quick verify-counts pass at small rank.
    let out = orbital(&["verify-counts", "--max-rank", "2", "--probes", "200"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("ok")));
    // A threshold that cannot be met exits 3.
    let out = orbital(&["verify-counts", "--max-rank", "2", "--probes", "200", "--cg", "5"]);
    assert_eq!(out.status.code(), Some(3));
}
