//! CLI behavior: exit codes, output shapes, JSON round-trip.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eulergamma"))
}

#[test]
fn compute_plain_digit_length() {
    let out = bin().args(["compute", "--digits", "12"]).output().unwrap();
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert_eq!(s.trim(), "0.577215664901");
    assert_eq!(s.trim().len(), 14); // "0." + D digits
}

#[test]
fn compute_parameter_invariance_through_flags() {
    let a = bin()
        .args(["compute", "--digits", "50"])
        .output()
        .unwrap()
        .stdout;
    let b = bin()
        .args([
            "compute",
            "--digits",
            "50",
            "--x",
            "2.718281828459045",
            "--w",
            "2",
        ])
        .output()
        .unwrap()
        .stdout;
    assert_eq!(a, b);
}

#[test]
fn compute_json_round_trips_byte_identical() {
    let out = bin()
        .args(["compute", "--digits", "30", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let raw = String::from_utf8(out.stdout).unwrap();
    let line = raw.trim();
    let v: serde_json::Value = serde_json::from_str(line).unwrap();
    assert_eq!(serde_json::to_string(&v).unwrap(), line);
    // exact field order per the report schema
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "command",
            "x",
            "w",
            "digits",
            "formula",
            "result",
            "error_exp10",
            "n1",
            "n2",
            "n3",
            "elapsed_ms",
            "pass"
        ]
    );
    assert_eq!(v["result"].as_str().unwrap().len(), 32);
    assert!(v["pass"].is_null());
}

#[test]
fn verify_json_round_trips() {
    let out = bin()
        .args(["verify", "--digits", "20", "--identities", "mellin", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let raw = String::from_utf8(out.stdout).unwrap();
    let line = raw.trim();
    let v: serde_json::Value = serde_json::from_str(line).unwrap();
    assert_eq!(serde_json::to_string(&v).unwrap(), line);
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
}

#[test]
fn exit_codes() {
    // 2: precondition violation names the hypothesis
    let out = bin()
        .args(["compute", "--digits", "10", "--x", "-1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("x > 0"), "stderr must cite the x > 0 requirement: {err}");

    // 2: unparseable flag value
    let out = bin()
        .args(["compute", "--digits", "ten"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // 2: unknown identity name
    let out = bin()
        .args(["verify", "--identities", "nosuch"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // 2: negative k rejected by flag parsing
    let out = bin()
        .args(["exponent", "--x", "1", "--w", "1", "--k", "-3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // 0: success
    let out = bin().args(["compute", "--digits", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_trivial_at_one_digit() {
    // tolerance 10^(-1+2) = 10: everything passes
    let out = bin()
        .args(["verify", "--digits", "1", "--grid", "default", "--identities", "all"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_custom_grid() {
    let out = bin()
        .args(["verify", "--digits", "30", "--grid", "1,1;2.5,0.5", "--identities", "c2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("grid:"), "grid summary missing: {s}");
}

#[test]
fn bench_single_row_renders() {
    let out = bin()
        .args(["bench", "--digits-list", "10"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = s.lines().collect();
    assert_eq!(rows.len(), 2, "header + one row: {s}");
    assert!(rows[0].contains("gamma_share"));
}

#[test]
fn exponent_known_small_case() {
    let out = bin()
        .args(["exponent", "--x", "1", "--w", "1", "--k", "0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert_eq!(s.trim(), "3.67879441171e-1");
}

#[test]
fn naive_formula_demonstration() {
    let out = bin()
        .args(["compute", "--digits", "8", "--formula", "naive", "--n", "10"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert_eq!(s.trim(), "0.62638316");
}
