use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_photon-bell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn figure_writes_csv_to_stdout() {
    let out = run(&["figure", "--grid", "3x4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha_sq,xi_plus_eta,ch,chsh");
    assert_eq!(lines.len(), 13);
    assert!(lines[1].starts_with("0.666666667,0,"));
    assert!(lines[2].starts_with("0.666666667,1.57079633,"));
    assert!(text.ends_with('\n'));
}

#[test]
fn degrees_match_radians() {
    let deg = run(&["figure", "--grid", "2x3", "--degrees", "--dphi", "90", "--xi-minus-eta", "135"]);
    let rad = run(&["figure", "--grid", "2x3"]);
    assert_eq!(deg.status.code(), Some(0));
    assert_eq!(deg.stdout, rad.stdout);
}

#[test]
fn negative_angles_parse() {
    let out = run(&["figure", "--grid", "1x2", "--dphi", "-1.5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn bad_flags_are_configuration_errors() {
    for args in [
        &["figure", "--grid", "12"][..],
        &["figure", "--tol", "-1"],
        &["figure", "--cutoff-eps", "2"],
        &["optimize", "--restarts", "0"],
        &["verify", "--config", "/nonexistent/config.json"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for cmd in ["verify", "figure", "optimize", "split"] {
        assert!(text.contains(cmd));
    }
}

#[test]
fn split_reports_reference_settings() {
    let out = run(&["split"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert!((r["chsh_full"].as_f64().unwrap() - 1.1819387878290998).abs() < 1e-9);
    assert_eq!(r["lambda_below_classical_bound"], true);
    let terms = r["cross_terms"].as_array().unwrap();
    assert_eq!(terms[0]["label"], "|1,0,1,1>");
    assert_eq!(r["provenance"]["eq10_exponent_decision"], "e^{-alpha^2}");
}

#[test]
fn optimize_reports_seed_and_trace() {
    let out = run(&["optimize", "--restarts", "3", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["seed"], 11);
    assert_eq!(r["provenance"]["seed"], 11);
    assert_eq!(r["trace"].as_array().unwrap().len(), 3);
    assert_eq!(r["violation_found"], false);
    assert!(r["best"]["chsh"].as_f64().unwrap() < 2.0);
}
