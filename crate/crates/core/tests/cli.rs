use std::io::Write;
use std::process::{Command, Stdio};

use nonlocality::cli::run;
use nonlocality::qcore::QuantumState;
use nonlocality::witness::{planar_singlet_scenario, Scenario};
use serde_json::Value;

fn run_with(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nonlocality").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_args(args: &[&str]) -> (i32, String, String) {
    run_with(args, "")
}

fn json_of(args: &[&str]) -> Value {
    let (code, out, err) = run_args(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("nonlocality-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn lhv_check_reports_infeasible_q() {
    let v = json_of(&["--json", "lhv-check", "--q", "0,0,0,0.05"]);
    assert_eq!(v["feasible"], Value::Bool(false));
    assert!(v["witness"].is_null());
    let (code, out, _) = run_args(&["lhv-check", "--q", "0.25,0.25,0.25,0.25"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("feasible: true"));
}

#[test]
fn vertices_list_all_deterministic_strategies() {
    let (code, out, _) = run_args(&["vertices", "--csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 16);
    for row in rows {
        let value = row.rsplit(',').next().unwrap();
        assert!(value == "0" || value == "1", "{row}");
    }
    let tri = json_of(&["--json", "vertices", "--trichotomic"]);
    assert_eq!(tri.as_array().unwrap().len(), 36);
}

#[test]
fn demo_singlet_shows_upper_violation() {
    let v = json_of(&["--json", "demo", "singlet"]);
    let report = &v["report"];
    let expected = (1.0 + std::f64::consts::SQRT_2) / 2.0;
    assert!((report["generalized"].as_f64().unwrap() - expected).abs() < 1e-9);
    assert!((report["ch"].as_f64().unwrap() - expected).abs() < 1e-9);
    assert_eq!(report["class"], "UpperBoundViolation");
    let (code, out, _) = run_args(&["demo", "singlet"]);
    assert_eq!(code, 0);
    assert!(out.contains("1.20710678"));
}

#[test]
fn eval_reads_files_and_stdin() {
    let state = temp_file("singlet.json", &QuantumState::singlet().to_json());
    let scenario = temp_file("scenario.json", &planar_singlet_scenario().to_json());
    let (s, sc) = (state.to_str().unwrap(), scenario.to_str().unwrap());
    let from_files = json_of(&["--json", "eval", "--state", s, "--scenario", sc]);
    let (code, out, _) = run_with(
        &["--json", "eval", "--state", "-", "--scenario", sc],
        &QuantumState::singlet().to_json(),
    );
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap(), from_files);
    assert_eq!(from_files["class"], "UpperBoundViolation");
}

#[test]
fn json_keys_are_stable() {
    let keys = |v: &Value| {
        let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
        k.sort();
        k
    };
    let report = json_of(&["--json", "demo", "singlet"]);
    assert_eq!(keys(&report), ["deviation", "expected", "report"]);
    assert_eq!(keys(&report["report"]), ["ch", "class", "generalized", "q"]);
    let lhv = json_of(&["--json", "lhv-check", "--q", "0.1,0.1,0.1,0.1"]);
    assert_eq!(keys(&lhv), ["feasible", "residual", "witness"]);
    let hardy = json_of(&["--json", "hardy", "--theta", "0.3"]);
    assert_eq!(keys(&hardy), ["angles", "report", "residual", "scenario", "theta"]);
}

#[test]
fn hardy_scenario_round_trips_through_eval() {
    let hardy = json_of(&["--json", "hardy", "--theta", "0.392699"]);
    assert_eq!(hardy["report"]["class"], "HardyViolation");
    let sc_text = hardy["scenario"].to_string();
    Scenario::from_json(&sc_text).unwrap();
    let scenario = temp_file("hardy-scenario.json", &sc_text);
    let state = temp_file("schmidt.json", &QuantumState::schmidt(0.392699).to_json());
    let v = json_of(&[
        "--json",
        "eval",
        "--state",
        state.to_str().unwrap(),
        "--scenario",
        scenario.to_str().unwrap(),
    ]);
    let q4 = v["q"][3].as_f64().unwrap();
    assert!((q4 - hardy["report"]["q"][3].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn sweep_emits_csv_with_header() {
    let (code, out, _) = run_args(&["sweep", "--family", "werner", "--lo", "0", "--hi", "1", "--steps", "4"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "parameter,q1,q2,q3,q4,q5,q6,generalized,ch");
    assert_eq!(lines.count(), 5);
}

#[test]
fn exit_codes_distinguish_usage_and_domain_errors() {
    let (code, _, err) = run_args(&["no-such-command"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let (code, _, err) = run_args(&["lhv-check", "--q", "0.1,0.2"]);
    assert_eq!(code, 3);
    assert!(err.starts_with("error: InvalidQVector"), "{err}");
    let (code, _, err) = run_args(&["hardy", "--theta", "0"]);
    assert_eq!(code, 3);
    assert!(err.contains("NotEntangled"), "{err}");
    let (code, _, err) = run_with(&["eval", "--state", "-", "--scenario", "-"], "{not json");
    assert_eq!(code, 3);
    assert!(err.contains("MalformedJson"), "{err}");
    let (code, out, _) = run_args(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn binary_output_is_reproducible_for_a_seed() {
    let bin = env!("CARGO_BIN_EXE_nonlocality");
    let state = QuantumState::werner(0.9).unwrap().to_json();
    let invoke = || {
        let mut child = Command::new(bin)
            .args(["--json", "optimize", "--state", "-", "--objective", "upper", "--restarts", "4", "--seed", "7"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child.stdin.take().unwrap().write_all(state.as_bytes()).unwrap();
        let output = child.wait_with_output().unwrap();
        assert!(output.status.success());
        output.stdout
    };
    let first = invoke();
    assert_eq!(first, invoke());
    let v: Value = serde_json::from_slice(&first).unwrap();
    assert!(v["value"].as_f64().unwrap() > 1.0);
}

#[test]
fn binary_exit_code_on_bad_input() {
    let status = Command::new(env!("CARGO_BIN_EXE_nonlocality"))
        .args(["lhv-check", "--q", "nope"])
        .stderr(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}
