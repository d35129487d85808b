use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cpint-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, file: &str, json: &str) -> PathBuf {
    let p = dir.join(file);
    fs::write(&p, json).unwrap();
    p
}

fn cpint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpint")).args(args).output().unwrap()
}

fn stdout_f64(out: &Output) -> f64 {
    String::from_utf8_lossy(&out.stdout).trim().parse().unwrap()
}

const RAMP: &str = r#"{"kind":"primitive","breakpoints":[0,1],"pieces":[[0,1]],"right_tail":1}"#;
const TENT: &str = r#"{"kind":"primitive","breakpoints":[0,1,2],"pieces":[[0,1],[1,-1]]}"#;
const STEP: &str = r#"{"kind":"bv","breakpoints":[0],"pieces":[],"right_tail":1}"#;
const BOX: &str = r#"{"kind":"l1","breakpoints":[0,1],"pieces":[[1]]}"#;
const BUMP: &str = r#"{"kind":"test","breakpoints":[-1,0,1,2,3],
  "pieces":[[0,0,0,0.16666666666666666],[0.16666666666666666,0.5,0.5,-0.5],[0.6666666666666666,0,-1,0.5],[0.16666666666666666,-0.5,0.5,-0.16666666666666666]]}"#;

#[test]
fn integrate_over_extended_line() {
    let d = scratch("integrate");
    let f = write(&d, "f.json", RAMP);
    let out = cpint(&["integrate", "--f", f.to_str().unwrap(), "--a", "-inf", "--b", "inf"]);
    assert!(out.status.success());
    assert_eq!(stdout_f64(&out), 1.0);
    let out = cpint(&["integrate", "--f", f.to_str().unwrap(), "--a", "0", "--b", "0.5"]);
    assert_eq!(stdout_f64(&out), 0.5);
}

#[test]
fn norms_and_variation() {
    let d = scratch("norms");
    let f = write(&d, "f.json", TENT);
    assert_eq!(stdout_f64(&cpint(&["norm", "--f", f.to_str().unwrap()])), 1.0);
    assert_eq!(stdout_f64(&cpint(&["norm", "--f", f.to_str().unwrap(), "--prime"])), 1.0);
    let g = write(&d, "g.json", STEP);
    assert_eq!(stdout_f64(&cpint(&["variation", "--g", g.to_str().unwrap()])), 1.0);
    let point = write(&d, "p.json", r#"{"kind":"bv","breakpoints":[0],"pieces":[],"point_values":[[0,1]]}"#);
    assert_eq!(stdout_f64(&cpint(&["variation", "--g", point.to_str().unwrap()])), 2.0);
    assert_eq!(stdout_f64(&cpint(&["variation", "--g", point.to_str().unwrap(), "--essential"])), 0.0);
}

#[test]
fn convolve_writes_json_and_csv() {
    let d = scratch("convolve");
    let f = write(&d, "f.json", TENT);
    let g = write(&d, "g.json", STEP);
    let h = d.join("h.json");
    let csv = d.join("h.csv");
    let out = cpint(&[
        "convolve", "--f", f.to_str().unwrap(), "--g", g.to_str().unwrap(), "--out", h.to_str().unwrap(),
        "--sample", csv.to_str().unwrap(), "--grid", "-1:3:0.5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let back: serde_json::Value = serde_json::from_str(&fs::read_to_string(&h).unwrap()).unwrap();
    assert_eq!(back["kind"], "bv");
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,value");
    assert_eq!(lines.len(), 1 + 9);
    assert_eq!(lines[5], "1,1");
}

#[test]
fn mollify_and_pair() {
    let d = scratch("mollify");
    let f = write(&d, "f.json", TENT);
    let g = write(&d, "g.json", BOX);
    let out = cpint(&["mollify", "--f", f.to_str().unwrap(), "--g", g.to_str().unwrap(), "--t", "0.5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "primitive");
    let bad = cpint(&["mollify", "--f", f.to_str().unwrap(), "--g", g.to_str().unwrap(), "--t", "0"]);
    assert_eq!(bad.status.code(), Some(2));

    let ramp = write(&d, "ramp.json", RAMP);
    let phi = write(&d, "phi.json", BUMP);
    let v = stdout_f64(&cpint(&["pair", "--f", ramp.to_str().unwrap(), "--phi", phi.to_str().unwrap()]));
    // The ramp pairs to ∫_0^1 φ; the spline is symmetric about 1 with mass 1/24 on [-1, 0].
    assert!((v - 11.0 / 24.0).abs() < 1e-14, "{v}");
}

#[test]
fn check_reports_and_exit_codes() {
    let d = scratch("check");
    let report = d.join("r.json");
    let out = cpint(&["check", "--suite", "translation", "--seed", "7", "--trials", "30", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["suite"], "translation");
    assert_eq!(v["failures"], 0);
    assert!(v["worst_slack"].as_f64().unwrap() <= 1e-12);
    assert_eq!(cpint(&["check", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn oracle_calibration_case() {
    let d = scratch("oracle");
    let f = write(&d, "f.json", RAMP);
    let g = write(&d, "g.json", STEP);
    let out = cpint(&["oracle", "convolve", "--f", f.to_str().unwrap(), "--g", g.to_str().unwrap(), "--x", "0.5", "--tol", "1e-10"]);
    assert!((stdout_f64(&out) - 0.5).abs() < 1e-10);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(cpint(&["norm", "--f", "/nonexistent/f.json"]).status.code(), Some(2));
    let d = scratch("errors");
    let g = write(&d, "g.json", STEP);
    // A BV file where a distribution is expected.
    assert_eq!(cpint(&["norm", "--f", g.to_str().unwrap()]).status.code(), Some(2));
    let gap = write(&d, "gap.json", r#"{"kind":"primitive","breakpoints":[0,1],"pieces":[[0.5,1]],"right_tail":1.5}"#);
    assert_eq!(cpint(&["norm", "--f", gap.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(cpint(&["bogus"]).status.code(), Some(2));
}
