use std::path::Path;
use std::process::{Command, Output};

fn semiquat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiquat")).current_dir(dir).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn construct_cos(dir: &Path, extra: &[&str]) {
    let mut args = vec!["construct", "--family", "thm34-i", "--base", "latitude:b=1", "--range", "-1.2:1.2", "--samples", "801", "-o", "c.json"];
    args.extend_from_slice(extra);
    let out = semiquat(dir, &args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn analyze_writes_three_files() {
    let tmp = tempfile::tempdir().unwrap();
    construct_cos(tmp.path(), &[]);
    let out = semiquat(tmp.path(), &["analyze", "c.json"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict=true"));
    for f in ["c.report.json", "c.plot.csv", "c.frenet.csv"] {
        assert!(tmp.path().join(f).exists(), "{f}");
    }
    let plot = std::fs::read_to_string(tmp.path().join("c.plot.csv")).unwrap();
    assert!(plot.starts_with("s,rho2,h_alpha_t,h_alpha_n1,h_alpha_n2,ratio_r_over_k"));
}

#[test]
fn explicit_output_paths() {
    let tmp = tempfile::tempdir().unwrap();
    construct_cos(tmp.path(), &[]);
    let out = semiquat(tmp.path(), &["analyze", "c.json", "--report", "r.json", "--plot", "p.csv", "--frenet", "f.csv"]);
    assert_eq!(code(&out), 0);
    for f in ["r.json", "p.csv", "f.csv"] {
        assert!(tmp.path().join(f).exists(), "{f}");
    }
}

#[test]
fn config_file_and_flag_override() {
    let tmp = tempfile::tempdir().unwrap();
    construct_cos(tmp.path(), &[]);
    std::fs::write(tmp.path().join("cfg.json"), r#"{"tol": 1e-20}"#).unwrap();
    assert_eq!(code(&semiquat(tmp.path(), &["--config", "cfg.json", "verify", "c.json", "--theorem", "3.3"])), 1);
    assert_eq!(code(&semiquat(tmp.path(), &["--config", "cfg.json", "--tol", "1e-3", "verify", "c.json", "--theorem", "3.3"])), 0);
    std::fs::write(tmp.path().join("bad.json"), r#"{"tolerance": 1}"#).unwrap();
    assert_eq!(code(&semiquat(tmp.path(), &["--config", "bad.json", "verify", "c.json", "--theorem", "3.3"])), 2);
}

#[test]
fn random_translation_is_seeded() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let mut bytes = vec![];
    for seed in ["5", "5", "6"] {
        construct_cos(dir, &["--translate", "random", "--seed", seed]);
        bytes.push(std::fs::read(dir.join("c.json")).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
    assert_ne!(bytes[0], bytes[2]);
    assert_eq!(code(&semiquat(dir, &["--tol", "1e-3", "verify", "c.json", "--theorem", "3.2ii"])), 1);
}

#[test]
fn explicit_translation_components() {
    let tmp = tempfile::tempdir().unwrap();
    construct_cos(tmp.path(), &["--translate", "0,0,0"]);
    let out = semiquat(tmp.path(), &["construct", "--family", "cos", "--base", "latitude", "--range", "-1:1", "--translate", "1,2", "-o", "x.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("3 components"));
}

#[test]
fn check_ids_and_keys() {
    let tmp = tempfile::tempdir().unwrap();
    construct_cos(tmp.path(), &[]);
    assert_eq!(code(&semiquat(tmp.path(), &["verify", "c.json", "--theorem", "thm32_iv"])), 0);
    assert_eq!(code(&semiquat(tmp.path(), &["verify", "c.json", "--theorem", "9.9"])), 2);
    assert_eq!(code(&semiquat(tmp.path(), &["verify", "c.json", "--theorem", "4.4i"])), 2);
}

#[test]
fn quaternionic_integration_from_origin() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["construct", "--integrate4", "--profile", "thm43-1", "--start", "origin", "--range", "0:1", "-o", "o.json"];
    assert_eq!(code(&semiquat(tmp.path(), &args)), 0);
    assert_eq!(code(&semiquat(tmp.path(), &["verify", "o.json", "--theorem", "4.2"])), 0);
    assert_eq!(code(&semiquat(tmp.path(), &["verify", "o.json", "--theorem", "4.4ii"])), 1);
}

#[test]
fn profile_must_match_dimension() {
    let tmp = tempfile::tempdir().unwrap();
    let out = semiquat(tmp.path(), &["construct", "--integrate3", "--profile", "thm43-1", "--range", "0:1", "-o", "x.json"]);
    assert_eq!(code(&out), 2);
    assert!(!tmp.path().join("x.json").exists());
}

#[test]
fn usage_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&semiquat(tmp.path(), &["analyze"])), 2);
    assert_eq!(code(&semiquat(tmp.path(), &["construct", "--range", "0:1", "-o", "x.json"])), 2);
    assert_eq!(code(&semiquat(tmp.path(), &["analyze", "missing.json"])), 2);
}

#[test]
fn pole_in_range_is_invalid_input() {
    let tmp = tempfile::tempdir().unwrap();
    let out = semiquat(tmp.path(), &["construct", "--family", "thm34-i", "--range", "0:2", "-o", "p.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PoleInRange"));
}

#[test]
fn straight_line_is_geometric_error() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["construct", "--integrate3", "--profile", "const3:k=0", "--range", "0:1", "-o", "l.json"];
    assert_eq!(code(&semiquat(tmp.path(), &args)), 0);
    let out = semiquat(tmp.path(), &["analyze", "l.json"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("DegenerateFrame"));
}

#[test]
fn helix_fails_ratio_check() {
    let tmp = tempfile::tempdir().unwrap();
    let args = ["construct", "--integrate3", "--profile", "const3:k=1,r=0.5", "--range", "0:2", "-o", "h.json"];
    assert_eq!(code(&semiquat(tmp.path(), &args)), 0);
    assert_eq!(code(&semiquat(tmp.path(), &["verify", "h.json", "--theorem", "3.3"])), 1);
}
