//! End-to-end tests of the `jcpure` binary: CSV schemas, determinism,
//! exit codes, and the verification bundle.

use std::path::PathBuf;
use std::process::{Command, Output};

fn jcpure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jcpure"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("jcpure-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn simulate_writes_deterministic_csv() {
    let out_a = stdout(&jcpure(&["simulate", "--steps", "5", "--t-max", "2.0"]));
    let out_b = stdout(&jcpure(&["simulate", "--steps", "5", "--t-max", "2.0"]));
    assert_eq!(out_a, out_b, "byte-identical reruns");
    let lines: Vec<&str> = out_a.lines().collect();
    assert!(lines[0].starts_with("# jcpure simulate"));
    assert!(lines[1].starts_with("# config: "));
    assert_eq!(
        lines[2],
        "t,S_A,S_F,S_AA,W_inversion,purity_F,araki_lower_margin,araki_upper_margin,leaked_mass"
    );
    assert_eq!(lines.len(), 3 + 5);
}

#[test]
fn simulate_initial_row_has_quoted_entropies() {
    let out = stdout(&jcpure(&["simulate", "--steps", "2", "--t-max", "1.0"]));
    let first_row = out.lines().nth(3).unwrap();
    let cols: Vec<f64> = first_row.split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(cols[0], 0.0);
    assert!((cols[2] - std::f64::consts::LN_2).abs() < 1e-6, "S_F(0)");
    assert!((cols[4] - 1.0).abs() < 1e-12, "W(0)");

    let out = stdout(&jcpure(&[
        "simulate",
        "--scenario",
        "atom_mixture",
        "--steps",
        "2",
        "--t-max",
        "1.0",
    ]));
    let first_row = out.lines().nth(3).unwrap();
    let cols: Vec<f64> = first_row.split(',').map(|v| v.parse().unwrap()).collect();
    assert!((cols[1] - std::f64::consts::LN_2).abs() < 1e-6, "S_A(0)");
    assert!(cols[2].abs() < 1e-8, "S_F(0)");
}

#[test]
fn effective_config_comment_round_trips() {
    let out = stdout(&jcpure(&["simulate", "--steps", "2", "--t-max", "1.0"]));
    let config_line = out.lines().nth(1).unwrap();
    let json = config_line.strip_prefix("# config: ").unwrap();
    let cfg = jcpure::ScenarioConfig::from_json(json).unwrap();
    assert_eq!(cfg.n, 128, "auto dimension recorded");
    assert_eq!(cfg.steps, 2);
    assert_eq!(cfg.effective().unwrap(), cfg);
}

#[test]
fn config_file_with_flag_overrides() {
    let path = tmp("config.json");
    std::fs::write(
        &path,
        r#"{"scenario":"atom_mixture","C":0.25,"alpha_re":2.0,"alpha_im":0.0,
           "beta_re":0.0,"beta_im":0.0,"lambda":1.0,"t_max":4.0,"steps":3,"N":0}"#,
    )
    .unwrap();
    let out = jcpure(&[
        "simulate",
        "--config",
        path.to_str().unwrap(),
        "--steps",
        "4",
        "--out",
        "-",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3 + 4, "flag overrides file steps");
    assert!(text.lines().nth(1).unwrap().contains("\"C\":0.25"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn simulate_to_file_matches_stdout() {
    let path = tmp("sweep.csv");
    let to_stdout = stdout(&jcpure(&["simulate", "--steps", "3", "--t-max", "1.0"]));
    let status = jcpure(&[
        "simulate",
        "--steps",
        "3",
        "--t-max",
        "1.0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(status.status.success());
    let from_file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(to_stdout, from_file);
    std::fs::remove_file(&path).ok();
}

#[test]
fn wigner_grid_rows_and_vacuum_control() {
    // C = 1, alpha = 0 at t = 0 is |e>|0>: the field is vacuum
    let out = stdout(&jcpure(&[
        "wigner", "--C", "1.0", "--alpha-re", "0.0", "--beta-re", "0.0", "--N", "32", "--t",
        "0.0", "--x-min", "-1.0", "--x-max", "1.0", "--p-min", "-1.0", "--p-max", "1.0", "--res",
        "3",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines
        .iter()
        .any(|l| l.starts_with("# wigner=displaced-parity, hbar=1, x=sqrt2*Re(gamma)")));
    let data: Vec<&str> = lines.iter().filter(|l| !l.starts_with('#')).copied().collect();
    assert_eq!(data.len(), 1 + 9, "header plus res^2 rows");
    // the (x=0, p=0) row carries W = 1/pi
    let center: Vec<f64> = data[1 + 4].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(center[0], 0.0);
    assert_eq!(center[1], 0.0);
    assert!((center[2] - 1.0 / std::f64::consts::PI).abs() < 1e-6);
}

#[test]
fn threads_flag_is_accepted() {
    let out = jcpure(&["simulate", "--steps", "2", "--t-max", "1.0", "--threads", "1"]);
    assert!(out.status.success());
}

#[test]
fn bad_config_exits_with_usage_code() {
    let out = jcpure(&["simulate", "--C", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("C"), "diagnostic names the field: {err}");

    let out = jcpure(&["simulate", "--scenario", "bogus"]);
    assert_eq!(out.status.code(), Some(2));

    let out = jcpure(&["simulate", "--steps", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let path = tmp("broken.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = jcpure(&["simulate", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_default_config_passes() {
    let out = jcpure(&["verify"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "stdout:\n{text}");
    assert_eq!(text.matches("PASS ").count(), 10);
    assert!(text.contains("all 10 checks passed"));
}

#[test]
fn verify_corrupted_basis_map_fails_equivalence() {
    let out = jcpure(&["verify", "--corrupt-basis-map"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(1), "stdout:\n{text}");
    assert!(text.contains("FAIL two-atom-equivalence"));
    assert!(text.contains("verify: FAILED at two-atom-equivalence"));
}
