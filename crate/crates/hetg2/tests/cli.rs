//! End-to-end tests of the hetg2 binary: exit codes, formats, determinism.

use std::process::{Command, Output};

fn hetg2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hetg2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_single_check_exits_zero() {
    let out = hetg2(&["verify", "--only", "C26"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("C26"));
    assert!(text.contains("pass"));
    assert!(text.contains("summary: 1 pass, 0 fail, 0 error"));
}

#[test]
fn verify_unknown_check_is_usage_error() {
    let out = hetg2(&["verify", "--only", "NOPE"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn verify_failing_check_exits_one() {
    let out = hetg2(&["verify", "--only", "C31"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn verify_json_round_trips() {
    let out = hetg2(&["verify", "--only", "C01,C13", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["summary"]["pass"], 2);
    assert_eq!(parsed["checks"][1]["needed_ideal"], true);
    assert!(parsed["checks"][0].get("elapsed_ms").is_none());
    let with_timings = hetg2(&["verify", "--only", "C01", "--format", "json", "--timings"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&with_timings)).unwrap();
    assert!(parsed["checks"][0].get("elapsed_ms").is_some());
}

#[test]
fn verify_output_is_deterministic() {
    let a = hetg2(&["verify", "--only", "C01,C11,C26,C34"]);
    let b = hetg2(&["verify", "--only", "C01,C11,C26,C34"]);
    assert_eq!(a.stdout, b.stdout);
    let aj = hetg2(&["verify", "--only", "C01,C11", "--format", "json"]);
    let bj = hetg2(&["verify", "--only", "C01,C11", "--format", "json"]);
    assert_eq!(aj.stdout, bj.stdout);
}

#[test]
fn regime_case1_example() {
    let out = hetg2(&["regime", "--case", "1", "--delta", "1", "--alpha", "0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("k = 1000"));
    assert!(text.contains("eps^2 = 1/5000000000"));
    assert!(text.contains("8 (exact)"));
}

#[test]
fn regime_inadmissible_exits_65() {
    let out = hetg2(&["regime", "--case", "1", "--delta", "-1", "--alpha", "0.01"]);
    assert_eq!(out.status.code(), Some(65));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("delta distinct from 0 and -1"));
}

#[test]
fn regime_case3_lambda2_zero() {
    let out = hetg2(&["regime", "--case", "3", "--m", "0", "--alpha", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("lambda2 = 0 (0)"));
}

#[test]
fn regime_missing_flags_is_usage_error() {
    let out = hetg2(&["regime", "--case", "1", "--alpha", "0.01"]);
    assert_eq!(out.status.code(), Some(64));
    let out = hetg2(&["regime", "--alpha", "0.01"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn regime_double_mode() {
    let out = hetg2(&[
        "regime",
        "--case",
        "2",
        "--m",
        "-2",
        "--alpha",
        "0.001",
        "--numeric-mode",
        "double",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let a = parsed["alpha_prime"].as_f64().unwrap();
    let l0 = parsed["lambdas"][0].as_f64().unwrap();
    assert!((a * l0 - 8.0).abs() <= 1e-12);
}

#[test]
fn sweep_csv_with_slope_report() {
    let out = hetg2(&[
        "sweep", "--case", "1", "--delta", "1", "--alpha", "1e-1:1e-4:log4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "alpha_prime,eps,k,delta,m,lambda0,lambda1,lambda2,lambda3"
    );
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 5);
    assert!(text.contains("# order_fit lambda1: exact zero"));
    assert!(text.contains("# order_fit lambda2: slope 2.000000000"));
}

#[test]
fn sweep_single_point_reports_na() {
    let out = hetg2(&["sweep", "--case", "1", "--delta", "1", "--alpha", "1e-2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
    assert!(text.contains("# order_fit: n/a"));
}

#[test]
fn sweep_monotonicity_case2() {
    let out = hetg2(&[
        "sweep", "--case", "2", "--m", "-2", "--alpha", "1e-1:1e-3:log3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = parsed["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for w in rows.windows(2) {
        assert!(w[1]["eps"].as_f64().unwrap() < w[0]["eps"].as_f64().unwrap());
        assert!(w[1]["k"].as_f64().unwrap() > w[0]["k"].as_f64().unwrap());
    }
}

#[test]
fn eval_goldens() {
    let out = hetg2(&["eval", "tau0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "(6/7)*eps");
    let out = hetg2(&["eval", "dflux"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("eps^2"));
    assert!(text.contains("e1^f1^e2^f2"));
    let out = hetg2(&[
        "eval", "residual", "--delta", "0", "--k", "1", "--m", "0", "--eps", "1",
    ]);
    let text = stdout(&out);
    assert!(text.contains("lambda1 = (7/4)"));
    assert!(text.contains("lambda2 = (1/4)"));
    assert!(text.contains("lambda3 = -(1/4)"));
}

#[test]
fn eval_unknown_quantity_is_usage_error() {
    let out = hetg2(&["eval", "nonsense"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn config_file_defaults_with_flag_override() {
    let dir = std::env::temp_dir().join("hetg2-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"case": "1", "delta": "1", "alpha": "0.1"}"#,
    )
    .unwrap();
    let out = hetg2(&["regime", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("alpha_prime = 0.1"));
    // flags win over the config
    let out = hetg2(&[
        "regime",
        "--config",
        cfg.to_str().unwrap(),
        "--alpha",
        "0.01",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("k = 1000"));
}

#[test]
fn output_file_writing() {
    let dir = std::env::temp_dir().join("hetg2-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = hetg2(&[
        "verify",
        "--only",
        "C26",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(parsed["summary"]["pass"], 1);
}

#[test]
fn thread_cap_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_hetg2"))
        .args(["verify", "--only", "C01,C26,C34"])
        .env("HETG2_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn audit_ideal_mode() {
    let out = hetg2(&["verify", "--only", "C35", "--audit-ideal"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ideal minimality audit"));
    assert!(text.contains("break (needed)"));
}
