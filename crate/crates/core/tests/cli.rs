use std::process::{Command, Output};

use serde_json::Value;
use zeta_audit::report::{Payload, ReportEnvelope};

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zeta-audit"));
    cmd.args(args).env("SOURCE_DATE_EPOCH", "1700000000");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).filter(|l| !l.starts_with('#')).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn zeros_lists_each_ordinate() {
    let o = run(&["zeros", "--t-max", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let body = stdout(&o);
    assert!(body.starts_with("index,gamma,bracket_lo,bracket_hi,residual\n"));
    let rows = data_rows(&body);
    assert_eq!(rows.len(), 10);
    let first: f64 = rows[0][1].parse().unwrap();
    assert!((first - 14.134_725_141_7).abs() < 1e-8);
    assert!(stderr(&o).contains("10 zeros"));

    let o = run(&["zeros", "--t-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn out_file_moves_summary_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.csv");
    let o = run(&["zeros", "--t-max", "30", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3 zeros"));
    assert_eq!(data_rows(&std::fs::read_to_string(&path).unwrap()).len(), 3);
}

#[test]
fn census_json_and_collision() {
    let o = run(&["census", "--T", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tool"], "zeta-audit");
    assert_eq!(v["timestamp"], 1_700_000_000u64);
    let p = &v["payload"];
    assert_eq!(p["kind"], "census");
    for key in ["T", "n0", "n_strip", "n_mangoldt", "s_of_T", "ratio"] {
        assert!(!p[key].is_null(), "missing {key}");
    }
    assert_eq!(p["n0"], 29);
    assert_eq!(p["n_strip"], 29);

    let o = run(&["census", "-T", "14.134725"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("offending zero ordinate: 14.1347251"), "{}", stderr(&o));
}

#[test]
fn audit_exit_codes() {
    let o = run(&["audit", "--alpha", "0.6", "--T", "100"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["audit", "--alpha", "0.45", "--T", "14.134725"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["audit", "--alpha", "0.499", "--T", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lhs = v["payload"]["lhs_sum_distances"].as_f64().unwrap();
    assert!((lhs - 0.058).abs() < 1e-12);
    assert!(stderr(&o).starts_with("PASS"));
}

#[test]
fn sweep_rows_and_failed_cells() {
    let o = run(&["sweep", "--alphas", "0.3,0.45,0.49", "--T-values", "50,100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let body = stdout(&o);
    let rows: Vec<&str> = body.lines().skip(1).take_while(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 6);
    assert!(body.contains("# trend"));

    let o = run(&["sweep", "--alphas", "0.45", "--T-values", "100,14.134725"]);
    assert_eq!(o.status.code(), Some(0));
    let body = stdout(&o);
    let bad = body.lines().find(|l| l.contains("1.4134725")).unwrap();
    assert!(bad.ends_with(|c: char| c.is_alphanumeric() || c == '"'), "{bad}");
    assert!(bad.split(',').nth(2).unwrap().is_empty());

    let o = run(&["sweep", "--alphas", "0.45", "--T-values", "14.134725"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sweep_json() {
    let o = run(&["sweep", "--alphas", "0.45", "--T-values", "50", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let env = ReportEnvelope::from_json(&stdout(&o)).unwrap();
    match env.payload {
        Payload::Sweep(t) => assert_eq!(t.rows.len(), 1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn figure_data() {
    let o = run(&["figure-data", "z-trace"]);
    assert_eq!(o.status.code(), Some(0));
    let body = stdout(&o);
    assert!(body.starts_with("t,z\n"));
    assert_eq!(data_rows(&body).len(), 1001);

    assert_eq!(run(&["figure-data", "pie-chart"]).status.code(), Some(1));
    assert_eq!(run(&["figure-data", "residuals"]).status.code(), Some(1));
    let o = run(&["figure-data", "residuals", "--alphas", "0.45", "--T-values", "14.134725"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("guard band"), "{}", stdout(&o));
}

#[test]
fn staircase_jumps_at_census_zeros() {
    let o = run(&["figure-data", "s-staircase", "--t-lo", "1", "--t-hi", "40", "--step", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let body = stdout(&o);
    let jumps: Vec<f64> = data_rows(&body)
        .iter()
        .filter(|r| r[1] != r[2])
        .map(|r| r[0].parse().unwrap())
        .collect();
    let zeros = stdout(&run(&["zeros", "--t-max", "40"]));
    let gammas: Vec<f64> = data_rows(&zeros).iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(jumps.len(), gammas.len());
    for (j, g) in jumps.iter().zip(&gammas) {
        assert!((j - g).abs() < 1e-6, "{j} vs {g}");
    }
}

#[test]
fn config_layers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "abs_tol = 1e-9\nalphas = [0.4]\nt_values = [50.0]\n").unwrap();
    let cfg = path.to_str().unwrap();

    let o = run(&["--config", cfg, "sweep", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["abs_tol"], 1e-9);
    assert_eq!(v["payload"]["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["payload"]["rows"][0]["alpha"], 0.4);

    let o = run_env(&["--config", cfg, "census", "--T", "50"], &[("ZETA_AUDIT_ABS_TOL", "1e-11")]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["abs_tol"], 1e-11);

    let o = run_env(&["--abs-tol", "1e-10", "census", "--T", "50"], &[("ZETA_AUDIT_ABS_TOL", "1e-11")]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["abs_tol"], 1e-10);

    std::fs::write(&path, "colour = \"red\"\n").unwrap();
    assert_eq!(run(&["--config", cfg, "census", "--T", "50"]).status.code(), Some(1));
    assert_eq!(run(&["--config", "/nonexistent/run.toml", "census", "--T", "50"]).status.code(), Some(1));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["census"]).status.code(), Some(1));
    assert_eq!(run(&["--threads", "2", "zeros", "--t-max", "20"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn reports_are_reproducible() {
    let a = run(&["audit", "--alpha", "0.45", "--T", "50", "--threads", "1"]);
    let b = run(&["audit", "--alpha", "0.45", "--T", "50", "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let env = ReportEnvelope::from_json(&stdout(&a)).unwrap();
    assert_eq!(ReportEnvelope::from_json(&env.to_json().unwrap()).unwrap(), env);
}
