use std::process::{Command, Output};

use serde_json::Value;

fn xoplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xoplab"))
        .args(args)
        .env_remove("XOPLAB_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = xoplab(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn hermite11_degree_three() {
    assert_eq!(ok(&["eval", "--family", "hermite11", "--n", "3"]).trim(), "128 x^3 + 192 x");
    let det = ok(&["eval", "--family", "hermite11", "--n", "3", "--method", "det", "--format", "json"]);
    let v: Value = serde_json::from_str(&det).unwrap();
    assert_eq!(v["kind"], "float");
    let c = v["coefficients"].as_array().unwrap();
    assert!((c[3][0].as_f64().unwrap() - 128.0).abs() < 1e-9);
    assert!((c[1][0].as_f64().unwrap() - 192.0).abs() < 1e-9);
}

#[test]
fn values_at_points() {
    assert_eq!(ok(&["eval", "--family", "laguerre", "--n", "0", "--alpha", "1", "--at", "5"]).trim(), "1");
    let lag1 = ok(&["eval", "--family", "lag1", "--m", "1", "--n", "1", "--alpha", "1", "--at", "1"]);
    assert_eq!(lag1.trim(), "3");
}

#[test]
fn zeros_are_correctly_rounded_csv() {
    let out = ok(&["zeros", "--family", "hermite", "--n", "3"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "re,im,source");
    assert_eq!(lines[1], "-1.224744871391589,0,H_3");
    assert_eq!(lines[2], "0,0,H_3");
    let lag = ok(&["zeros", "--family", "laguerre", "--n", "2", "--alpha", "0", "--format", "text"]);
    assert_eq!(lag, "0.585786437626905\t0\n3.414213562373095\t0\n");
}

#[test]
fn invalid_parameters_are_usage_errors() {
    let o = xoplab(&["eval", "--family", "lag2", "--m", "2", "--n", "3", "--alpha", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha > m-1"));
    assert_eq!(xoplab(&["eval", "--family", "nope", "--n", "1"]).status.code(), Some(2));
    assert_eq!(xoplab(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn degree_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_xoplab"))
        .args(["zeros", "--family", "hermite", "--n", "5"])
        .env("XOPLAB_MAX_DEGREE", "3")
        .output()
        .unwrap();
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap 3"));
    // the hard cap still applies
    let o = Command::new(env!("CARGO_BIN_EXE_xoplab"))
        .args(["zeros", "--family", "hermite", "--n", "31"])
        .env("XOPLAB_MAX_DEGREE", "100")
        .output()
        .unwrap();
    assert!(!o.status.success());
}

#[test]
fn coefficients_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("p.json");
    let csv = dir.path().join("p.csv");
    let args = ["eval", "--family", "jacobi", "--m", "2", "--n", "4", "--alpha", "7/2", "--beta", "1"];
    let mut a = args.to_vec();
    a.extend(["--format", "json", "--out", json.to_str().unwrap()]);
    ok(&a);
    let mut a = args.to_vec();
    a.extend(["--format", "csv", "--out", csv.to_str().unwrap()]);
    ok(&a);
    let from_json = xoplab::target::Evaluated::from_json(
        &serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap(),
    )
    .unwrap();
    let from_csv = xoplab::target::Evaluated::from_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(from_json, from_csv);
    assert_eq!(from_json.to_text(), ok(&args).trim());
}

#[test]
fn compare_and_table() {
    let out = ok(&["compare", "--family", "lag3", "--m", "2", "--n", "4", "--alpha", "-1/2", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    for r in v["results"].as_array().unwrap() {
        assert!(r["max_rel_diff"].as_f64().unwrap() <= 1e-8, "{r}");
    }
    let table = ok(&["table", "--family", "lag1", "--m", "2", "--n", "5", "--alpha", "1"]);
    assert!(table.starts_with("target,n,power,coefficient\n"));
    // degrees below m are missing from the family
    assert!(!table.contains(",1,0,"));
    assert!(table.contains(",5,5,") && !table.contains(",5,6,"));
}

#[test]
fn smoke_verify_passes_and_is_deterministic() {
    let args = ["verify", "--m", "1", "--n", "4", "--format", "json"];
    let a = ok(&args);
    let mut single = args.to_vec();
    single.extend(["--jobs", "1"]);
    let b = ok(&single);
    assert_eq!(a, b);
    let report: xoplab::report::VerificationReport = serde_json::from_str(&a).unwrap();
    assert!(report.consistent());
    assert_eq!(report.totals.fail, 0);
    assert!(report.totals.pass > 0);
    for key in ["suite", "config", "cases", "totals"] {
        assert!(serde_json::from_str::<Value>(&a).unwrap().get(key).is_some());
    }
}

#[test]
fn corrupted_constant_is_caught() {
    let o = xoplab(&["verify", "--m", "1", "--n", "4", "--suite", "det", "--corrupt", "lag1:101/100", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.contains("lag1") && l.contains(",FAIL,") && l.contains("leading-coefficient mismatch")));
    // other families are untouched
    assert!(!out.lines().any(|l| l.contains(",FAIL,") && !l.contains("lag1")));
}
