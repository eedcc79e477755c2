use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nahmkit")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

#[test]
fn charge_examples() {
    let (code, v) = run_json(&["charge", "--input", r#"{"n":1,"m":2,"Q":["0","0","1"],"P":[["1"]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["charge"], json!([2]));
    let (_, v) = run_json(&["charge", "--input", r#"["z(z-1)", "z-1", "z"]"#]);
    assert_eq!(v["charge"], json!([1, 1]));
    let (_, v) = run_json(&["charge", "--input", r#"["z^2", "1", "0"]"#]);
    assert_eq!(v["charge"], json!([2, 0]));
}

#[test]
fn charge_errors() {
    assert_eq!(run(&["charge", "--input", "{\"Q\": "]).status.code(), Some(2));
    assert_eq!(run(&["charge", "--input", r#"{"Q":"z^2","P":["z"]}"#]).status.code(), Some(3));
    assert_eq!(run(&["charge", "--input", "/nonexistent/file.json"]).status.code(), Some(1));
}

#[test]
fn conversions() {
    let (code, v) = run_json(&["to-map", "--input", r#"{"B":[["0"]],"w1":["1"],"w":[["1"]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["Q"], json!(["0", "1"]));
    assert_eq!(v["P"], json!([["1"]]));

    let (code, v) = run_json(&["to-matrix", "--input", r#"{"Q":["0","0","1"],"P":[["1"]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v, json!({"B": [["0", "0"], ["1", "0"]], "w1": ["0", "1"], "w": [["1", "0"]]}));

    let bad = r#"{"B":[["0","1"],["0","0"]],"w1":["1","0"],"w":[["1","0"]]}"#;
    let out = run(&["to-map", "--input", bad]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("det M(k) = 0"));
    let out = run(&["to-map", "--k", "2", "--input", bad]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn roundtrip_both_directions() {
    let (code, v) = run_json(&["roundtrip", "--input", r#"{"B":[["1","2"],["3","4"]],"w1":["1","0"],"w":[["0","1"]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["round_trip"], json!(true));
    let (code, v) = run_json(&["roundtrip", "--input", r#"{"Q":"z^3 - 2z + i","P":["z^2 + 1", "3"]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["direction"], json!("map-pair-map"));
}

#[test]
fn membership_and_normal_forms() {
    let f = r#"{"Q":"z^2","P":["1","0"]}"#;
    let (code, v) = run_json(&["membership", "--k", "2,0", "--input", f]);
    assert_eq!(code, 0);
    assert_eq!(v["member"], json!(true));
    let (_, v) = run_json(&["membership", "--k", "1,1", "--input", f]);
    assert_eq!(v["member"], json!(false));
    assert_eq!(run(&["membership", "--input", f]).status.code(), Some(1));

    let (code, v) = run_json(&["normal-form", "--input", r#"{"k":[2,1],"C":[["1","2"],["3","4"],["0","5"]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["validity"]["k"], json!([2, 1]));

    let b = r#"{"k":[2,1],"B":[["1","0","2"],["3","0","4"],["0","1","5"]]}"#;
    let (code, v) = run_json(&["hurtubise", "--input", b]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["target_pattern"], json!(true));
    let back = json!({"k": [2, 1], "B_H": v["B_H"]}).to_string();
    let (code, w) = run_json(&["hurtubise", "--inverse", "--input", &back]);
    assert_eq!(code, 0);
    assert_eq!(w["B"], json!([["1", "0", "2"], ["3", "0", "4"], ["0", "1", "5"]]));
}

#[test]
fn verify_suites() {
    let (code, v) = run_json(&["verify", "roundtrip", "--seed", "1", "--budget", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["cases"], json!(100));
    assert_eq!(v["seed"], json!(1));
    assert_eq!(run(&["verify", "unknown"]).status.code(), Some(1));
    let (code, v) = run_json(&["verify", "casimir"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], json!(16));
}

#[test]
fn parallel_runs_are_identical() {
    let a = run(&["verify", "duality", "--seed", "5", "--budget", "20", "--jobs", "1"]);
    let b = run(&["verify", "duality", "--seed", "5", "--budget", "20", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "hurtubise", "--seed", "5", "--budget", "10", "--format", "csv"]);
    assert!(String::from_utf8_lossy(&c.stdout).starts_with("suite,seed,cases,passed,pass\nhurtubise,5,10,10,true"));
}

fn mat(rows: &[&[f64]]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(|x| json!([x, 0.0])).collect())).collect())
}

#[test]
fn realflow_configs() {
    let dir = tempfile::tempdir().unwrap();
    let identity = json!({
        "m": 2, "L": 1.0, "grid": 32, "tol": 1e-10,
        "beta0": mat(&[&[1.0, 2.0], &[2.0, -1.0]]),
        "h_minus": mat(&[&[1.0, 0.0], &[0.0, 1.0]]),
        "h_plus": mat(&[&[1.0, 0.0], &[0.0, 1.0]]),
        "seed": 3
    });
    let out_path = dir.path().join("identity.json");
    let code = run(&["realflow", "--input", &identity.to_string(), "--output", out_path.to_str().unwrap()]).status.code();
    assert_eq!(code, Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!(v["residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["seed"], json!(3));
    let csv = std::fs::read_to_string(out_path.with_extension("csv")).unwrap();
    assert!(csv.starts_with("t,lambda_1,lambda_2\n"));
    assert_eq!(csv.lines().count(), 33);

    let scalar = json!({
        "m": 1, "L": 2.0, "grid": 40, "tol": 1e-10,
        "beta0": mat(&[&[0.5]]), "h_minus": mat(&[&[0.5]]), "h_plus": mat(&[&[3.0]])
    });
    let (code, v) = run_json(&["realflow", "--input", &scalar.to_string()]);
    assert_eq!(code, 0);
    let h = &v["path"]["h"];
    for k in 0..40 {
        let s = k as f64 / 39.0;
        let want = ((1.0 - s) * 0.5f64.ln() + s * 3f64.ln()).exp();
        assert!((h[k][0][0][0].as_f64().unwrap() - want).abs() < 1e-8);
    }

    let mut small = scalar.clone();
    small["grid"] = json!(4);
    assert_eq!(run(&["realflow", "--input", &small.to_string()]).status.code(), Some(3));
    let mut typo = scalar.clone();
    typo["grdi"] = json!(4);
    assert_eq!(run(&["realflow", "--input", &typo.to_string()]).status.code(), Some(2));
}

#[test]
fn realflow_budget_exhaustion_exits_4() {
    // a tolerance below round-off cannot be met
    let cfg = json!({
        "m": 2, "L": 1.0, "grid": 32, "tol": 1e-300,
        "beta0": mat(&[&[1.0, 2.0], &[0.0, -1.0]]),
        "h_minus": mat(&[&[2.0, 0.0], &[0.0, 1.0]]),
        "h_plus": mat(&[&[1.0, 0.5], &[0.5, 1.0]])
    });
    let out = run(&["realflow", "--input", &cfg.to_string()]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["converged"], json!(false));
}

#[test]
fn outputs_are_byte_identical() {
    let args = ["verify", "hurtubise", "--seed", "9", "--budget", "15"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["to-matrix", "--input", r#"{"Q":"z^3 + (1/2)z","P":["z","1"]}"#];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
