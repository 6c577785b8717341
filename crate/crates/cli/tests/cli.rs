use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run_env(args: &[&str], mode: Option<&str>) -> (i32, Value) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_solvlie"));
    cmd.args(args).env_remove("SOLVLIE_MODE");
    if let Some(m) = mode {
        cmd.env("SOLVLIE_MODE", m);
    }
    let out = cmd.output().expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8 report");
    let json = serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    (out.status.code().unwrap(), json)
}

fn run(args: &[&str]) -> (i32, Value) {
    run_env(args, None)
}

#[test]
fn soliton_on_heisenberg() {
    let (code, r) = run(&["soliton", &data("h3.json"), "--metric", &data("id3.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["c"], "-3/2");
    assert_eq!(r["residual"], "0");
    assert_eq!(r["algebraic"], true);
    assert_eq!(r["D"], serde_json::json!([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "2"]]));
    assert_eq!(r["mode"], "exact");
    assert!(r.get("tol").is_none());
}

#[test]
fn sigma_of_euclidean_motions_is_flat() {
    let (code, r) = run(&["sigma", &data("e2tilde.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["algebra"]["dim"], 3);
    assert_eq!(r["algebra"]["brackets"], serde_json::json!([]));
    assert_eq!(r["modification"]["normal"], true);
}

#[test]
fn float_mode_reports_tolerance() {
    let (code, r) = run(&["--mode", "float", "--tol", "1e-8", "einstein-check", &data("hyperbolic.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["mode"], "float");
    assert_eq!(r["tol"], 1e-8);
    assert_eq!(r["is_einstein"], true);
    assert_eq!(r["c"], -1.0);
}

#[test]
fn environment_selects_mode() {
    let (code, r) = run_env(&["ricci", &data("h3.json")], Some("float"));
    assert_eq!(code, 0);
    assert_eq!(r["mode"], "float");
    assert_eq!(r["oracle_agrees"], true);
    let (code, r) = run_env(&["ricci", &data("h3.json")], Some("bogus"));
    assert_eq!(code, 2);
    assert_eq!(r["error"], "UsageError");
}

#[test]
fn tolerance_requires_float_mode() {
    let (code, r) = run(&["--tol", "1e-6", "profile", &data("h3.json")]);
    assert_eq!(code, 2);
    assert_eq!(r["error"], "UsageError");
}

#[test]
fn structural_commands() {
    let (code, r) = run(&["validate", &data("s.json")]);
    assert_eq!((code, &r["valid"]), (0, &Value::Bool(true)));
    let (_, r) = run(&["profile", &data("s.json")]);
    assert_eq!(r["profile"]["nilradical_dim"], 6);
    assert_eq!(r["profile"]["completely_solvable"], true);
    let (_, r) = run(&["nilradical", &data("r.json")]);
    assert_eq!(r["nilradical"]["dim"], 4);
    let (_, r) = run(&["derivations", &data("h3.json")]);
    assert_eq!(r["dim"], 6);
    let (_, r) = run(&["skew-derivations", &data("s.json"), "--metric", &data("s_g0.json")]);
    assert_eq!(r["dim"], 3);
    let (_, r) = run(&["pre-einstein", &data("h3.json")]);
    assert_eq!(r["phi"][2][2], "4/3");
}

#[test]
fn modification_commands() {
    let (code, r) = run(&["std-mod", &data("e2tilde.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["changed"], true);
    let (_, r) = run(&["std-position", &data("s.json"), "--metric", &data("s_g0.json")]);
    assert_eq!(r["steps"], 0);
    let (code, r) = run(&["equiv", &data("r.json"), &data("s.json"), "--certificate", &data("r_to_s.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "Equivalent");
    let (_, r) = run(&["equiv", &data("h3.json"), &data("r3.json")]);
    assert_eq!(r["status"], "NotEquivalent");
    assert!(r["witness"]["invariant"].is_string());
}

#[test]
fn einstein_extension_report() {
    let (code, r) = run(&["extend-einstein", &data("s.json"), "--metric", &data("s_g0.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["is_einstein"], true);
    assert_eq!(r["residual"], "0");
    assert_eq!(r["heber"]["passes"], true);
    assert_eq!(r["algebra"]["dim"], 8);
}

#[test]
fn computation_errors_exit_one() {
    let (code, r) = run(&["extend-einstein", &data("r3.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["error"], "AlreadyEinstein");
    assert!(r["detail"].is_string());
    let (code, r) = run(&["pre-einstein", &data("hyperbolic.json")]);
    assert_eq!((code, r["error"].as_str()), (1, Some("NotNilpotent")));
}

#[test]
fn usage_errors_exit_two() {
    let (code, r) = run(&["ricci"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"], "UsageError");
    let (code, r) = run(&["ricci", "/nonexistent/file.json"]);
    assert_eq!((code, r["error"].as_str()), (2, Some("IoError")));
    let (code, r) = run(&["ricci", &data("h3.json"), "--metric", &data("s_g0.json")]);
    assert_eq!((code, r["error"].as_str()), (2, Some("ParseError")));
}

#[test]
fn declared_nilradical_is_checked() {
    let dir = tempfile::tempdir().unwrap();
    let doc = |vectors: &str| {
        format!(
            r#"{{"name":"h3","dim":3,"basis":["e1","e2","e3"],
            "brackets":[{{"x":"e1","y":"e2","value":{{"e3":"1"}}}}],"declared_nilradical":{vectors}}}"#
        )
    };
    let good = dir.path().join("good.json");
    std::fs::write(&good, doc(r#"[["1","0","0"],["0","1","0"],["0","0","1"]]"#)).unwrap();
    let (code, r) = run(&["validate", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["declared_nilradical"]["dim"], 3);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc(r#"[["0","0","1"]]"#)).unwrap();
    let (code, r) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!((code, r["error"].as_str()), (1, Some("InvalidNilradical")));
}

#[test]
fn out_and_pretty() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_solvlie"))
        .args(["--pretty", "--out", path.to_str().unwrap(), "profile", &data("h3.json")])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\n  \"command\""));
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["profile"]["dim"], 3);
}

#[test]
fn fixtures_table() {
    let (code, r) = run(&["fixtures"]);
    assert_eq!(code, 0);
    let checks = r["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["passed"] == true));
}
