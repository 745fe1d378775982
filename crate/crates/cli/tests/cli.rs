use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liecascade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON from {args:?}: {e}\n{}",
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().unwrap(), v)
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(o) => o.values().all(no_floats),
        _ => true,
    }
}

fn all_pass(v: &Value) -> bool {
    v["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .all(|a| a["status"] != "fail")
}

#[test]
fn cascade_b3_has_three_entries() {
    let (code, v) = run_json(&["cascade", "B", "3"]);
    assert_eq!(code, 0);
    let ks: Vec<&str> = v["data"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["K"].as_str().unwrap())
        .collect();
    assert_eq!(ks, ["{a1,a2,a3}", "{a1}", "{a3}"]);
}

#[test]
fn signed_orbits_for_p2() {
    let (code, v) = run_json(&["orbits", "--p", "2", "--signed", "--characteristics"]);
    assert_eq!(code, 0);
    let rows = v["data"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r["even"] == true));
    let (_, v) = run_json(&["orbits", "--p", "3", "--signed"]);
    assert_eq!(v["data"].as_array().unwrap().len(), 8);
}

#[test]
fn unsigned_orbits_for_p3() {
    let (_, v) = run_json(&["orbits", "--p", "3", "--characteristics"]);
    let shapes: Vec<&str> = v["data"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["shape"].as_str().unwrap())
        .collect();
    assert_eq!(shapes, ["(5)", "(3,1,1)", "(2,2,1)", "(1,1,1,1,1)"]);
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let a = run(&["--json", "verify-all", "--max-rank", "6"]);
    let b = run(&["verify-all", "--max-rank", "6", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(all_pass(&v));
    assert!(no_floats(&v));
    let actual = |name: &str| {
        v["assertions"]
            .as_array()
            .unwrap()
            .iter()
            .find(|x| x["name"] == name)
            .unwrap()["actual"]
            .clone()
    };
    assert_eq!(actual("lines/B3/dim g^X at X_{a1}"), 7);
    assert_eq!(actual("lines/B3/dim g^X at X_{a1}+X_Pi"), 11);
    assert_eq!(actual("lines/D5/dim g^X at X_Pi"), 19);
    assert_eq!(actual("lines/D5/dim g^X at X_{a1}-X_Pi"), 29);
    assert_eq!(actual("table/E7/a7")["rank"], 3);
}

#[test]
fn centralizer_line_and_locus() {
    let (code, v) = run_json(&["centralizer", "--pair", "D5-1", "--locus"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["data"]["special_lines"],
        serde_json::json!([[0, 1], [1, -1], [1, 0], [1, 1]])
    );
    let (code, v) = run_json(&["centralizer", "--pair", "B3-1", "--line", "1/2,-1/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["dim_g_x"], 11);
    assert_eq!(v["data"]["x"], serde_json::json!(["1/2", "-1/2"]));
    let (code, v) = run_json(&["centralizer", "--pair", "E7-7", "--locus"]);
    assert_eq!(code, 0);
    assert!(no_floats(&v));
}

#[test]
fn model_checks() {
    for verify in ["triple", "characteristic", "sheet"] {
        let (code, v) = run_json(&[
            "model",
            "--p",
            "4",
            "--orbit",
            "5,1:+-+-+|+:I",
            "--verify",
            verify,
        ]);
        assert_eq!(code, 0, "{verify}");
        assert!(all_pass(&v));
    }
    let (code, _) = run_json(&[
        "model",
        "--p",
        "5",
        "--orbit",
        "2,2,1,1,1:+++++:II",
        "--verify",
        "distinguished",
    ]);
    assert_eq!(code, 0);
    let (code, v) = run_json(&[
        "model",
        "--p",
        "4",
        "--verify",
        "semisimple-part",
        "--trials",
        "5",
        "--seed",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 3);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["cascade", "Q", "3"]).status.code(), Some(2));
    assert_eq!(
        run(&["centralizer", "--pair", "B3-2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["model", "--p", "4", "--orbit", "2,2,1,1", "--verify", "triple"])
            .status
            .code(),
        Some(2)
    );
    // the sheet check only applies to even orbits
    let out = run(&[
        "model",
        "--p",
        "4",
        "--orbit",
        "2,2,1,1:++++:I",
        "--verify",
        "sheet",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not even"));
}
