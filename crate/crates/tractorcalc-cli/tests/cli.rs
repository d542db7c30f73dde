use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const DX1: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/../../fixtures/dx1_problem.json"
);

fn tractorcalc(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tractorcalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn algebra_product() {
    let out = tractorcalc(&["algebra", "--product", "2"], None);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "x²y² + 2xy(h−3) + 2(h−2)(h−3)");
    let ascii = tractorcalc(&["algebra", "--product", "2", "--ascii"], None);
    assert!(stdout(&ascii).contains("x^2"));
}

#[test]
fn algebra_word() {
    let out = tractorcalc(&["algebra", "--word", "yxyx"], None);
    assert_eq!(stdout(&out).trim(), "x²y² − 3xy(h−2/3) + h²");
    let bad = tractorcalc(&["algebra", "--word", "yz"], None);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn algebra_series() {
    let out = tractorcalc(
        &[
            "algebra",
            "--series",
            "frobenius",
            "--h0",
            "3",
            "--order",
            "4",
        ],
        None,
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["regular"][0], "1");
    assert_eq!(v["log_part"].as_array().unwrap().len(), 5);
}

#[test]
fn solve_fixed_point() {
    let out = tractorcalc(&["solve", DX1], None);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["regime"], "generic");
    for (_, order) in v["report"].as_object().unwrap() {
        assert_eq!(order, "inf");
    }
    let recursive = tractorcalc(&["solve", DX1, "--backend", "recursive"], None);
    assert_eq!(recursive.stdout, out.stdout);
}

#[test]
fn solve_reads_stdin() {
    let text = std::fs::read_to_string(DX1).unwrap();
    let out = tractorcalc(&["solve", "-", "--order", "2"], Some(&text));
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 2);
}

#[test]
fn bad_input_exits_2() {
    let out = tractorcalc(&["solve", "-"], Some("{ not json"));
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "json");

    // 2k = n at w0 = -k
    let middle = r#"{"d": 5, "k": 2, "w0": "-2", "data":
        {"dim": 4, "boundary": true, "degree": 2, "weight": "0", "components": {"x1x2": "1"}}}"#;
    let out = tractorcalc(&["solve", "-"], Some(middle));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn obstruction_factor_check() {
    let request = r#"{"op": "factor", "n": 4, "k": 1, "probe":
        {"dim": 4, "boundary": true, "degree": 1, "weight": "0", "components": {"x1": "x2^2"}}}"#;
    let out = tractorcalc(&["obstruction"], Some(request));
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn quick_verify_is_deterministic() {
    let a = tractorcalc(&["verify", "--quick", "--family", "sl2core"], None);
    let b = tractorcalc(&["verify", "--quick", "--family", "sl2core"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let json = tractorcalc(
        &["verify", "--quick", "--family", "sl2core", "--json"],
        None,
    );
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["seed"], 7);

    let none = tractorcalc(&["verify", "--quick", "--family", "nope"], None);
    assert_eq!(none.status.code(), Some(2));
}
