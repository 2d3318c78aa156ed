use std::path::PathBuf;
use std::process::{Command, Output};

fn rq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rq")).args(args).output().expect("run rq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn worked_matrix() -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli_worked_matrix.json");
    std::fs::write(&path, r#"{"m": 4, "entries": [[2,1,4,2],[3,2,4,3],[3,4,1,1],[1,3,5,5]]}"#).unwrap();
    path
}

#[test]
fn enumerate_ordered_golden() {
    let o = rq(&["enumerate", "--class", "ordered", "--p", "2,1,1", "--r", "0,3,1", "--pi", "231"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(
        lines,
        [
            "a[2,2]a[3,2]a[1,2]a[1,3]",
            "a[2,2]a[3,2]a[1,3]a[1,2]",
            "a[2,2]a[3,3]a[1,2]a[1,2]",
            "a[2,3]a[3,2]a[1,2]a[1,2]"
        ]
    );
}

#[test]
fn enumerate_back_ordered_count() {
    let o = rq(&["enumerate", "--class", "back-ordered", "--p", "2,2,0", "--r", "1,2,1", "--pi", "132", "--count"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn enumerate_json_lists_words() {
    let o = rq(&["enumerate", "--class", "path", "--p", "1,1", "--r", "1,1", "--pi", "21", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 2);
    assert_eq!(v["words"], serde_json::json!(["a[2,1]a[1,2]", "a[2,2]a[1,1]"]));
}

#[test]
fn transform_reports_rising_ranks() {
    let o = rq(&["transform", "--word", "a12a11a22", "--sigma", "21", "--steps"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let ranks: Vec<&str> = text.lines().map(|l| l.split_whitespace().nth(1).unwrap()).collect();
    assert_eq!(ranks, ["0", "1", "2"]);
    assert!(text.lines().last().unwrap().contains("a[2,2]a[1,2]a[1,1]"));
}

#[test]
fn transform_inverse_round_trips() {
    let o = rq(&["transform", "--word", "a22a12a11", "--sigma", "21", "--inverse"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a[1,2]a[1,1]a[2,2]"));
}

#[test]
fn verify_all_small_passes() {
    let o = rq(&["verify", "all", "--m", "2", "--degree", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_main1_m3() {
    let o = rq(&["verify", "main1", "--m", "3", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn free_algebra_control_fails_with_exit_one() {
    let o = rq(&["verify", "matinv", "--m", "2", "--degree", "2", "--relations", "free"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_single_jacobi_instance_json() {
    let o = rq(&["verify", "jacobi", "--m", "3", "--degree", "3", "--indices", "1,2;2,3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.to_string().contains("jacobi"));
}

#[test]
fn verify_output_is_deterministic() {
    let a = rq(&["verify", "prop-jacobi1", "--m", "2", "--degree", "3"]);
    let b = rq(&["verify", "prop-jacobi1", "--m", "2", "--degree", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rq(&["bogus"]).status.code(), Some(2));
    assert_eq!(rq(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(rq(&["enumerate", "--class", "ordered", "--p", "1,1", "--r", "1"]).status.code(), Some(2));
}

#[test]
fn genmm_worked_example() {
    let path = worked_matrix();
    let o = rq(&[
        "genmm",
        "--matrix",
        path.to_str().unwrap(),
        "--d",
        "1,-2,2,-1",
        "--series-degree",
        "5",
        "--coeff",
        "1,0,2,0",
        "--coeff",
        "2,0,2,0",
        "--coeff",
        "1,1,2,0",
        "--coeff",
        "1,0,3,0",
        "--coeff",
        "1,0,2,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let values: Vec<&str> =
        v["coefficients"].as_array().unwrap().iter().map(|c| c["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["40", "262", "128", "312", "251"]);
    assert_eq!(v["cross_check"]["status"], "pass");
    assert_eq!(v["plan"]["M"], serde_json::json!([2, 2, 4]));
}

#[test]
fn genmm_rejects_nonzero_sum() {
    let path = worked_matrix();
    assert_eq!(rq(&["genmm", "--matrix", path.to_str().unwrap(), "--d", "1,0,0,0"]).status.code(), Some(2));
}

#[test]
fn dixon_odd_is_zero() {
    let o = rq(&["dixon", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("= 0"));
}

#[test]
fn dixon_shifted_double_sum_differs() {
    let o = rq(&["dixon", "--n", "4", "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("DIFFER"));
}
