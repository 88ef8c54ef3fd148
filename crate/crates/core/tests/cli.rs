//! End-to-end checks of the `kframe` binary: subcommands, JSON documents and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn kframe(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kframe"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn generated(scenario: &str, k: &str, n: &str, j: &str) -> String {
    let o = kframe(&["generate", "--scenario", scenario, "--k", k, "--n", n, "--J", j, "--seed", "3"], "");
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

const NILPOTENT: &str = r#"{"algebra_k": 1, "module_n": 2,
    "family": [[[1, 0]]],
    "K": [[0, 0], [1, 0]],
    "T": [[0, 0], [1, 0]]}"#;

#[test]
fn generated_frame_passes_frame_check() {
    let doc = generated("frame", "2", "3", "5");
    let o = kframe(&["check", "frame", "--format", "json"], &doc);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdict"], true);
    assert!(v["bounds"]["lower"].as_f64().unwrap() > 0.0);
}

#[test]
fn generation_is_deterministic() {
    assert_eq!(generated("sum_pair", "2", "2", "4"), generated("sum_pair", "2", "2", "4"));
}

#[test]
fn non_frame_exits_one() {
    let doc = r#"{"algebra_k": 1, "module_n": 2, "family": [[[1, 0]]]}"#;
    assert_eq!(code(&kframe(&["check", "frame"], doc)), 1);
    assert_eq!(code(&kframe(&["check", "bessel"], doc)), 0);
}

#[test]
fn schema_errors_exit_two_with_paths() {
    let o = kframe(&["check", "frame"], r#"{"algebra_k": 0, "module_n": 2}"#);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("algebra_k"));

    let o = kframe(&["douglas"], r#"{"algebra_k": 1, "module_n": 2, "t_prime": [[1, 0, 0]], "T": [[1, 0], [0, 1]]}"#);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("t_prime") && err.contains("kn x km"), "{err}");

    assert_eq!(code(&kframe(&["check", "frame"], "not json")), 2);
    assert_eq!(code(&kframe(&["suite", "no-such-suite"], "")), 2);
    assert_eq!(code(&kframe(&["no-such-command"], "")), 2);
}

#[test]
fn douglas_report_on_generated_pair() {
    let doc = generated("douglas_pair", "1", "3", "3");
    let o = kframe(&["douglas", "--format", "json"], &doc);
    let v = json(&o);
    let verdicts = v["condition_verdicts"].as_array().unwrap();
    assert!(verdicts.iter().all(|x| *x == verdicts[0]));
    assert_eq!(code(&o), if verdicts[0] == true { 0 } else { 1 });
}

#[test]
fn sum_pair_satisfies_sum_hypotheses() {
    let doc = generated("sum_pair", "1", "3", "4");
    let o = kframe(&["kframe-sum", "--format", "json"], &doc);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert!(v["hypotheses"].as_array().unwrap().iter().all(|h| h["holds"] == true));
}

#[test]
fn restricted_counterexample_exits_three() {
    let o = kframe(&["transform", "restricted", "--format", "json"], NILPOTENT);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["hypotheses_hold"], true);
    assert_eq!(v["conclusion_holds"], false);
    assert_eq!(v["alternative"]["holds"], true);
}

#[test]
fn failed_hypotheses_exit_one() {
    // K is not surjective, so the surjectivity statements do not apply.
    assert_eq!(code(&kframe(&["transform", "surjectivity"], NILPOTENT)), 1);
}

#[test]
fn unitary_defaults_to_cyclic_shifts() {
    let doc = r#"{"algebra_k": 1, "module_n": 2, "psi": [[1, 0]], "eta": [[2, 3]], "K": [[1, 0], [0, 1]]}"#;
    assert_eq!(code(&kframe(&["unitary", "wandering"], doc)), 0);
    let o = kframe(&["unitary", "generator", "--format", "json"], doc);
    assert_eq!(code(&o), 0);
    let a = &json(&o)["a"];
    // Circulant [[2, 3], [3, 2]].
    assert_eq!(a["matrix"][0][1][0].as_f64().unwrap(), 3.0);
    assert_eq!(a["matrix"][1][0][0].as_f64().unwrap(), 3.0);
}

#[test]
fn output_file_receives_json() {
    let path = std::env::temp_dir().join(format!("kframe-cli-{}.json", std::process::id()));
    let o = kframe(
        &["check", "bessel", "--output", path.to_str().unwrap()],
        r#"{"algebra_k": 1, "module_n": 1, "family": [[[2]]]}"#,
    );
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["bounds"]["upper"].as_f64().unwrap(), 4.0);
}

#[test]
fn suite_json_is_reproducible_and_lists_ids() {
    let args = ["suite", "gram-range", "--trials", "20", "--seed", "5", "--format", "json"];
    let a = kframe(&args, "");
    let b = kframe(&args, "");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["violations"], 0);

    let list = json(&kframe(&["suite", "--list", "--format", "json"], ""));
    let ids: Vec<&str> = list.as_array().unwrap().iter().map(|s| s["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"douglas") && ids.contains(&"unitary-generator"));
}

#[test]
fn suite_counterexample_exits_three() {
    let o = kframe(&["suite", "coisometry-image", "--trials", "60"], "");
    assert_eq!(code(&o), 3);
}
