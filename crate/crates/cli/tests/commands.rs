use std::process::Command;

use qjf_cli::SerializedSeries;

fn qjf(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qjf")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn series_a_json() {
    let (code, out) = qjf(&["series", "--name", "A", "--order", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let s = SerializedSeries::from_json(&out).unwrap();
    let has = |q, t, u, c: &str| s.terms.iter().any(|x| (x.q, x.t, x.u, x.c.as_str()) == (q, t, u, c));
    assert!(has(1, 1, 0, "1/1"));
    assert!(has(1, 0, 1, "-1/1"));
}

#[test]
fn verify_all_passes() {
    let (code, out) = qjf(&["verify", "--suite", "all", "--order", "6"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 20);
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_output_is_deterministic() {
    let a = qjf(&["verify", "--suite", "inversion", "--order", "4", "--seed", "3"]);
    let b = qjf(&["verify", "--suite", "inversion", "--order", "4", "--seed", "3", "--sequential"]);
    assert_eq!(a, b);
}

#[test]
fn ninv_abelian_genus_two() {
    let (code, out) = qjf(&["ninv", "--surface", "abelian", "--g", "2", "--k", "0"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "g=2 delta=0 N^0 = 1");
}

#[test]
fn invalid_config_exits_two() {
    assert_eq!(qjf(&["series", "--name", "A", "--order", "0"]).0, 2);
    assert_eq!(qjf(&["series", "--name", "nope"]).0, 2);
    assert_eq!(qjf(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(qjf(&["ninv", "--surface", "k3", "--g", "5", "--t-order", "8"]).0, 2);
}
