use std::process::{Command, Output};

use otype::Ordinal;
use serde_json::Value;

fn otype(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otype")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = otype(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&["eval", "ord(w+1) . antichain(2)"]), "w*2+2");
    assert_eq!(stdout(&["eval", "ord(w) . ord(w)"]), "w^2");
    assert_eq!(stdout(&["eval", "antichain(2) . ord(w+1)"]), "w+2");
    assert_eq!(stdout(&["eval", "chain(3) (+) ord(w)"]), "w+3");
}

#[test]
fn decompose_and_compare() {
    assert_eq!(stdout(&["decompose", "ord(w) + chain(3)"]), "delta=w m=3 k=1");
    assert_eq!(stdout(&["decompose", "ord(w^2)"]), "delta=w^2 m=0 k=0");
    assert_eq!(stdout(&["compare", "ord(w+1) . antichain(2)", "ord(w*2+1)"]), "greater");
    assert_eq!(stdout(&["compare", "chain(2) + chain(3)", "chain(5)"]), "equal");
    assert_eq!(stdout(&["compare", "ord(w)", "ord(w^2)"]), "less");
}

#[test]
fn json_values_parse_as_ordinals() {
    let v: Value = serde_json::from_str(&stdout(&["eval", "--json", "ord(w+1) . antichain(2)"])).unwrap();
    assert_eq!(Ordinal::parse(v["o"].as_str().unwrap()).unwrap().to_string(), "w*2+2");
    let v: Value = serde_json::from_str(&stdout(&["decompose", "--json", "ord(w) + chain(3)"])).unwrap();
    for key in ["delta", "m", "k"] {
        Ordinal::parse(v[key].as_str().unwrap()).unwrap();
    }
    assert_eq!(v["m"], "3");
    let v: Value = serde_json::from_str(&stdout(&["counterexample", "--json"])).unwrap();
    assert_eq!(v["formula_value"], "w*2+2");
    assert_eq!(v["naive_product"], "w*2+1");
    assert_eq!(v["witness"]["passed"], true);
}

#[test]
fn trace_prints_the_recursion() {
    let out = stdout(&["trace", "ord(w+1) . poset(3; 0<1, 0<2)"]);
    assert!(out.contains("w*3+2"), "{out}");
    assert_eq!(out.lines().count(), 7);
    let out = otype(&["trace", "ord(w) . ord(w)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = otype(&["trace", "--cap", "3", "ord(w) . chain(4)"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn counterexample_text() {
    let out = stdout(&["counterexample"]);
    assert!(out.contains("= w*2+2"));
    assert!(out.contains("w*2+2 > w*2+1: true"));
    assert!(out.contains("witness pass"));
}

#[test]
fn exit_codes() {
    let out = otype(&["eval", "chain(3) + "]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 11"));
    let deep = format!("ord({}1{})", "w^(".repeat(80), ")".repeat(80));
    assert_eq!(otype(&["eval", &deep]).status.code(), Some(3));
    assert_eq!(otype(&["check", "nope"]).status.code(), Some(2));
}

#[test]
fn check_is_deterministic_per_seed() {
    let args = ["check", "all", "--seed", "7", "--cases", "50", "--json"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let reports: Value = serde_json::from_str(&first).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r["failures"] == 0));
}
