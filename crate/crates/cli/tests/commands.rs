use regmap_cli::{exit, run, Output};
use serde_json::Value;

fn regmap(args: &[&str]) -> Output {
    run(std::iter::once("regmap").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = regmap(&a);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn bound_text() {
    let out = regmap(&["bound", "HP^2"]);
    assert_eq!(out.code, exit::OK);
    assert_eq!(out.stdout, "N >= 14 (Main Theorem I)\n");
}

#[test]
fn height_text() {
    let out = regmap(&["height", "--k", "2", "--n", "5"]);
    assert_eq!(out.code, exit::OK);
    assert!(out.stdout.starts_with("height(c1) = 8 "), "{}", out.stdout);
    assert!(out.stderr.contains("truncation 18"));
    let out = regmap(&["height", "--k", "2", "--n", "5", "--trunc", "30"]);
    assert!(out.stderr.is_empty());
}

#[test]
fn lucas_text() {
    let out = regmap(&["lucas", "7", "3", "--p", "2"]);
    assert_eq!(out.stdout, "C(7,3) = 1 (mod 2) (Lucas' theorem)\n");
    assert_eq!(json(&["lucas", "7", "3", "--p", "2"])["residue"], 1);
    assert_eq!(regmap(&["lucas", "7", "3", "--p", "4"]).code, exit::USAGE);
}

#[test]
fn bound_json_schema() {
    let v = json(&["bound", "(S^4,2)+(R^2,8)"]);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["bound"], 21);
    assert_eq!(v["theorem"], "Main Theorem II");
    let parts = v["breakdown"].as_array().unwrap();
    assert_eq!(parts.len(), 2);
    let sum: u64 = parts.iter().map(|c| c["value"].as_u64().unwrap()).sum();
    assert_eq!(sum, 21);
}

#[test]
fn complex_regime() {
    assert_eq!(json(&["bound", "S^5", "--regime", "complex"])["bound"], 4);
    assert_eq!(json(&["bound", "(CP^4,2)", "--regime", "complex"])["bound"], 8);
    assert_eq!(json(&["bound", "(R^3,3)", "--regime", "complex"])["bound"], 5);
}

#[test]
fn json_is_byte_deterministic() {
    for args in [
        vec!["bound", "S^3 x RP^5"],
        vec!["dual-sw", "RP^5"],
        vec!["verify", "vandermonde:3+sphere:2", "--trials", "300", "--seed", "4"],
        vec!["table", "39"],
        vec!["height", "--k", "3", "--n", "5", "--regime", "real"],
    ] {
        let mut a = args.clone();
        a.push("--json");
        assert_eq!(regmap(&a).stdout, regmap(&a).stdout, "{args:?}");
    }
    let a = regmap(&["verify", "sphere:3", "--trials", "300", "--json"]).stdout;
    let b = regmap(&["verify", "sphere:3", "--trials", "300", "--json", "--sequential"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn every_result_names_a_source() {
    for args in [
        vec!["bound", "RP^9"],
        vec!["bound", "(S^2,2)+(RP^3,2)"],
        vec!["dual-sw", "CP^4"],
        vec!["height", "--k", "2", "--n", "3"],
        vec!["lucas", "10", "4", "--p", "3"],
        vec!["verify", "vandermonde:2"],
        vec!["table", "9"],
    ] {
        let out = regmap(&args);
        assert_eq!(out.code, exit::OK, "{args:?}: {}", out.stderr);
        assert!(out.stdout.contains('('), "{args:?}: {}", out.stdout);
        assert!(out.stdout.is_ascii());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(regmap(&["bound", "RP^1"]).code, exit::USAGE);
    assert_eq!(regmap(&["bound", "S^3 X S^4"]).code, exit::USAGE);
    assert_eq!(regmap(&["bound", "(RP^5,3)"]).code, exit::USAGE);
    assert_eq!(regmap(&["frobnicate"]).code, exit::USAGE);
    assert_eq!(regmap(&["height", "--k", "2", "--n", "5", "--trunc", "12"]).code, exit::INCONCLUSIVE);
    assert_eq!(regmap(&["height", "--k", "2", "--n", "5", "--trunc", "10"]).code, exit::INCONCLUSIVE);
    let out = regmap(&["verify", "sphere:2", "--k", "5", "--trials", "10"]);
    assert_eq!(out.code, exit::COUNTEREXAMPLE);
    assert!(out.stderr.contains("exceeds"));
    assert_eq!(regmap(&["--help"]).code, exit::OK);
}

#[test]
fn errors_in_json_mode() {
    let v = json(&["bound", "S^3 x RP^1"]);
    assert_eq!(v["error"]["kind"], "semantic");
    assert!(v["error"]["message"].as_str().unwrap().contains("RP^1"));
    let v = json(&["bound", "S^3,"]);
    assert_eq!(v["error"]["kind"], "syntax");
}

#[test]
fn dual_sw_reports_both_methods() {
    let v = json(&["dual-sw", "RP^5"]);
    assert_eq!(v["dual_sw"], "1 + a^2");
    assert_eq!(v["q_brute_force"], 2);
    assert_eq!(v["q_closed_form"], 2);
    assert_eq!(json(&["dual-sw", "HP^2"])["q_brute_force"], 4);
}

#[test]
fn table_lookup() {
    let v = json(&["table", "9"]);
    assert_eq!(v["best"]["dimension"], 17);
    assert_eq!(v["best"]["row"], 8);
    assert!(json(&["table", "8"])["best"].is_null());
    assert_eq!(json(&["table"])["rows"].as_array().unwrap().len(), 9);
}
