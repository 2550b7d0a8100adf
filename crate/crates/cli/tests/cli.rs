use std::path::{Path, PathBuf};
use std::process::Command;

use monogen_cli::run;
use monogen_core::report::validate_report_json;
use serde_json::Value;

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn monogen(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("monogen").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("monogen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn classify_dedekind_human() {
    let (code, out, _) = monogen(&["classify", &corpus("dedekind.json"), "--height", "10"]);
    assert_eq!(code, 0);
    assert!(out.contains("global: not monogenic (common index divisor 2)"), "{out}");
    assert!(out.contains("zariski-local: no (common index divisors: 2)"));
    assert!(out.contains("geometric points: yes"));
}

#[test]
fn classify_json_passes_schema_validation() {
    for name in ["dedekind.json", "gaussian.json", "pure_cubic_175.json", "biquadratic.json"] {
        let (code, out, _) = monogen(&["classify", &corpus(name), "--height", "3", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        validate_report_json(&v).unwrap();
    }
}

#[test]
fn schema_validator_rejects_broken_reports() {
    let (_, out, _) = monogen(&["classify", &corpus("dedekind.json"), "--json"]);
    let good: Value = serde_json::from_str(&out).unwrap();
    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("zariski_local");
    assert!(validate_report_json(&missing).is_err());
    let mut contradictory = good.clone();
    contradictory["global"] = serde_json::json!({"status": "monogenic", "witness": [0, 1, 0]});
    assert!(validate_report_json(&contradictory).is_err());
}

#[test]
fn cited_flag_changes_twisted_note() {
    let path = corpus("pure_cubic_175.json");
    let (_, plain, _) = monogen(&["classify", &path, "--height", "20"]);
    assert!(plain.contains("twisted: unknown"));
    assert!(plain.contains("local obstruction: values mod 7 never ±1"));
    let (_, cited, _) = monogen(&["classify", &path, "--height", "20", "--cited-not-monogenic"]);
    assert!(cited.contains("twisted: not twisted monogenic"));
    assert!(cited.contains("global: unknown"));
}

#[test]
fn artin_subcommand() {
    let (code, out, _) = monogen(&["artin", &corpus("biquadratic.json"), "--prime", "2", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["factors"].as_array().unwrap().len(), 1);
    assert_eq!(v["factors"][0]["t"], 2);
    assert_eq!(v["fiber_monogenic"], false);
    let (_, human, _) = monogen(&["artin", &corpus("dedekind.json"), "--prime", "2"]);
    assert_eq!(human.matches("dim 1, f 1, t 0").count(), 3);
    assert!(human.contains("fiber monogenic: no"));
}

#[test]
fn search_and_index_form() {
    let (code, out, _) = monogen(&["search", &corpus("gaussian.json"), "--height", "1", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["witnesses"], serde_json::json!([[0, -1], [0, 1]]));
    assert_eq!(v["classes"], serde_json::json!([[0, 1]]));
    let (code, out, _) = monogen(&["index-form", &corpus("dedekind.json")]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("i = 2*x2^3 + 15*x2^2*x3 + 31*x2*x3^2 + 20*x3^3"));
    let j: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(j["vars"], serde_json::json!(["x1", "x2", "x3"]));
    let (_, chart, _) = monogen(&["index-form", &corpus("fermat_chart.json"), "--json"]);
    let j: Value = serde_json::from_str(&chart).unwrap();
    assert_eq!(j["text"], "x2^3 + (-t^3 - 1)*x3^3");
}

#[test]
fn twisted_curve_subcommand() {
    let (code, out, _) = monogen(&["twisted-curve", "--degree", "3", "--genus-source", "0", "--genus-target", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("not divisible"), "{out}");
    let (_, out, _) =
        monogen(&["twisted-curve", "--degree", "3", "--genus-source", "1", "--genus-target", "0", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["line_bundle_degree"], 1);
    let (code, _, err) = monogen(&["twisted-curve", "--degree", "1", "--genus-source", "0", "--genus-target", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("degenerate"));
}

#[test]
fn computation_errors_exit_one() {
    let (code, _, err) = monogen(&["validate", &corpus("half_sqrt5.json"), "--json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["error"]["kind"], "NotClosedUnderMultiplication");
    assert!(v["error"]["message"].as_str().unwrap().contains("b2*b2"));

    let (code, _, err) = monogen(&["validate", &corpus("malformed_constants.json"), "--json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["error"]["kind"], "Parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("constants[1][1]"));

    let (code, _, err) = monogen(&["classify", &corpus("squaring_chart.json")]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "));

    let (code, _, _) = monogen(&["validate", "/nonexistent/algebra.json"]);
    assert_eq!(code, 1);
}

#[test]
fn invalid_structure_constants_name_the_axiom() {
    let body = r#"{"base": {"kind": "Z"}, "rank": 2,
        "constants": [[[1, 0], [0, 1]], [[0, 2], [-1, 0]]], "identity": [1, 0], "label": "bad"}"#;
    let path = temp_file("noncommutative.json", body);
    let (code, _, err) = monogen(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("commutativity"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(monogen(&["frobnicate"]).0, 2);
    assert_eq!(monogen(&["artin", &corpus("dedekind.json")]).0, 2);
    assert_eq!(monogen(&["classify", &corpus("dedekind.json"), "--height", "-1"]).0, 2);
    assert_eq!(monogen(&[]).0, 2);
    let (code, out, _) = monogen(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify"));
}

#[test]
fn validate_reports_shape() {
    let (code, out, _) = monogen(&["validate", &corpus("biquadratic.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, "valid: Z[sqrt2, sqrt3] (rank 4 over Z)\n");
}

#[test]
fn corpus_subcommand_passes() {
    let dir = corpus("");
    let (code, out, _) = monogen(&["corpus", "--dir", &dir]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
    let (_, again, _) = monogen(&["corpus", "--dir", &dir]);
    assert_eq!(out, again);
}

#[test]
fn corpus_reports_failures() {
    let fixture = std::fs::read_to_string(corpus("gaussian.json")).unwrap();
    let dir = temp_file("gaussian.json", &fixture).parent().unwrap().to_path_buf();
    let expected = r#"{"fixture": "gaussian.json", "checks": [
        {"check": "discriminant", "provenance": "trivial", "expected": -4},
        {"check": "discriminant", "provenance": "trivial", "expected": 4}]}"#;
    std::fs::write(dir.join("gaussian.expected.json"), expected).unwrap();
    let (code, out, _) = monogen(&["corpus", "--dir", dir.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("expected \"4\", got \"-4\""), "{out}");
    assert!(out.ends_with("1/2 checks passed\n"));
}

#[test]
fn enumeration_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_monogen"))
        .args(["classify", &corpus("dedekind.json"), "--json"])
        .env("MONOGEN_MAX_ENUM", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "BudgetExceeded");
}

#[test]
fn huge_coefficients_warn_but_succeed() {
    let big = format!("1{}", "0".repeat(181));
    let body = format!(
        r#"{{"base": {{"kind": "Z"}}, "rank": 2,
        "constants": [[[1, 0], [0, 1]], [[0, 1], ["{big}", 0]]], "identity": [1, 0], "label": "big"}}"#
    );
    let path = temp_file("huge.json", &body);
    let (code, out, err) = monogen(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("valid: big"));
    assert!(err.starts_with("warning: coefficients of 602 bits"), "{err}");
}
