use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn diffkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffkit"))
        .args(args)
        .env_remove("DIFFKIT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/run-report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn assert_valid(doc: &Value) {
    let v = schema();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn eval_examples() {
    let out = diffkit(&["eval", "--model", "findiff", "--term", "(d (prim sq))", "--at", "(3,2)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "16\n");
    let out = diffkit(&["eval", "--term", "(d id)", "--at", "(3, 5)"]);
    assert_eq!(stdout(&out), "5\n");
    let out = diffkit(&["eval", "--term", "(add zero zero)", "--at", "7"]);
    assert_eq!(stdout(&out), "0\n");
    let out = diffkit(&["eval", "--model", "smooth", "--term", "(d (prim cube))", "--at", "(2, 1)"]);
    assert_eq!(stdout(&out), "12\n");
    let out = diffkit(&[
        "eval", "--model", "streams:k=2", "--space", "Stream(Int[-9,9],2)", "--term", "(d (prim sq))", "--at",
        "([1, 1], [1, 1])",
    ]);
    assert_eq!(stdout(&out), "[3, 3]\n");
}

#[test]
fn eval_json_echoes_the_types() {
    let out = diffkit(&["eval", "--space", "Z7", "--term", "(d (prim sq))", "--at", "(3,2)", "--format", "json"]);
    let doc = report(&out);
    assert_eq!(doc["value"], "2");
    assert_eq!(doc["dom"], "(Z7 x Z7)");
    assert_eq!(doc["cod"], "Z7");
}

#[test]
fn derive_prints_normal_forms() {
    let out = diffkit(&["derive", "--term", "(comp (prim sq) (prim inc))"]);
    assert_eq!(stdout(&out), "(comp (d (prim sq)) (pair (comp (prim inc) pi0) (d (prim inc))))\n");
    let out = diffkit(&["derive", "--term", "id"]);
    assert_eq!(stdout(&out), "pi1\n");
    let out = diffkit(&["derive", "--term", "(pair id (prim sq))"]);
    assert_eq!(stdout(&out), "(pair pi1 (d (prim sq)))\n");
    let out = diffkit(&["derive", "--term", "(prim sq)", "--order", "2", "--format", "json"]);
    let doc = report(&out);
    assert_eq!(doc["derivative"], "(d (d (prim sq)))");
    assert_eq!(doc["dom"], "((Int[-20,20] x Int[-20,20]) x (Int[-20,20] x Int[-20,20]))");
}

#[test]
fn check_exit_codes() {
    let out = diffkit(&[
        "check", "--model", "findiff", "--space", "Z7", "--axioms", "all", "--subjects", "50", "--seed", "42",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = diffkit(&[
        "check", "--model", "findiff", "--space", "Z7", "--axioms", "CDC2-additivity", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = report(&out);
    assert_valid(&doc);
    let first = &doc["results"][0];
    assert_eq!(first["subject"], "sq");
    assert_eq!(first["verdict"], "fail");
    assert_eq!(first["counterexample"]["point"], "(0, (1, 1))");
    assert_eq!(first["counterexample"]["lhs"], "4");
    assert_eq!(first["counterexample"]["rhs"], "2");
    assert!(doc["violations_total"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["check", "--bogus"],
        vec!["check", "--model", "nonsense"],
        vec!["check", "--space", "Z0"],
        vec!["check", "--model", "smooth", "--space", "Z7"],
        vec!["check", "--axioms", "CdC.99"],
        vec!["eval", "--term", "(comp id", "--at", "1"],
        vec!["eval", "--term", "(comp (prim sq) (pair id id))", "--at", "1"],
        vec!["eval", "--term", "(prim nope)", "--at", "1"],
        vec!["eval", "--term", "id", "--at", "(1, 2"],
        vec!["lambda-check", "--model", "smooth"],
        vec!["derive"],
    ] {
        let out = diffkit(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn every_law_command_emits_schema_valid_reports() {
    let runs: Vec<Vec<&str>> = vec![
        vec!["check", "--space", "Z5", "--axioms", "cdc"],
        vec!["check", "--model", "smooth", "--axioms", "cdc,Additivity", "--samples", "32"],
        vec!["check", "--model", "module:r=3", "--space", "Z5"],
        vec!["check", "--model", "streams:k=4", "--space", "Stream(Z3,4)", "--axioms", "cdc", "--samples", "64"],
        vec!["monad-laws", "--space", "Z5", "--subjects", "3"],
        vec!["kleisli-check", "--space", "Z5", "--subjects", "3"],
        vec!["algebra-check", "--space", "Z5"],
        vec!["lambda-check", "--max-size", "3", "--subjects", "5"],
        vec!["flatness", "--model", "smooth", "--space", "R^2"],
        vec!["flatness", "--model", "streams:k=3", "--space", "Stream(Z2,3)"],
    ];
    for args in runs {
        let mut args = args.clone();
        args.extend(["--format", "json", "--seed", "3"]);
        let out = diffkit(&args);
        let doc = report(&out);
        assert_valid(&doc);
        let failed = doc["violations_total"].as_u64().unwrap() > 0;
        assert_eq!(out.status.code(), Some(i32::from(failed)), "{args:?}");
        assert_eq!(doc["seed"], 3);
    }
}

#[test]
fn streams_are_not_flat() {
    let out = diffkit(&["flatness", "--model", "streams:k=3", "--space", "Stream(Z2,3)", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = report(&out);
    let failed: Vec<&str> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["verdict"] == "fail")
        .map(|r| r["axiom"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["F.4"]);
}

fn results_of(args: &[&str], seed_env: Option<&str>) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_diffkit"));
    cmd.args(args).env_remove("DIFFKIT_SEED");
    if let Some(s) = seed_env {
        cmd.env("DIFFKIT_SEED", s);
    }
    let doc: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
    format!("{} {}", doc["seed"], doc["results"])
}

#[test]
fn seeds_reproduce_results_and_env_overrides_flag() {
    let args = [
        "check", "--model", "smooth", "--axioms", "cdc", "--subjects", "4", "--samples", "16", "--seed", "5", "--format",
        "json",
    ];
    let first = results_of(&args, None);
    assert_eq!(first, results_of(&args, None));
    let other = results_of(&args, Some("6"));
    assert_ne!(first, other);
    let mut six = args;
    six[10] = "6";
    assert_eq!(other, results_of(&six, None));
    let out = Command::new(env!("CARGO_BIN_EXE_diffkit"))
        .args(args)
        .env("DIFFKIT_SEED", "six")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_subjects_and_structure_maps_from_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"space": "Z5", "table": [0, 1, 4, 4, 1]}}"#).unwrap();
    let path = file.path().to_str().unwrap();
    let out = diffkit(&[
        "check", "--space", "Z5", "--table", path, "--no-primitives", "--subjects", "0", "--axioms", "Additivity",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = report(&out);
    assert_eq!(doc["results"].as_array().unwrap().len(), 1);
    assert_eq!(doc["results"][0]["subject"], "table");

    let nu: Vec<String> = (0..25).map(|i| ((i / 5 + i % 5) % 5).to_string()).collect();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"space": "Z5", "nu": [{}]}}"#, nu.join(", ")).unwrap();
    let out = diffkit(&[
        "algebra-check", "--space", "Z5", "--table", file.path().to_str().unwrap(), "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let doc = report(&out);
    let axioms: Vec<&str> = doc["results"].as_array().unwrap().iter().map(|r| r["axiom"].as_str().unwrap()).collect();
    assert_eq!(axioms.iter().filter(|a| **a == "Alg.extract").count(), 2);
}

#[test]
fn table_format_summarises() {
    let out = diffkit(&["check", "--space", "Z5", "--axioms", "CdC.3"]);
    let text = stdout(&out);
    assert!(text.starts_with("PASS"));
    assert!(text.lines().last().unwrap().starts_with("1 laws: 1 passed, 0 failed, 0 unknown; 0 violations"));
}
