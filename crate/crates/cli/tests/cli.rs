use std::path::Path;

use canrel::{normalize, run_command, Outcome};
use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(doc: &str, argv: &str) -> Outcome {
    let mut args = vec!["canrel".to_string()];
    args.extend(argv.split_whitespace().map(String::from));
    args.push("--doc".to_string());
    args.push(fixture(doc));
    run_command(args)
}

fn json(doc: &str, argv: &str) -> Value {
    let out = run(doc, argv);
    assert_eq!(out.code, 0, "{argv}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn inline_doc(text: &str) -> Outcome {
    let dir = std::env::temp_dir().join(format!("canrel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{:x}.json", text.len() * 31 + text.bytes().map(usize::from).sum::<usize>()));
    std::fs::write(&path, text).unwrap();
    run_command(["canrel", "check", "--doc", path.to_str().unwrap()])
}

const RAT: &str = "axes_rational.json";

#[test]
fn composition_of_axes() {
    let v = json(RAT, "compose L1xL2 L2xL1");
    assert_eq!(v["target"], "X");
    assert_eq!(v["basis"], serde_json::json!([["1", "0", "0", "0"], ["0", "0", "1", "0"]]));
    assert_eq!(json(RAT, "deficiency L1xL2 L2xL1"), serde_json::json!({"deficiency": 1, "transversal": false}));
    assert_eq!(json(RAT, "transversal gamma2 gamma_half")["transversal"], true);
}

#[test]
fn closure_membership_and_limits() {
    assert_eq!(json(RAT, "closure-member L1xL2 L2xL1 delta")["member"], true);
    assert_eq!(json(RAT, "closure-member L1xL2 L2xL1 L2xL2")["member"], false);
    let v = json(RAT, "closure-limit gamma_t gamma_inv_t");
    assert_eq!(v["discontinuous"], true);
    assert_eq!(v["deficiency"], 1);
    assert_eq!(v["member"], true);
}

#[test]
fn finite_field_enumeration() {
    assert_eq!(json("axes_f2.json", "sabot-compose L1xL2 L2xL1")["count"], 7);
    assert_eq!(json("axes_f3.json", "sabot-compose L1xL2 L2xL1")["count"], 13);
    assert_eq!(json("axes_f2.json", "lag-count X2")["count"], 15);
    assert_eq!(json("axes_f3.json", "lag-enum X")["count"], 4);
    assert_eq!(run(RAT, "lag-count X").code, 3);
}

#[test]
fn sequences_and_tuples() {
    let v = json(RAT, "ww-reduce gammas");
    assert_eq!(v["sequence"], serde_json::json!({"entries": [], "object": "X"}));
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
    assert_eq!(json(RAT, "ww-equiv gammas nothing --depth 2")["result"], "equivalent");
    assert_eq!(json(RAT, "ww-equiv gammas nothing --depth 1")["result"], "unknown");
    assert_eq!(json(RAT, "nerve-transversal t_axes")["completely_transversal"], false);
    assert_eq!(json(RAT, "nerve-transversal t_gammas")["completely_transversal"], true);
    assert_eq!(run(RAT, "nerve-face t_one 3").code, 2);
}

#[test]
fn lifts() {
    let v = json(RAT, "liftlike liftM L1 Z2");
    assert_eq!(v["liftlike"], true);
    assert_eq!(v["core"]["entries"], serde_json::json!([["1"], ["2"]]));
}

#[test]
fn named_results_extend_the_document() {
    let out = run(RAT, "compose gamma2 gamma_half --name g");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v["relations"]["g"].is_object());
    assert!(v["families"]["gamma_t"].is_object());
    assert_eq!(normalize(&out.stdout).unwrap(), out.stdout);
    assert_eq!(run(RAT, "compose gamma2 gamma_half --name delta").code, 1);
    assert_eq!(run(RAT, "deficiency gamma2 gamma_half --name d").code, 1);
}

#[test]
fn option_misuse_is_a_usage_error() {
    assert_eq!(run(RAT, "compose L1xL2 L2xL1 --depth 2").code, 1);
    assert_eq!(run(RAT, "ww-reduce gammas --seed 3").code, 1);
    assert_eq!(run(RAT, "compose L1xL2").code, 1);
    assert_eq!(run_command(["canrel", "--help"]).code, 0);
}

#[test]
fn schema_errors_name_their_location() {
    let out = run("bad_length.json", "check");
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("relations.f.basis[0]"), "{}", out.stderr);
    let out = run("bad_prime.json", "check");
    assert!(out.stderr.contains("field.p"), "{}", out.stderr);
    assert_eq!(run("bad_lagrangian.json", "check").code, 2);
    assert_eq!(run("bad_syntax.json", "check").code, 1);
    assert_eq!(run("bad_reference.json", "check").code, 1);
}

#[test]
fn strict_keys_and_field_rules() {
    let unknown_key = r#"{"field": {"kind": "rational"}, "spaces": {"X": {"n": 1, "m": 2}}}"#;
    assert_eq!(inline_doc(unknown_key).code, 1);
    let families_mod_p = r#"{"field": {"kind": "prime", "p": 5}, "families": {}}"#;
    assert_eq!(inline_doc(families_mod_p).code, 1);
    let bad_scalar = r#"{"field": {"kind": "rational"}, "spaces": {"X": {"n": 1}},
        "subspaces": {"L": {"space": "X", "basis": [["1/0", "0"]]}}}"#;
    assert_eq!(inline_doc(bad_scalar).code, 1);
    let integers = r#"{"field": {"kind": "prime", "p": 7}, "spaces": {"X": {"n": 1}},
        "subspaces": {"L": {"space": "X", "basis": [[8, 0]]}}}"#;
    let out = inline_doc(integers);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn normalization_is_canonical() {
    let messy = r#"{"spaces": {"Y": {"n": 1}}, "field": {"kind": "rational"},
        "subspaces": {"L": {"space": "Y", "basis": [["2", "4"], ["-1", "-2"]]}}}"#;
    let once = normalize(messy).unwrap();
    assert_eq!(
        once,
        "{\"field\":{\"kind\":\"rational\"},\"spaces\":{\"Y\":{\"n\":1}},\"subspaces\":{\"L\":{\"basis\":[[\"1\",\"2\"]],\"space\":\"Y\"}}}\n"
    );
    assert_eq!(normalize(&once).unwrap(), once);
}
