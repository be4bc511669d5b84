//! End-to-end runs of the `qf` binary on the repository fixtures.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn qf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qf")).args(args).output().expect("qf runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = qf(args);
    assert!(out.status.success(), "qf {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_of(args: &[&str]) -> (i32, Value) {
    let out = qf(args);
    assert!(out.stdout.is_empty());
    (out.status.code().unwrap(), serde_json::from_slice(&out.stderr).expect("stderr is a JSON error"))
}

fn temp_file(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("qf-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn classify_kronecker() {
    assert_eq!(ok_json(&["classify", &fixture("kronecker.json")]), json!({ "type": "tame", "diagram": "A~1" }));
    assert_eq!(ok_json(&["classify", &fixture("six_arrow.json")])["type"], "wild");
}

#[test]
fn rotation_has_one_companion_block() {
    let d = ok_json(&["canon", "sim", &fixture("rotation.json")]);
    assert_eq!(d["blocks"], json!([{ "type": "companion", "base": ["1", "0", "1"], "exponent": 1, "poly": "x^2 + 1" }]));
    // over Q(i) the same matrix splits
    let d = ok_json(&["canon", "sim", "--domain", "qi", &fixture("rotation.json")]);
    assert_eq!(d["blocks"].as_array().unwrap().len(), 2);
}

#[test]
fn inertia_and_real_forms() {
    assert_eq!(ok_json(&["inertia", &fixture("inertia_diag.json")]), json!({ "plus": 1, "minus": 1, "zero": 1 }));
    let d = ok_json(&["formcanon", "--real", &fixture("inertia_diag.json")]);
    let kinds: Vec<&str> = d["blocks"].as_array().unwrap().iter().map(|b| b["type"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["plus", "minus", "zero"]);
}

#[test]
fn tits_roots_and_parameters() {
    let t = ok_json(&["tits", &fixture("kronecker.json"), "--eval", "1,-1"]);
    assert_eq!(t["value"], 4);
    assert_eq!(t["signature"], json!({ "plus": 1, "minus": 0, "zero": 1 }));
    let r = ok_json(&["roots", &fixture("kronecker.json"), "--bound", "2"]);
    assert_eq!(r["roots"], json!([[0, 1], [1, 0], [1, 1], [1, 2], [2, 1], [2, 2]]));
    assert_eq!(ok_json(&["params", &fixture("kronecker.json"), "--z", "2,2"])["parameters"], 1);
}

#[test]
fn pencil_and_forms() {
    let d = ok_json(&["canon", "pencil", &fixture("pencil.json")]);
    assert_eq!(d["blocks"].as_array().unwrap().len(), 2);
    let d = ok_json(&["formcanon", "--domain", "qi", "--involution", "conj", &fixture("hermitian_form.json")]);
    let signs: Vec<i64> = d["blocks"].as_array().unwrap().iter().map(|b| b["sign"].as_i64().unwrap()).collect();
    assert_eq!(signs, [-1, 1]);
    let d = ok_json(&["decompose", &fixture("form_graph_rep.json")]);
    assert_eq!(d, json!({ "problem": "congruence", "blocks": [{ "type": "H", "size": 1, "lambda": "-1" }] }));
}

#[test]
fn path_algebra_commands() {
    let p = ok_json(&[
        "palg", "mul", "e3 - delta + beta.alpha", "e1 + 2*gamma", "--quiver", &fixture("commutative_square.json"), "--bound", "2",
    ]);
    assert_eq!(p["product"], "-beta.alpha + 2*gamma");
    let algebra = temp_file(
        "triangular.json",
        r#"{
  "matrix_basis": [
    [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]],
    [["0", "1", "0"], ["0", "0", "0"], ["0", "0", "0"]],
    [["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]],
    [["0", "0", "0"], ["0", "0", "1"], ["0", "0", "0"]],
    [["0", "0", "0"], ["0", "0", "0"], ["0", "0", "1"]]
  ],
  "idempotents": [
    [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]],
    [["0", "0", "0"], ["0", "0", "0"], ["0", "0", "1"]]
  ],
  "generators": [
    {"name": "alpha1", "element": [["0", "1", "0"], ["0", "0", "0"], ["0", "0", "0"]], "p": 1, "q": 1},
    {"name": "alpha2", "element": [["0", "0", "0"], ["0", "0", "1"], ["0", "0", "0"]], "p": 2, "q": 1}
  ]
}"#,
    );
    let q = ok_json(&["palg", "from-algebra", &algebra]);
    assert_eq!(q["relations"], json!(["alpha1.alpha1"]));
    assert_eq!(q["bound"], 10);
    assert_eq!(q["arrows"], json!([{ "id": "alpha1", "src": 1, "dst": 1 }, { "id": "alpha2", "src": 2, "dst": 1 }]));
}

#[test]
fn doubling_and_embeddings() {
    let d = ok_json(&["double", &fixture("kronecker.json")]);
    assert_eq!(d["vertex_labels"], json!(["1", "2", "1*", "2*"]));
    let d = ok_json(&["double", &fixture("form_graph_rep.json")]);
    assert_eq!(d["representation"]["maps"]["l*"], json!([["0", "-1"], ["1", "0"]]));
    let e = ok_json(&["embed", "pair", &fixture("matrix_pair.json")]);
    assert_eq!(e["first"].as_array().unwrap().len(), 8);
    let e = ok_json(&["embed", "quiverrep", &fixture("six_arrow_rep.json"), "--scalars", "1,2,3,5/2"]);
    assert_eq!(e["first"][3][3], "5/2");
}

#[test]
fn exit_codes() {
    let broken = temp_file("broken.json", "{\"vertices\": 2,\n \"arrows\": [");
    let (code, err) = error_of(&["classify", &broken]);
    assert_eq!((code, err["error"]["kind"].as_str()), (1, Some("parse")));
    assert_eq!(err["error"]["line"], 2);
    let (code, err) = error_of(&["canon", "sim", "--tol", "1e-6", &fixture("rotation.json")]);
    assert_eq!((code, err["error"]["kind"].as_str()), (2, Some("domain")));
    let (code, _) = error_of(&["roots", &fixture("six_arrow.json")]);
    assert_eq!(code, 2);
    let (code, _) = error_of(&["embed", "quiverrep", &fixture("six_arrow_rep.json"), "--scalars", "1,2,3,1"]);
    assert_eq!(code, 2);
    let (code, _) = error_of(&["canon", "frobnicate", &fixture("rotation.json")]);
    assert_eq!(code, 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["canon", "starcongr", "--domain", "cfloat", &fixture("hermitian_form.json")];
    let first = qf(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, qf(&args).stdout);
    let pretty = qf(&["canon", "pencil", "--output", "pretty", &fixture("pencil.json")]);
    assert_eq!(String::from_utf8(pretty.stdout).unwrap(), "pencil: (I, C((x - 2)^2)) + (J_1(0), I_1)\n");
}
