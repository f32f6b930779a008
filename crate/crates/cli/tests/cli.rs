use std::path::PathBuf;
use std::process::Command;

use piekit::corpus::{equalizer_collapse, equalizer_counterexample};
use piekit::schema::{CatValuedDoc, DiagramMapDoc, DIAGRAM_V1};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_piekit"))
        .args(args)
        .output()
        .expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), report)
}

fn write_json(dir: &tempfile::TempDir, name: &str, v: Value) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn inserter_is_pie() {
    let (code, r) = run(&["check-weight", &data("inserter.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], "report/v1");
    assert_eq!(r["result"]["verdict"], "pie");
    assert_eq!(r["result"]["certificate"]["kind"], "decomposition");
}

#[test]
fn equalizer_is_not_pie_with_a_refutation() {
    let (code, r) = run(&["check-weight", &data("equalizer.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "not-pie");
    assert_eq!(r["result"]["certificate"]["kind"], "refutation");
}

#[test]
fn zk_binary_one_variable() {
    let (code, r) = run(&["zk", "--signature", &data("binary.json"), "--n", "1", "--bound", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["object_count"], 9);
    assert_eq!(r["config"]["bound"], 3);
}

#[test]
fn reports_are_deterministic() {
    let args = ["refute-semiflexible", "named:equalizer", "--seed", "7"];
    let a = Command::new(env!("CARGO_BIN_EXE_piekit")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_piekit")).args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["config"]["seed"], 7);
    assert_eq!(r["result"]["verdict"], "not-semiflexible");
    assert_eq!(r["result"]["replayed"], true);
}

#[test]
fn pie_weights_are_not_sent_to_the_refuter() {
    let (code, r) = run(&["refute-semiflexible", "named:comma"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "pie");
}

#[test]
fn unknown_fields_are_schema_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(data("inserter.json")).unwrap()).unwrap();
    doc["colour"] = Value::from("blue");
    let path = write_json(&dir, "bad.json", doc);
    let (code, r) = run(&["check-weight", &path]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["kind"], "schema");
}

#[test]
fn wrong_schema_tag_is_rejected() {
    let (code, r) = run(&["check-weight", &data("binary.json")]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "schema");
}

#[test]
fn perturbed_pentagon_exits_one() {
    let (code, r) = run(&["check-algebra", "--presentation", &data("monoidal.json"), "--builtin", "idempotent-z3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["equations"].as_array().unwrap().len(), 9);
    let (code, r) = run(&[
        "check-algebra",
        "--presentation",
        &data("monoidal.json"),
        "--builtin",
        "idempotent-z3",
        "--perturb",
        "alpha:((x,*),(x,*),(x,*)):(id_x,g^1)",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "property_failed");
    assert_eq!(r["result"]["failed"], serde_json::json!(["pentagon"]));
}

#[test]
fn budget_exhaustion_exits_three() {
    let (code, r) = run(&["zk", "--signature", "named:binary", "--n", "2", "--budget", "5"]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], "budget_exceeded");
}

#[test]
fn equalizer_preservation_fails() {
    let dir = tempfile::tempdir().unwrap();
    let map = write_json(&dir, "collapse.json", serde_json::to_value(DiagramMapDoc::from_map(&equalizer_collapse(), None)).unwrap());
    let (code, r) = run(&["preserve", "equivalence", "--weight", "named:equalizer", "--map", &map]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["holds"], false);
    let (code, _) = run(&["preserve", "equivalence", "--weight", "named:inserter", "--map", &map]);
    assert_eq!(code, 0);
}

#[test]
fn limits_of_the_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let d = write_json(&dir, "d.json", serde_json::to_value(CatValuedDoc::from_cat_valued(&equalizer_counterexample(), DIAGRAM_V1)).unwrap());
    let (_, s) = run(&["limit", "strict", "--weight", &data("equalizer.json"), "--diagram", &d]);
    let (_, p) = run(&["limit", "pseudo", "--weight", &data("equalizer.json"), "--diagram", &d]);
    assert_eq!(s["result"]["object_count"], 0);
    assert!(p["result"]["object_count"].as_u64().unwrap() > 0);
}

#[test]
fn transport_and_compiled_evaluation() {
    let (code, r) = run(&["transport", "--weight", "named:comma", "--map", &data("comma_thickening.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["exact"], true);
    let (code, r) = run(&["eval-pie", "--weight", "named:comma", "--diagram", "named:comma"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["strict_limit_comparison"]["relation"], "isomorphic");
}

#[test]
fn set_monad_signature_of_monoidal() {
    let (code, r) = run(&["set-monad-signature", "--presentation", "named:monoidal", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["agree"], true);
    assert_eq!(r["result"]["signature"]["2"], serde_json::json!(["m"]));
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_piekit"))
        .args(["check-weight", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let text = std::fs::read(data("comma.json")).unwrap();
    child.stdin.take().unwrap().write_all(&text).unwrap();
    let out = child.wait_with_output().unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["verdict"], "pie");
}
