use std::path::PathBuf;

use serde_json::Value;

use deltazx::json::{diagram_from_json, diagram_to_json};
use deltazx::rewrite::Derivation;
use deltazx::{Angle, Diagram};
use deltazx_cli::{run, Outcome};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("deltazx").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", o.stdout))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn write_diagram(dir: &tempfile::TempDir, name: &str, d: &Diagram) -> String {
    write_temp(dir, name, &diagram_to_json(d).to_string())
}

#[test]
fn eval_triangle_exactly() {
    let o = cli(&["eval", &data("triangle.json"), "--mode", "exact"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["text"], "[[1,1],[0,1]]");
    assert_eq!(v["mode"], "exact");
}

#[test]
fn verify_pi_fragment_ruleset() {
    let o = cli(&["verify-axioms", "--ruleset", "dzx_pi"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stderr.starts_with("all rules sound"));
    assert_eq!(json(&o)["sound"], true);
}

#[test]
fn equal_to_itself() {
    let t = data("triangle.json");
    let o = cli(&["equal", &t, &t]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["result"], "Equal");
}

#[test]
fn unequal_diagrams_exit_one_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let h = write_diagram(&dir, "h.json", &Diagram::hadamard());
    let o = cli(&["equal", &data("triangle.json"), &h]);
    assert_eq!(o.code, 1);
    let v = json(&o);
    assert_eq!(v["result"], "NotEqual");
    assert!(v["witness"]["row"].is_u64());
}

#[test]
fn exact_mode_rejects_float_angles() {
    let dir = tempfile::tempdir().unwrap();
    let z = write_diagram(&dir, "z.json", &Diagram::z(Angle::float(0.3), 1, 1));
    assert_eq!(cli(&["eval", &z, "--mode", "exact"]).code, 2);
    let o = cli(&["eval", &z]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["mode"], "float");
}

#[test]
fn malformed_inputs_exit_two_naming_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(&dir, "bad.json", r#"{"calculus": "zx", "nodes": []}"#);
    let o = cli(&["eval", &bad]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("wires"), "{}", o.stderr);
    let syntax = write_temp(&dir, "syntax.json", "{\n  \"calculus\": \"zx\",\n  oops\n}");
    let o = cli(&["eval", &syntax]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);
    let circ = write_temp(&dir, "c.txt", "qubits 2\nh 0\nfoo 1\n");
    let o = cli(&["circuit", &circ]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);
    assert_eq!(cli(&["eval", "/no/such/file.json"]).code, 2);
    assert_eq!(cli(&["verify-axioms", "--ruleset", "nope"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
}

#[test]
fn translate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["translate", "--to", "zw", &data("triangle.json")]);
    assert_eq!(o.code, 0);
    let zw = diagram_from_json(&json(&o)).unwrap();
    assert_eq!(zw.calculus, deltazx::Calculus::Zw);
    let zw_path = write_diagram(&dir, "zw.json", &zw);
    let o = cli(&["translate", "--to", "zx", &zw_path]);
    let back = write_temp(&dir, "back.json", &o.stdout);
    assert_eq!(cli(&["equal", &back, &data("triangle.json")]).code, 0);
    let phase = write_diagram(&dir, "p.json", &Diagram::z(Angle::quarter(1), 1, 1));
    assert_eq!(cli(&["translate", "--to", "zw", &phase]).code, 2);
}

#[test]
fn synth_then_eval() {
    let o = cli(&["synth", &data("hadamard-matrix.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let dir = tempfile::tempdir().unwrap();
    let d = write_temp(&dir, "d.json", &o.stdout);
    let h = write_diagram(&dir, "h.json", &Diagram::hadamard());
    assert_eq!(cli(&["equal", &d, &h, "--mode", "exact"]).code, 0);
}

#[test]
fn simplify_emits_a_replayable_derivation() {
    let o = cli(&["simplify", "--ruleset", "dzx", &data("phase-chain.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(diagram_from_json(&v["diagram"]).unwrap().node_count(), 1);
    let deriv = Derivation::from_json(&v["derivation"]).unwrap();
    assert_eq!(deriv.to_json(), v["derivation"]);
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "deriv.json", &v["derivation"].to_string());
    let o = cli(&["replay", &path]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["result"], "Valid");
}

#[test]
fn tampered_derivation_is_invalid() {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(data("phase-chain.derivation.json")).unwrap()).unwrap();
    assert_eq!(cli(&["replay", &data("phase-chain.derivation.json")]).code, 0);
    v["end"] = diagram_to_json(&Diagram::z(Angle::quarter(3), 1, 1));
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "bad.json", &v.to_string());
    let o = cli(&["replay", &path]);
    assert_eq!(o.code, 1);
    let r = json(&o);
    assert_eq!(r["result"], "Invalid");
    assert_eq!(r["step"], v["steps"].as_array().unwrap().len());
}

#[test]
fn toffoli_circuit() {
    let o = cli(&["circuit", &data("toffoli.txt")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["check"]["result"], "Equal");
    assert_eq!(v["qubits"], 3);
    diagram_from_json(&v["diagram"]).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify-axioms", "--ruleset", "dzx_akpe", "--seed", "11", "--max-arity", "2"];
    let (a, b) = (cli(&args), cli(&args));
    assert_eq!(a, b);
    assert_eq!(a.code, 0, "{}", a.stdout);
}
