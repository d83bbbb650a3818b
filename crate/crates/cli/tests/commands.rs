use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use futaki_core::exactalg::{ExpPoly, Rational, Real};
use serde_json::Value;

fn input(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "inputs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_futaki"))
        .args(args)
        .env_remove("FUTAKI_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], doc: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_futaki"))
        .args(args)
        .env_remove("FUTAKI_PRECISION_BITS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn entry<'a>(doc: &'a Value, name: &str) -> &'a Value {
    doc["numeric"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == name)
        .unwrap_or_else(|| panic!("no entry {name}"))
}

fn text(doc: &Value, name: &str) -> String {
    entry(doc, name)["text"].as_str().unwrap().to_string()
}

fn number(doc: &Value, name: &str) -> Real {
    let n = &entry(doc, name)["number"];
    let bits = n["precision_bits"].as_u64().unwrap() as u32;
    Real::parse(n["decimal"].as_str().unwrap(), bits).unwrap()
}

#[test]
fn check_reports_invariants() {
    let doc = json(&run(&["check", &input("cubic_surface.json"), "--format", "json"]));
    assert_eq!(text(&doc, "m"), "1");
    assert_eq!(text(&doc, "weights"), "3");
    assert_eq!(text(&doc, "anticanonical_degree"), "3");
    assert_eq!(text(&doc, "torus_dimension"), "1");
    let doc = json(&run(&["check", &input("quadric_pair.json"), "--format", "json"]));
    assert_eq!(text(&doc, "weights"), "-4, 6");
    assert_eq!(text(&doc, "anticanonical_degree"), "4");
}

#[test]
fn non_fano_input_exits_with_two() {
    let out = run_stdin(&["check", "-"], r#"{"ambient_dim": 3, "degrees": [4], "weights": ["0"]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Fano"));
}

#[test]
fn malformed_rational_names_the_field() {
    let out = run_stdin(
        &["eval", "-"],
        r#"{"ambient_dim": 2, "degrees": [], "eigenvalues": ["1", "x", "-1"]}"#,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("eigenvalues[1]"));
}

#[test]
fn eval_reproduces_closed_form() {
    let doc = json(&run(&["eval", &input("cubic_surface.json"), "--format", "json"]));
    assert_eq!(
        doc["expression"],
        "-(1/48)*t^-2*exp(-4*t) + (1/16)*t^-2*exp(4*t) - (1/24)*t^-2*exp(8*t)"
    );
    let round = ExpPoly::parse(doc["expression"].as_str().unwrap()).unwrap();
    assert_eq!(round.to_string(), doc["expression"].as_str().unwrap());
}

#[test]
fn eval_at_zero_is_minus_one() {
    let doc = json(&run(&["eval", &input("quadric_pair.json"), "--t", "0", "--format", "json"]));
    assert_eq!(number(&doc, "F(t)").to_f64(), -1.0);
}

#[test]
fn eval_matches_independent_closed_form() {
    let doc = json(&run(&[
        "eval",
        &input("quadric_pair.json"),
        "--t",
        "1/10",
        "--numeric",
        "--precision",
        "256",
        "--format",
        "json",
    ]));
    let closed = ExpPoly::parse("-(1/48)*t^-2*exp(-5*t) - (1/24)*t^-2*exp(7*t) + (1/16)*t^-2*exp(3*t)").unwrap();
    let expect = closed.eval(&Rational::from((1, 10)), 256).unwrap();
    for name in ["F(t)", "F(t) numeric"] {
        assert!(number(&doc, name).relative_error(&expect).to_f64() < 1e-70);
    }
}

#[test]
fn derivative_along_field_and_zero() {
    let doc = json(&run(&[
        "derivative",
        &input("cubic_surface.json"),
        "--direction=-7,5,1,1",
        "--format",
        "json",
    ]));
    let f = ExpPoly::parse("-(1/48)*t^-2*exp(-4*t) + (1/16)*t^-2*exp(4*t) - (1/24)*t^-2*exp(8*t)").unwrap();
    let d = ExpPoly::parse(doc["expression"].as_str().unwrap()).unwrap();
    assert_eq!(d, f.euler_derivative());
    let doc = json(&run(&["derivative", &input("cubic_surface.json"), "--direction", "0,0,0,0", "--format", "json"]));
    assert_eq!(doc["expression"], "0");
    let out = run(&["derivative", &input("cubic_surface.json"), "--direction", "1,-1,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quantize_rows() {
    let out = run_stdin(
        &["quantize", "-", "--k", "1", "--t", "1/3", "--format", "json"],
        r#"{"ambient_dim": 2, "degrees": []}"#,
    );
    let doc = json(&out);
    assert_eq!(text(&doc, "N_k"), "10");
    assert!(number(&doc, "error").is_zero());
    let doc = json(&run(&["quantize", &input("cubic_surface.json"), "--k", "32", "--t", "1/4", "--format", "json"]));
    let err = number(&doc, "error").to_f64();
    assert!(err > 0.0 && err < 0.05);
}

#[test]
fn soliton_commands() {
    let doc = json(&run(&["soliton", &input("fermat_cubic.json"), "--format", "json"]));
    assert_eq!(text(&doc, "torus_dimension"), "0");
    let doc = json(&run(&["soliton", &input("cubic_surface.json"), "--tol", "1e-12", "--format", "json"]));
    let c: f64 = text(&doc, "coefficients").parse().unwrap();
    assert!(c < 0.0 && (c + 0.422_829_354_709_248_6).abs() < 1e-12);
    assert!(text(&doc, "gradient_norm").parse::<f64>().unwrap() < 1e-12);
    assert_eq!(text(&doc, "critical"), "yes");
    let out = run(&["soliton", &input("quadric_pair.json"), "--max-iter", "0"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_examples_and_bad_input() {
    for name in ["cubic_surface.json", "quadric_pair.json", "projective_plane.json"] {
        let out = run(&["verify", &input(name)]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let out = run_stdin(
        &["verify", "-"],
        r#"{"ambient_dim": 3, "degrees": [3], "supports": [[[3,0,0,0]]], "eigenvalues": ["1", "1", "1", "1"]}"#,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["eval", &input("quadric_pair.json"), "--t", "1/4", "--numeric", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_futaki"))
        .args(["eval", &input("cubic_surface.json"), "--t", "1/4", "--format", "json"])
        .env("FUTAKI_PRECISION_BITS", "80")
        .output()
        .unwrap();
    let doc = json(&out);
    assert_eq!(entry(&doc, "F(t)")["number"]["precision_bits"], 80);
}
