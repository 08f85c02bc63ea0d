use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

use okounkov_core::io;
use okounkov_core::surface::models::{blowup_p2_two_points, hirzebruch_f1};

fn okounkov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_okounkov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn vertex_set(v: &Value) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_str().unwrap().to_string(), p[1].as_str().unwrap().to_string()))
        .collect();
    out.sort();
    out
}

fn pairs(v: &[(i64, i64)]) -> Vec<(String, String)> {
    let mut out: Vec<_> = v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    out.sort();
    out
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn f1() -> String {
    io::surface_to_json(&hirzebruch_f1()).to_string()
}

#[test]
fn body_on_f1_depends_on_the_point() {
    let s = f1();
    let out = okounkov(&[
        "body",
        "--surface",
        &s,
        "--divisor",
        "2,0",
        "--flag",
        r#"{"curve":[1,-1],"multiplicities":{"E":1}}"#,
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(vertex_set(&v), pairs(&[(0, 0), (0, 2), (2, 2)]));
    assert_eq!(v["volume"], json!("4"));

    let out = okounkov(&[
        "body",
        "--surface",
        &s,
        "--divisor",
        "2,0",
        "--flag",
        r#"{"curve":[1,-1]}"#,
    ]);
    assert_eq!(vertex_set(&stdout_json(&out)), pairs(&[(0, 0), (0, 2), (2, 0)]));
}

#[test]
fn body_on_two_point_blowup_has_a_breakpoint() {
    let s = io::surface_to_json(&blowup_p2_two_points()).to_string();
    let out = okounkov(&[
        "body",
        "--surface",
        &s,
        "--divisor",
        "[3,-2,0]",
        "--flag",
        r#"{"curve":[1,-1,0]}"#,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = stdout_json(&out);
    assert_eq!(vertex_set(&v), pairs(&[(0, 0), (0, 1), (2, 1), (3, 0)]));
    assert_eq!(v["volume"], json!("5"));
    assert!(v["breakpoints"].as_array().unwrap().contains(&json!("2")));
}

#[test]
fn surface_files_and_svg_output() {
    let surface = scratch("f1.json");
    std::fs::write(&surface, f1()).unwrap();
    let svg = scratch("f1.svg");
    let result = scratch("f1-body.json");
    let out = okounkov(&[
        "body",
        "--surface",
        surface.to_str().unwrap(),
        "--divisor",
        "2,0",
        "--flag",
        r#"{"curve":[1,-1]}"#,
        "--svg",
        svg.to_str().unwrap(),
        "--output",
        result.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&result).unwrap()).unwrap();
    assert_eq!(vertex_set(&v), pairs(&[(0, 0), (0, 2), (2, 0)]));
}

#[test]
fn decompose_and_walk() {
    let s = f1();
    let out = okounkov(&["decompose", "--surface", &s, "--divisor", "1,2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["P"], json!(["1", "0"]));
    assert_eq!(v["N"], json!({"E": "2"}));

    let out = okounkov(&[
        "walk",
        "--surface",
        &s,
        "--divisor",
        "2,0",
        "--flag",
        r#"{"curve":[1,-1]}"#,
    ]);
    assert!(out.status.success());
    let w = io::walk_from_json(&stdout_json(&out)).unwrap();
    let back = io::walk_to_json(&w);
    assert_eq!(back, stdout_json(&out));
}

#[test]
fn exit_codes() {
    let s = f1();
    let ok = okounkov(&["validate", "--surface", &s]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout_json(&ok)["valid"], json!(true));

    let domain = okounkov(&["decompose", "--surface", &s, "--divisor", "-1,0"]);
    assert_eq!(domain.status.code(), Some(1));
    assert_eq!(stdout_json(&domain)["error"], json!("NotPseudoEffective"));

    let parse = okounkov(&[
        "decompose",
        "--surface",
        "{\"rank\": 2,\n  \"basis\": [}",
        "--divisor",
        "1,0",
    ]);
    assert_eq!(parse.status.code(), Some(2));
    let v = stdout_json(&parse);
    assert_eq!(v["error"], json!("ParseError"));
    assert_eq!(v["detail"]["line"], json!(2));

    let schema = okounkov(&["decompose", "--surface", r#"{"rank": 2}"#, "--divisor", "1,0"]);
    assert_eq!(schema.status.code(), Some(2));
    assert_eq!(stdout_json(&schema)["error"], json!("SchemaError"));

    let missing = okounkov(&[
        "decompose",
        "--surface",
        "/nonexistent/surface.json",
        "--divisor",
        "1,0",
    ]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(stdout_json(&missing)["error"], json!("IOError"));
}

#[test]
fn realize_then_toric_body_round_trips() {
    let out = okounkov(&["realize", "--polygon", r#"{"vertices":[[1,1],[4,1],[4,2],[1,3]]}"#]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let r = stdout_json(&out);
    assert_eq!(r["shift"], json!(["-1", "-1"]));
    let input = json!({"rays": r["rays"], "a": r["a"], "flag": r["flag"]}).to_string();
    let out = okounkov(&["toric-body", "--input", &input]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["forward_agrees"], json!(true));
    assert_eq!(vertex_set(&v), pairs(&[(0, 0), (3, 0), (3, 1), (0, 2)]));
}

#[test]
fn fano_example_is_not_polyhedral() {
    let out = okounkov(&["examples", "fano"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("NON-POLYHEDRAL"), "{text}");

    let out = okounkov(&["slice", "--model", "fano", "--samples", "0,1/20,1/10"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["certificate"], json!("NON-POLYHEDRAL-ON-SAMPLE-WINDOW"));

    let out = okounkov(&["slice", "--model", "toric-control"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["certificate"], json!("INCONCLUSIVE"));
}

#[test]
fn k3_example_reports_the_irrational_endpoint() {
    let out = okounkov(&["examples", "k3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["mu"], json!({"a": "1", "b": "-1/2", "d": 2}));
    assert_eq!(v["certificate"], json!({"a": "8", "b": "-16", "c": "4"}));
}

#[test]
fn verify_passes() {
    let out = okounkov(&["verify", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);
}
