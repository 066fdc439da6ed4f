use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

const PENTAGON: &str = r#"{"m": 5, "nonfaces": [[1,4],[2,5],[1,3],[2,4],[3,5]]}"#;
const OCTAHEDRON: &str = r#"{"m": 6, "nonfaces": [[1,2],[3,4],[5,6]]}"#;

fn run(args: &[&str], input: &str) -> (Output, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("input.json");
    fs::write(&path, input).unwrap();
    run_file(args, &path)
}

fn run_file(args: &[&str], path: &Path) -> (Output, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_oddsphere"))
        .args(args)
        .arg("--input")
        .arg(path)
        .output()
        .unwrap();
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, value)
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn check_pentagon_is_sphere() {
    let (out, v) = run(&["check"], PENTAGON);
    assert_eq!(code(&out), 0);
    assert_eq!(v["verdict"], "sphere");
    assert_eq!(v["d"], 1);
    assert_eq!(v["certificate"]["kind"], "max_odd_cycle");
}

#[test]
fn check_six_cycle_is_out_of_scope() {
    let six = r#"{"m": 6, "facets": [[1,2],[2,3],[3,4],[4,5],[5,6],[1,6]]}"#;
    let (out, v) = run(&["check"], six);
    assert_eq!(code(&out), 2);
    assert_eq!(v["verdict"], "out_of_scope");
}

#[test]
fn check_not_sphere_exits_one() {
    let path = r#"{"m": 4, "facets": [[1,2],[2,3],[3,4]]}"#;
    let (out, v) = run(&["check"], path);
    assert_eq!(code(&out), 1);
    assert_eq!(v["verdict"], "not_sphere");
    assert_eq!(v["reason"], "wrong_family_shape");
}

#[test]
fn input_errors_exit_64() {
    for bad in [
        r#"{"m": 3, "nonfaces": [[1]]}"#,
        r#"{"m": 3, "nonfaces": [[1,2],[1,2,3]]}"#,
        r#"{"m": 3, "facets": [[2,1]]}"#,
        r#"not json"#,
        r#"{"m": 3}"#,
    ] {
        let (out, _) = run(&["check"], bad);
        assert_eq!(code(&out), 64, "{bad}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn nonfaces_of_octahedron() {
    let oct =
        r#"{"m": 6, "facets": [[1,3,5],[1,3,6],[1,4,5],[1,4,6],[2,3,5],[2,3,6],[2,4,5],[2,4,6]]}"#;
    let (out, v) = run(&["nonfaces"], oct);
    assert_eq!(code(&out), 0);
    assert_eq!(v, json!({"m": 6, "nonfaces": [[1,2],[3,4],[5,6]]}));
    let (_, back) = run(&["complex"], &v.to_string());
    assert_eq!(back, serde_json::from_str::<Value>(oct).unwrap());
}

#[test]
fn realize_octahedron_and_hull_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("oct.json");
    let points = dir.path().join("points.json");
    fs::write(&input, OCTAHEDRON).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_oddsphere"))
        .args(["realize", "--verify", "-i"])
        .arg(&input)
        .arg("-o")
        .arg(&points)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&points).unwrap()).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["points"].as_array().unwrap().len(), 6);

    let (out, hull) = run_file(&["hull"], &points);
    assert_eq!(code(&out), 0);
    assert_eq!(hull["facets"].as_array().unwrap().len(), 8);
    let (missing, _) = run_file(&["nonfaces"], &points.with_file_name("missing.json"));
    assert_eq!(code(&missing), 64);
    let (_, nf) = run(&["nonfaces"], &hull.to_string());
    assert_eq!(nf, serde_json::from_str::<Value>(OCTAHEDRON).unwrap());
}

#[test]
fn realize_pentagon_gives_planar_points() {
    let (out, v) = run(&["realize"], PENTAGON);
    assert_eq!(code(&out), 0);
    assert_eq!(v["dim"], 2);
    let (_, hull) = run(&["hull"], &v.to_string());
    assert_eq!(
        hull,
        json!({"m": 5, "facets": [[1,2],[1,5],[2,3],[3,4],[4,5]]})
    );
}

#[test]
fn realize_rejects_even_family() {
    let hex = r#"{"m": 6, "nonfaces": [[1,2],[2,3],[3,4],[4,5],[5,6],[1,6]]}"#;
    let (out, _) = run(&["realize"], hex);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("maximum odd cycle"));
}

#[test]
fn homology_of_octahedron() {
    let (out, v) = run(&["homology"], OCTAHEDRON);
    assert_eq!(code(&out), 0);
    assert_eq!(v, json!({"reduced_betti": [0, 0, 0, 1]}));
}

#[test]
fn catalog_six_has_two_classes() {
    let out = Command::new(env!("CARGO_BIN_EXE_oddsphere"))
        .args(["catalog", "--m", "6"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    let par = Command::new(env!("CARGO_BIN_EXE_oddsphere"))
        .args(["catalog", "--m", "6", "--parallel"])
        .output()
        .unwrap();
    assert_eq!(par.stdout, out.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_oddsphere"))
        .args(["catalog", "--m", "40"])
        .output()
        .unwrap();
    assert_eq!(code(&bad), 64);
}

#[test]
fn verify_pentagon_passes_every_stage() {
    let (out, v) = run(&["verify"], PENTAGON);
    assert_eq!(code(&out), 0);
    assert_eq!(v["pass"], true);
    let stages: Vec<&str> = v["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["status"].as_str().unwrap())
        .collect();
    assert_eq!(stages, vec!["pass"; 5]);
}

#[test]
fn verify_fails_on_non_sphere() {
    let bowtie = r#"{"m": 5, "facets": [[1,2,3],[3,4,5]]}"#;
    let (out, v) = run(&["verify"], bowtie);
    assert_eq!(code(&out), 1);
    assert_eq!(v["pass"], false);
    assert_eq!(v["stages"][0]["status"], "fail");
}

#[test]
fn output_is_deterministic_and_reparses() {
    for args in [&["check"][..], &["realize"], &["nonfaces"], &["verify"]] {
        let (a, va) = run(args, PENTAGON);
        let (b, _) = run(args, PENTAGON);
        assert_eq!(a.stdout, b.stdout);
        let reparsed: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(reparsed, va);
    }
}

#[test]
fn verbose_prints_cyclic_notation() {
    let (out, _) = run(&["check", "--verbose"], PENTAGON);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("{1,3} — {2,4} — {3,5} — {1,4} — {2,5}"),
        "{err}"
    );
    assert!(err.contains("B_0 = {3}"));
}
