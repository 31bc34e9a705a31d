use bourbakikit::linalg::PolyMatrix;
use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bourbakikit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = run(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn differential_round_trips_through_json() {
    let (code, v) = json(&["koszul", "diff", "--n", "4", "--i", "2"]);
    assert_eq!(code, 0);
    let m: PolyMatrix = serde_json::from_value(v).unwrap();
    assert_eq!((m.rows(), m.cols()), (4, 6));
    let expected = bourbakikit::koszul::differential(4, 2).unwrap().matrix;
    assert_eq!(m.fingerprint(), expected.fingerprint());
}

#[test]
fn catalog_bundles_pass() {
    for args in [
        &["catalog", "ztop", "--n", "4", "--i", "1", "--j", "3"][..],
        &["catalog", "zn2", "--n", "5"],
        &["catalog", "z2", "--n", "4"],
        &["catalog", "n6z3"],
    ] {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["certificate"]["verdict"], true, "{args:?}");
    }
}

#[test]
fn bad_configuration_is_reported_as_expected() {
    let (code, v) = json(&["catalog", "n6z3-bad"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["divisible_by_x2x4x6"], true);
}

#[test]
fn failing_certificate_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.json",
        r#"{"n":2,"rows":2,"cols":1,"entries":[["x1^2"],["x1*x2"]]}"#,
    );
    let out = run(&["check-map", "--matrix", &m]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("common factor"));
    let ok = write(dir.path(), "v.json", r#"{"n":2,"rows":2,"cols":1,"entries":[["x1"],["x2"]]}"#);
    assert_eq!(run(&["check-map", "--matrix", &ok]).status.code(), Some(0));
    assert_eq!(
        run(&["check-presentation", "--matrix", &ok, "--rank", "2"]).status.code(),
        Some(0)
    );
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"rows\": 2,\n  \"cols\": }");
    let out = run(&["check-map", "--matrix", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2 column"), "{err}");

    let zero = write(dir.path(), "z.json", r#"{"n":2,"rows":2,"cols":1,"entries":[["0"],["0"]]}"#);
    let out = run(&["extract-ideal", "--matrix", &zero]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no full-rank submatrix"));

    let shape = write(dir.path(), "s.json", r#"{"n":1,"rows":2,"cols":1,"entries":[["x1"]]}"#);
    assert_eq!(run(&["check-map", "--matrix", &shape]).status.code(), Some(2));

    assert_eq!(run(&["check-map", "--matrix", "/nonexistent/m.json"]).status.code(), Some(2));
    assert_eq!(run(&["koszul", "diff", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["obstruction", "--n", "5", "--i", "1"]).status.code(), Some(2));
}

#[test]
fn extract_from_monomial_generators() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", r#"{"n":3,"gens":["x1*x2","x2*x3","x1*x3"]}"#);
    let (code, v) = json(&["extract-ideal", "--gens", &g]);
    assert_eq!(code, 0);
    assert_eq!(v["ideal"]["gens"].as_array().unwrap().len(), 3);
}

#[test]
fn generic_search_is_deterministic() {
    let args = ["search-generic", "--n", "5", "--i", "3", "--seed", "7", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    let c = run(&with_out);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["search-multigraded", "--n", "5", "--i", "2", "--no-pruning", "--format", "json"];
    let one = bin().args(args).env("BOURBAKIKIT_THREADS", "1").output().unwrap();
    let two = bin().args(args).env("BOURBAKIKIT_THREADS", "2").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let bad = bin().args(args).env("BOURBAKIKIT_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn multigraded_search_n6_i3_finds_nothing() {
    let (code, v) = json(&["search-multigraded", "--n", "6", "--i", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["passing"], 0);
    assert_eq!(v["complete"], true);
    assert_eq!(v["total"], 167960);
}

#[test]
fn bourbaki_numbers() {
    let (code, v) = json(&["bourbaki-number", "--n", "6", "--i", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["m"], v["closed_form"]);
    let (_, v) = json(&["bourbaki-number", "--k", "3", "--r", "4", "--e1", "-2"]);
    assert_eq!(v["m"], 11);
}

#[test]
fn obstruction_verdicts() {
    let out = run(&["obstruction", "--n", "5", "--i", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let (_, v) = json(&["obstruction", "--n", "6", "--i", "3"]);
    assert_eq!(v["verdict"], "not excluded");
}

#[test]
fn rees_commands_pass_for_small_n() {
    for sub in ["normality", "canonical", "reduction"] {
        let (code, v) = json(&["rees", sub, "--n", "4", "--tmax", "2"]);
        assert_eq!(code, 0, "{sub}: {v}");
    }
    let (code, v) = json(&["rees", "canonical", "--n", "3", "--tmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"], "type_two");
    // F_2 for n = 5 sits at t = 3.
    let (code, v) = json(&["rees", "canonical", "--n", "5", "--tmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["classification"], "inconclusive");
}
