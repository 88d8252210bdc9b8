use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn strata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata")).args(args).env_remove("STRATA_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = strata(&all);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("json report"))
}

#[test]
fn roundtrip_of_figure_one_reports_the_isomorphism() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = strata(&["roundtrip", "--category", &fixture("fig1.json"), "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    let iso = &v["result"]["isomorphism"];
    assert_eq!(iso["u1v"], "u1v");
    assert_eq!(iso.as_object().unwrap().len(), 8);
}

#[test]
fn bad_antichain_fails_with_witness() {
    let (code, v) = json_report(&["check-strat", "--strat", &fixture("bad_antichain.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["witness"]["cell"], serde_json::json!({ "dim": 1, "index": 0 }));
    assert_eq!(v["result"]["witness"]["label"], "c");
    let o = strata(&["check-strat", "--strat", &fixture("good_edge.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn hexagon_morse_classify() {
    let o = strata(&["morse", "classify", "--fixture", "hexagon"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# cells (2, 6, 6)"));
    let (code, v) = json_report(&["morse", "classify", "--matching", &fixture("height_matching.json"), "--flowhoms", &fixture("flowhoms.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cells"], serde_json::json!([2, 6, 6]));
    assert_eq!(v["result"]["strata"], 2);
}

#[test]
fn missing_flow_homs_is_a_parse_error() {
    let o = strata(&["morse", "flow", "--matching", &fixture("height_matching.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cyclic_matching_is_a_check_failure() {
    assert_eq!(strata(&["morse", "validate", "--matching", &fixture("three_cycle.json")]).status.code(), Some(1));
    assert_eq!(strata(&["morse", "complex", "--matching", &fixture("three_cycle.json")]).status.code(), Some(1));
    let (code, v) = json_report(&["morse", "complex", "--matching", &fixture("circle_matching.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["homology"]["betti"], serde_json::json!([1, 1]));
}

#[test]
fn height_function_file_gives_two_critical_cells() {
    let (code, v) = json_report(&["morse", "validate", "--matching", &fixture("height_function.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["critical"], serde_json::json!(["[v0]", "[v1v2v3]"]));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"objects\": [").unwrap();
    assert_eq!(strata(&["nerve", "--category", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, r#"{"objects":["x"],"homs":{"x->x":{"kind":"discrete","elements":["f"]}},"compose":[]}"#).unwrap();
    assert_eq!(strata(&["nerve", "--category", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(strata(&["nerve", "--category", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(strata(&["stratify", "--mode", "sideways"]).status.code(), Some(2));
}

#[test]
fn seeded_harness_is_deterministic() {
    let a = strata(&["implications", "--samples", "100", "--seed", "5", "--format", "json"]);
    let b = strata(&["implications", "--samples", "100", "--seed", "5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(["implications", "--samples", "10", "--format", "json"])
        .env("STRATA_SEED", "42")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(v["result"]["seed"], 42);
}

#[test]
fn json_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (flag, value) in [("--fixture", "figure1"), ("--space-fixture", "tetrahedron_boundary"), ("--space-fixture", "two_gon")] {
        let first = dir.path().join("a.json");
        let o = strata(&["export", flag, value, "--out", first.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let again = strata(&["export", "--space", first.to_str().unwrap()]);
        assert_eq!(again.stdout, std::fs::read(&first).unwrap());
    }
    let once = strata(&["export", "--strat", &fixture("bad_antichain.json")]);
    assert_eq!(once.stdout, std::fs::read(fixture("bad_antichain.json")).unwrap());
    let cat = strata(&["export", "--category", &fixture("fig1.json"), "--category-json"]);
    assert_eq!(cat.stdout, std::fs::read(fixture("fig1.json")).unwrap());
}

#[test]
fn off_export_of_the_two_simplex() {
    let o = strata(&["export", "--fixture", "ordinal2", "--format", "off"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("OFF"));
    assert_eq!(lines.next(), Some("3 1 0"));
    assert_eq!(strata(&["export", "--fixture", "ordinal4", "--format", "off"]).status.code(), Some(2));
    assert_eq!(strata(&["export", "--fixture", "ordinal2", "--format", "off"]).stdout, o.stdout);
}

#[test]
fn chart_at_y_has_six_cells() {
    let (code, v) = json_report(&["exit", "chart", "--category", &fixture("fig1.json"), "--object", "y"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["open_image"].as_array().unwrap().len(), 6);
    assert_eq!(strata(&["exit", "cover"]).status.code(), Some(0));
    assert_eq!(strata(&["exit", "horns", "--max-dim", "3"]).status.code(), Some(0));
}

#[test]
fn unstable_strata_of_b2() {
    let (code, v) = json_report(&["stratify", "--category", &fixture("b2.json"), "--mode", "unstable"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["strata"], serde_json::json!([["0", 1], ["1", 2], ["2", 4]]));
    assert_eq!(strata(&["stratify", "--category", &fixture("b2.json"), "--mode", "stable"]).status.code(), Some(0));
    assert_eq!(strata(&["stratify", "--category", &fixture("b2.json"), "--mode", "simplicial"]).status.code(), Some(0));
}

#[test]
fn join_and_cone() {
    let (code, v) = json_report(&["join", "--left", &fixture("s0.json"), "--right", &fixture("s0.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["homology"], serde_json::json!(["Z", "Z"]));
    assert_eq!(strata(&["cone", "--strat", &fixture("good_edge.json")]).status.code(), Some(0));
}

#[test]
fn suspension_and_stellar() {
    let (code, v) = json_report(&["homology", "--category", &fixture("suspension.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["groups"], serde_json::json!(["Z", "0", "Z"]));
    assert_eq!(strata(&["stellar", "--object", "z"]).status.code(), Some(0));
    assert_eq!(strata(&["stellar", "--object", "x", "--side", "upper"]).status.code(), Some(0));
    assert_eq!(strata(&["stellar", "--object", "w"]).status.code(), Some(2));
    assert_eq!(strata(&["roundtrip", "--category", &fixture("hexagon_flow.json")]).status.code(), Some(0));
}
