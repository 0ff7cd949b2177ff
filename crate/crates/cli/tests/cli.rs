use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_cogap")
}

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/scenarios").join(name)
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(bin()).args(args).env_remove("COGAP_BUDGET").output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn validate_accepts_every_bundled_scenario() {
    for name in [
        "retract_reflexive_graphs.json",
        "retract_cube1.json",
        "pushforward_reflexive_graphs.json",
        "left_fibration_counterexample.json",
    ] {
        let path = scenario_path(name);
        let output = run_cli(&["validate", path.to_str().unwrap()]);
        assert_eq!(output.status.code(), Some(0), "{name}: {output:?}");
    }
}

#[test]
fn missing_files_exit_two() {
    let output = run_cli(&["validate", "/nonexistent/scenario.json"]);
    assert_eq!(output.status.code(), Some(2));
    let output = run_cli(&["run", "/nonexistent/scenario.json"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn malformed_scenarios_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::File::create(&path).unwrap().write_all(b"{ not json").unwrap();
    let output = run_cli(&["run", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn the_counterexample_scenario_passes_in_json() {
    let path = scenario_path("left_fibration_counterexample.json");
    let output = run_cli(&["run", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["outcome"], "pass");
    assert_eq!(report["data"]["pullback_is_initial"], true);
    assert_eq!(report["data"]["final_lift_absent"], true);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let path = scenario_path("retract_reflexive_graphs.json");
    let args = ["run", path.to_str().unwrap(), "--format", "json", "--seed", "5"];
    let first = run_cli(&args);
    let second = run_cli(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn demos_run_and_unknown_names_exit_two() {
    for name in ["kan-prisms", "cylinders", "frobenius", "left-fibration-counterexample"] {
        let output = run_cli(&["demo", name]);
        assert_eq!(output.status.code(), Some(0), "{name}: {output:?}");
    }
    let output = run_cli(&["demo", "unheard-of"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn budget_flag_and_variable_control_the_search() {
    let path = scenario_path("retract_reflexive_graphs.json");
    let output = run_cli(&["run", path.to_str().unwrap(), "--budget", "10"]);
    assert_eq!(output.status.code(), Some(3));
    let output = Command::new(bin())
        .args(["run", path.to_str().unwrap()])
        .env("COGAP_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    let output = Command::new(bin())
        .args(["run", path.to_str().unwrap()])
        .env("COGAP_BUDGET", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn emitted_certificates_re_verify_and_tampering_is_caught() {
    let path = scenario_path("retract_reflexive_graphs.json");
    let output = run_cli(&["run", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let certificate = report["data"].clone();
    assert_eq!(certificate["kind"], "retract-certificate");

    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("certificate.json");
    std::fs::write(&good, serde_json::to_string_pretty(&certificate).unwrap()).unwrap();
    let verify = run_cli(&["re-verify", good.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0), "{verify:?}");
    assert!(stdout(&verify).contains("outcome: pass"));

    let mut tampered = certificate.clone();
    let row = tampered["maps"]["r_cod"]["components"]["components"]["[0]"]
        .as_array()
        .expect("component row")
        .clone();
    let mut flipped = row.clone();
    let v = flipped[0].as_u64().unwrap();
    flipped[0] = serde_json::json!((v + 1) % 2);
    tampered["maps"]["r_cod"]["components"]["components"]["[0]"] = serde_json::Value::Array(flipped);
    let bad = dir.path().join("tampered.json");
    std::fs::write(&bad, serde_json::to_string_pretty(&tampered).unwrap()).unwrap();
    let verify = run_cli(&["re-verify", bad.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(1), "{verify:?}");
    assert!(stdout(&verify).contains("outcome: fail"));

    let garbled = dir.path().join("garbled.json");
    std::fs::write(&garbled, "{").unwrap();
    let verify = run_cli(&["re-verify", garbled.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(2));
}
