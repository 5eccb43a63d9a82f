use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turing-flow")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn tm_run_exit_codes() {
    let o = run(&["tm-run", "--machine", &data("flip.json"), "--tape", &data("empty_tape.json"), "--horizon", "10"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["outcome"], "halted");
    assert_eq!(v["steps"], 1);
    assert_eq!(v["output"]["ones"], serde_json::json!([0]));

    let o = run(&["tm-run", "--machine", &data("zseek.json"), "--tape", &data("ones_01.json"), "--horizon", "2"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["outcome"], "still-running");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"states\": [").unwrap();
    assert_eq!(code(&run(&["tm-run", "--machine", bad.to_str().unwrap()])), 1);
}

#[test]
fn equiv_examples() {
    for m in ["flip.json", "zseek.json"] {
        let o = run(&["equiv", "--machine", &data(m), "--horizon", "10", "--m", "2"]);
        assert_eq!(code(&o), 0);
        let v = json(&o);
        assert_eq!(v["machine_halts"], true);
        assert_eq!(v["hit_index"], 1);
    }
    let o = run(&["equiv", "--machine", &data("stuck.json"), "--horizon", "100", "--m", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["machine_halts"], false);
    assert_eq!(v["orbit_hits"], false);
}

#[test]
fn shift_orbit_csv() {
    let o = run(&["shift-orbit", "--machine", &data("flip.json"), "--horizon", "5"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["iterate,x_num,x_den,y_num,y_den", "0,0,1,0,1", "1,2,3,0,1"]);
}

#[test]
fn tm_encode_reports_program_tape() {
    let o = run(&["tm-encode", "--machine", &data("zseek.json"), "--tape", &data("ones_01.json")]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let len = v["encoded_len"].as_i64().unwrap();
    let program: Vec<i64> = v["program_tape"]["ones"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect();
    assert!(program.ends_with(&[len, len + 1]));
    assert_eq!(v["initial_point"]["x"], "2/9");
}

#[test]
fn build_examples_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["build", "--descriptor", &data("build.json"), "--samples", "500", "--out", out]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let first = std::fs::read(dir.path().join("report.json")).unwrap();
    let report: Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(report["pass"], true);
    assert!(report["return_map"]["max_point_error"].as_f64().unwrap() < 1e-6);
    let dump = std::fs::read_to_string(dir.path().join("field_dump.csv")).unwrap();
    assert_eq!(dump.lines().count(), 32 * 32 + 1);

    let again = run(&["build", "--descriptor", &data("build.json"), "--samples", "500", "--out", out]);
    assert_eq!(code(&again), 0);
    assert_eq!(std::fs::read(dir.path().join("report.json")).unwrap(), first);

    let zero = run(&["build", "--descriptor", &data("build_zero.json"), "--samples", "300"]);
    assert_eq!(code(&zero), 0);
    assert!(json(&zero)["return_map"]["max_point_error"].as_f64().unwrap() < 1e-12);

    let bad = run(&["build", "--descriptor", &data("build_bad_radii.json")]);
    assert_eq!(code(&bad), 1);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("bad radii"));
}

#[test]
fn verify_named_checks() {
    let o = run(&["verify", "--descriptor", &data("build.json"), "ns", "--nu", "0", "--samples", "200"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["check"], "ns");
    assert_eq!(v["details"][0]["nu"], 0.0);

    let o = run(&["verify", "--descriptor", &data("build.json"), "return-map", "--tol", "1e-8", "--samples", "50"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["checks"][0]["pass"], true);

    for check in ["harmonicity", "symmetry", "cosymplectic", "gauge"] {
        let o = run(&["verify", "--descriptor", &data("build.json"), check, "--samples", "200"]);
        assert_eq!(code(&o), 0, "{check}");
    }
    assert_eq!(code(&run(&["verify", "--descriptor", &data("build.json"), "nonsense"])), 1);
}

#[test]
fn flow_commands() {
    let o = run(&["disk-map", "--isotopy", &data("rotation.json"), "--samples", "50"]);
    assert_eq!(code(&o), 0);
    let o = run(&["suspend", "--isotopy", &data("shear.json"), "--samples", "1000"]);
    assert_eq!(code(&o), 0);
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["return-map", "--isotopy", &data("rotation.json"), "--samples", "10", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let traj = std::fs::read_to_string(dir.path().join("trajectories.csv")).unwrap();
    assert!(traj.starts_with("seed,time,x,y,t\n"));
    let cmp: Value = serde_json::from_slice(&std::fs::read(dir.path().join("return_map.json")).unwrap()).unwrap();
    assert!(cmp["comparison"]["max_point_error"].as_f64().unwrap() < 1e-6);
}

#[test]
fn gauge_command_flags_folded_maps() {
    assert_eq!(code(&run(&["gauge", "--samples", "2000"])), 0);
    // eps above c / (2 pi) makes det DG change sign.
    let o = run(&["gauge", "--eps", "0.3", "--samples", "2000"]);
    assert_eq!(code(&o), 2);
    assert!(json(&o)["report"]["min_det"].as_f64().unwrap() < 0.0);
}
