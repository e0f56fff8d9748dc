use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn evencox(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_evencox")).args(args).output().expect("spawn evencox");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("evencox-cli-{}-{name}.json", std::process::id()))
}

fn without_timing(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).expect("json report");
    v.as_object_mut().expect("object").remove("timing_ms");
    v
}

#[test]
fn validate_reports_evenness() {
    let (code, out) = evencox(&["validate", "sysb"]);
    assert_eq!(code, 0);
    let v = without_timing(&out);
    assert_eq!(v["command"], "validate");
    assert_eq!(v["verdicts"][0]["pass"], true);
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn reports_are_deterministic() {
    let args = ["ruin", "--gen", "t", "--radius", "4", "sysb"];
    let (a, first) = evencox(&args);
    let (b, second) = evencox(&args);
    assert_eq!((a, b), (0, 0));
    assert_eq!(
        serde_json::to_string(&without_timing(&first)).unwrap(),
        serde_json::to_string(&without_timing(&second)).unwrap()
    );
}

#[test]
fn json_flag_writes_a_file() {
    let path = scratch("colors");
    let (code, _) = evencox(&["--json", path.to_str().unwrap(), "colors", "--gen", "t", "--radius", "4", "sysb"]);
    let text = std::fs::read_to_string(&path).expect("report written");
    let _ = std::fs::remove_file(&path);
    assert_eq!(code, 0);
    assert_eq!(without_timing(&text)["command"], "colors");
}

#[test]
fn failed_checks_exit_one() {
    assert_eq!(evencox(&["sphere-check", "--dim", "3", "sysb"]).0, 1);
    assert_eq!(evencox(&["flag", "hollow"]).0, 1);
}

#[test]
fn passing_checks_exit_zero() {
    assert_eq!(evencox(&["sphere-check", "--dim", "1", "sysb"]).0, 0);
    assert_eq!(evencox(&["verify", "--lemma", "3.5", "--gen", "t1", "--radius", "4", "sysd"]).0, 0);
    assert_eq!(evencox(&["euler", "--orbihedral", "sysd"]).0, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(evencox(&["validate", "--no-such-flag", "sysb"]).0, 2);
    assert_eq!(evencox(&["validate", "/no/such/file.cox"]).0, 2);
    assert_eq!(evencox(&["verify", "--lemma", "9.9", "sysb"]).0, 2);
    assert_eq!(evencox(&["colors", "--gen", "nope", "sysb"]).0, 2);
}

#[test]
fn odd_systems_refuse_ruins() {
    let path = std::env::temp_dir().join(format!("evencox-cli-{}-a2.cox", std::process::id()));
    std::fs::write(&path, "generators: s t\nm: s t 3\n").unwrap();
    let file = path.to_str().unwrap();
    let (validate, out) = evencox(&["validate", file]);
    let (ruin, _) = evencox(&["ruin", "--gen", "s", file]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(validate, 0);
    assert_eq!(without_timing(&out)["verdicts"][0]["even"], false);
    assert_eq!(ruin, 2);
}

#[test]
fn library_entry_point_matches_the_binary() {
    let path = scratch("lib");
    let code = evencox::cli::run(["evencox", "--json", path.to_str().unwrap(), "euler", "--orbihedral", "sysb"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    assert_eq!(code, 0);
    let (_, out) = evencox(&["euler", "--orbihedral", "sysb"]);
    assert_eq!(without_timing(&text), without_timing(&out));
}
