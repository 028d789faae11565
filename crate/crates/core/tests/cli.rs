use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_hochmod")).args(args).arg("--no-timing").output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json)
}

#[test]
fn verify_double_succeeds() {
    let (code, json) = run(&["verify", "--preset", "D-kZ2", "--field", "Q"]);
    assert_eq!(code, 0, "{json}");
    assert_eq!(json["status"], "ok");
    assert_eq!(json["schema_version"], 1);
    assert!(json.get("timing").is_none());
}

#[test]
fn sweedler_needs_odd_characteristic() {
    let (code, json) = run(&["verify", "--preset", "sweedler", "--field", "F2"]);
    assert_eq!(code, 2);
    assert_eq!(json["status"], "error");
}

#[test]
fn broken_file_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/D-kZ2.json")).unwrap();
    let mut file: Value = serde_json::from_str(&text).unwrap();
    file["mult"].as_array_mut().unwrap().push(serde_json::json!([1, 1, 3, "1"]));
    let path = dir.path().join("broken.json");
    std::fs::write(&path, file.to_string()).unwrap();
    let (code, json) = run(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{json}");
    assert!(json["checks"].as_array().unwrap().iter().any(|c| c["ok"] == false));
}

#[test]
fn memory_cap_refuses_large_complexes() {
    let (code, json) = run(&["hh", "--preset", "D-sweedler", "--field", "F5", "--degree", "3"]);
    assert_eq!(code, 2, "{json}");
    assert!(json["error"].as_str().unwrap().contains("cap"), "{json}");
}

#[test]
fn modular_report_and_action() {
    let (code, json) = run(&["modular", "--preset", "D-kZ2", "--field", "Q"]);
    assert_eq!(code, 0, "{json}");
    let (code, json) = run(&["modular", "--preset", "D-kZ2", "--field", "Q", "--degree", "0", "--act", "0,-1,1,0", "--class", "1,0,0,0"]);
    assert_eq!(code, 0, "{json}");
    assert!(json["action"].is_object(), "{json}");
}

#[test]
fn bad_arguments_exit_two() {
    let (code, _) = run(&["hh", "--preset", "nope"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["modular", "--preset", "D-kZ2", "--act", "2,0,0,1", "--class", "1,0,0,0"]);
    assert_eq!(code, 2);
}
