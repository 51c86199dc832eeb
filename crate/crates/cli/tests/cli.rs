use std::process::{Command, Output};

fn cenalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cenalg"))
        .args(args)
        .env_remove("CENALG_MAX_RULES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn preset_file(name: &str) -> String {
    format!("{}/../core/presets/{}.pres", env!("CARGO_MANIFEST_DIR"), name)
}

#[test]
fn exit_codes() {
    assert_eq!(cenalg(&["prop-check", "--preset", "as"]).status.code(), Some(0));
    assert_eq!(cenalg(&["prop-check", "--preset", "uea-solvable"]).status.code(), Some(1));
    assert_eq!(cenalg(&["prop-check", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(cenalg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cenalg(&["parse", "/nonexistent.pres"]).status.code(), Some(2));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = std::env::temp_dir().join(format!("cenalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.pres");
    std::fs::write(&path, "presentation t\nfield Q\ngenerators X\nrelation R: X*W\n").unwrap();
    let o = cenalg(&["parse", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{}", err);
}

#[test]
fn structured_report() {
    let o = cenalg(&["central-relations", "--preset", "uea-solvable", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "central-relations");
    assert_eq!(v["data"]["relations"], serde_json::json!(["z_yz"]));
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn file_and_preset_agree() {
    let a = cenalg(&["obstacles", &preset_file("as"), "--format", "structured"]);
    let b = cenalg(&["obstacles", "--preset", "as", "--format", "structured"]);
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v["timing_ms"] = serde_json::json!(0);
        v
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn out_file_and_log() {
    let dir = std::env::temp_dir().join(format!("cenalg-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = cenalg(&[
        "complete",
        "--preset",
        "uea-sl2",
        "--log",
        "--format",
        "structured",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["data"]["status"], "complete");
    assert!(v["data"]["log"].is_array());
}

#[test]
fn specialize_and_params() {
    let o = cenalg(&["specialize", "--preset", "as", "--omega", "z_X=1", "--omega", "z_Y=0", "--omega", "z_Z=-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z*Y - X - 1"));
    let o = cenalg(&["parse", "--preset", "bi", "--param", "omega1=5"]);
    assert!(stdout(&o).contains("- X - 5"), "{}", stdout(&o));
    let o = cenalg(&["specialize", "--preset", "as", "--omega", "bad"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn truncated_completion_fails() {
    let o = Command::new(env!("CARGO_BIN_EXE_cenalg"))
        .args(["complete", "--preset", "uea-sl2"])
        .env("CENALG_MAX_RULES", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("truncated"));
}

#[test]
fn run_reproduction_passes() {
    let o = cenalg(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("[pass]").count(), 6);
}
