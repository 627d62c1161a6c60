use std::io::Write;
use std::process::{Command, Output};

fn phb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phb"))
        .args(args)
        .env_remove("PHB_SEED")
        .output()
        .unwrap()
}

fn points_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SPHERE: &str = r#"[{"id": "sphere", "R": 1, "R0": 0, "R1": [0, 0], "lapR": 0}]"#;

#[test]
fn verify_by_label_and_id() {
    let o = phb(&["verify", "2.7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("l-alpha-square"));
    assert_eq!(phb(&["verify", "l-alpha-square"]).status.code(), Some(0));
}

#[test]
fn unknown_identity_exits_2() {
    let o = phb(&["verify", "no-such-identity"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn mutation_mode_exits_0_when_all_killed() {
    let o = phb(&["verify", "dj-square", "--mutate"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn empty_points_file_is_an_error() {
    let f = points_file("[]");
    let o = phb(&["check", f.path().to_str().unwrap(), "--cond", "thm-a"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_points_file_is_an_error() {
    let f = points_file(r#"[{"R": 1}]"#);
    let o = phb(&["check", f.path().to_str().unwrap(), "--cond", "thm-a"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn torsion_free_sphere_value() {
    let f = points_file(SPHERE);
    let o = phb(&[
        "--format",
        "json",
        "check",
        f.path().to_str().unwrap(),
        "--cond",
        "corollaryC",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let value = v["points"][0]["values"]["corollaryC"].as_f64().unwrap();
    assert!((value - 20.0).abs() < 1e-12, "{value}");
}

#[test]
fn failing_condition_exits_1() {
    let f = points_file(SPHERE);
    let o = phb(&["check", f.path().to_str().unwrap(), "--cond", "thm-a"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn scaletest_passes_on_the_sphere() {
    let f = points_file(SPHERE);
    let o = phb(&["scaletest", f.path().to_str().unwrap(), "--k", "1/7,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn json_output_is_deterministic() {
    let a = phb(&["--format", "json", "equiv", "--samples", "40"]);
    let b = phb(&["--format", "json", "equiv", "--samples", "40"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_phb"))
        .args(["--format", "json", "equiv", "--samples", "10"])
        .env("PHB_SEED", "7")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn trace_and_operator_output() {
    let o = phb(&["--format", "json", "trace", "dj-square"]);
    assert_eq!(o.status.code(), Some(0));
    serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap();
    let o = phb(&["op", "DJ", "--adjoint"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("E11"));
}
