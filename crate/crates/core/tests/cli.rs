use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gns-entropy"))
}

fn write(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_bell_preset() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bell.json",
        r#"{"ambient_dim": 4, "algebra": {"preset": "ex2_bell"}}"#,
    );
    let o = run(&["run", f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["entropy_nats"].as_f64().unwrap() - std::f64::consts::LN_2).abs() < 1e-12);
    assert_eq!(v["pure"], Value::Bool(false));
    assert_eq!(v["methods_agree"], Value::Bool(true));
}

#[test]
fn run_with_log_base_two_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.json",
        r#"{"algebra": {"preset": "ex3_choice2"}, "state": {"theta": 0.7853981633974483}}"#,
    );
    let out = dir.path().join("report.json");
    let o = run(&[
        "run",
        f.to_str().unwrap(),
        "--log-base",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!((v["entropy"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["log_base"], "two");
}

#[test]
fn run_explicit_generators_and_density() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"{
        "ambient_dim": 2,
        "algebra": {"generators": [[[[0,0],[1,0]],[[0,0],[0,0]]]]},
        "state": {"density": [[[0.25,0],[0,0]],[[0,0],[0.75,0]]]},
        "method": "gns",
        "seed": 3
    }"#;
    let f = write(dir.path(), "g.json", body);
    let o = run(&["run", f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["algebra_dim"], 4);
    assert_eq!(v["method"], "gns");
    let want = -(0.25f64 * 0.25f64.ln() + 0.75 * 0.75f64.ln());
    assert!((v["entropy_nats"].as_f64().unwrap() - want).abs() < 1e-12);
}

#[test]
fn sweep_csv_has_inclusive_endpoints_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.json",
        r#"{"algebra": {"preset": "ex3_choice2"}}"#,
    );
    let args = [
        "sweep",
        f.to_str().unwrap(),
        "--param",
        "theta",
        "--from",
        "0",
        "--to",
        "1.5707963267948966",
        "--steps",
        "5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,entropy_nats,entropy_bits,gns_dim,null_dim");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0.0000000000000000e0,0.0000000000000000e0"));
    assert!(lines[5].starts_with("1.5707963267948966e0,"));
    assert!(lines[5].ends_with(",1,4"));
}

#[test]
fn sweep_accepts_negative_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.json",
        r#"{"algebra": {"preset": "ex5_bosons"}, "state": {"theta": 1.0}}"#,
    );
    let o = run(&[
        "sweep",
        f.to_str().unwrap(),
        "--param",
        "phi",
        "--from",
        "-1",
        "--to",
        "1",
        "--steps",
        "3",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn grid_rows() {
    let o = run(&["grid", "--resolution", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 26);
    assert_eq!(text.lines().next(), Some("x,y,entropy"));
    // centre of the grid is the south pole
    let centre: Vec<f64> = text
        .lines()
        .nth(13)
        .unwrap()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!((centre[0], centre[1]), (0.0, 0.0));
    assert!(centre[2].abs() < 1e-12);
}

#[test]
fn examples_pass() {
    for n in 1..=5 {
        let o = run(&["example", &n.to_string()]);
        assert!(o.status.success(), "example {n}: {}", stdout(&o));
        let text = stdout(&o);
        assert!(text.lines().all(|l| l.starts_with("[PASS]")), "{text}");
    }
}

#[test]
fn validation_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = write(dir.path(), "m.json", "{oops");
    let both = write(
        dir.path(),
        "b.json",
        r#"{"ambient_dim": 2, "algebra": {"preset": "ex1_m2", "generators": []}}"#,
    );
    let bad_state = write(
        dir.path(),
        "d.json",
        r#"{"algebra": {"preset": "ex1_m2"}, "state": {"vector": [[1,0],[1,0]]}}"#,
    );
    let unknown = write(dir.path(), "u.json", r#"{"algebra": {"preset": "ex9"}}"#);
    let wrong_dim = write(
        dir.path(),
        "w.json",
        r#"{"algebra": {"preset": "ex1_m2"}, "state": {"vector": [[1,0]]}}"#,
    );
    for f in [&malformed, &both, &bad_state, &unknown, &wrong_dim] {
        let o = run(&["run", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{}", f.display());
    }
    let missing = dir.path().join("missing.json");
    assert_eq!(
        run(&["run", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let f = write(
        dir.path(),
        "s.json",
        r#"{"algebra": {"preset": "ex3_choice2"}}"#,
    );
    let o = run(&[
        "sweep",
        f.to_str().unwrap(),
        "--param",
        "phi",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["grid", "--resolution", "1"]).status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    // a grouping gap wider than the spectrum merges every central eigenvalue
    let f = write(
        dir.path(),
        "n.json",
        r#"{"algebra": {"preset": "ex5_bosons"}, "tolerance": {"grouping": 10.0}}"#,
    );
    let o = run(&["run", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}
