use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2char"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn success_paths_exit_zero() {
    let o = run(&["kappa", "2,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2 + 0i\n");
    let o = run(&["trace", "XYXY"]);
    assert_eq!(stdout(&o), "z^2 - 2\n");
    let o = run(&["--json", "roots3", "0", "0", "0", "0", "0", "0"]);
    assert_eq!(stdout(&o), "[[2, 0], [-2, 0]]\n");
}

#[test]
fn domain_errors_exit_one() {
    let o = run(&["conjugate", "reducible.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "REDUCIBLE\n");
    let o = run(&["invol", "-"]);
    assert_eq!(o.status.code(), Some(2), "empty stdin is malformed JSON");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["kappa", "1", "2"][..],
        &["kappa", "1", "2", "3x"],
        &["trace", "XQ"],
        &["trace", "XYZ", "--rank", "3"],
        &["eval", "XY", "--at", "1,2"],
        &["verify", "--suite", "nope"],
        &["--det-tol", "-1", "kappa", "1", "2", "3"],
        &["invol", "missing.json"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn malformed_json_reports_location() {
    let dir = std::env::temp_dir().join(format!("sl2char-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "[[[[1,0],[1,0]],\n[[0,0],[1,0]]], [[[1,0],[2,0").unwrap();
    let o = run(&["invol", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2 column"), "{err}");
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--trials", "20", "--seed", "3"]);
    let b = run(&["verify", "--trials", "20", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
