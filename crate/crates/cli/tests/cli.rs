use std::process::{Command, Output};

fn qfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfold")).args(args).env_remove("QFOLD_CACHE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn datum_and_roots() {
    let o = qfold(&["datum", "--type", "G2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-3"));
    let o = qfold(&["roots", "--type", "B2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().filter(|l| !l.trim().is_empty()).count() >= 4);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qfold(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(qfold(&["datum"]).status.code(), Some(2));
    assert_eq!(qfold(&["fold-check"]).status.code(), Some(2));
    assert_eq!(qfold(&["--bogus-flag"]).status.code(), Some(2));
}

#[test]
fn pbw_expand_root_vector() {
    let o = qfold(&["pbw-expand", "--type", "A2", "--hword", "1,2,1", "f1 f2 - q f2 f1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).trim().is_empty());
}

#[test]
fn verify_serre_json_is_deterministic() {
    let a = qfold(&["--jobs", "1", "--out", "json", "--type", "B2", "verify", "serre"]);
    let b = qfold(&["--jobs", "2", "--out", "json", "--type", "B2", "verify", "serre"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(!v["checks"].as_array().unwrap().is_empty());
}

#[test]
fn congruence_csv() {
    let o = qfold(&["--pair", "A3:B2", "--height", "3", "--out", "csv", "congruence"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("weight,ulc,uld,a_uld,a'_d',congruent"));
    assert!(lines.all(|l| l.ends_with(",true")));
}

#[test]
fn cache_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = qfold(&["--cache-dir", d, "--type", "A2", "--height", "3", "canonical"]);
    assert_eq!(o.status.code(), Some(0));
    let list = qfold(&["--cache-dir", d, "cache", "list"]);
    assert!(!stdout(&list).trim().is_empty());
    assert_eq!(qfold(&["--cache-dir", d, "cache", "clear"]).status.code(), Some(0));
    assert_eq!(qfold(&["--cache-dir", d, "cache", "clear"]).status.code(), Some(0));
    assert!(stdout(&qfold(&["--cache-dir", d, "cache", "list"])).trim().is_empty());
}
