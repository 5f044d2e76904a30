//! End-to-end tests of the `qgeom` binary: determinism, the set-file
//! round trip, and the exit-code contract.

use std::process::{Command, Output};

fn qgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgeom"))
        .args(args)
        .env_remove("QGEOM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_is_deterministic_without_timestamp() {
    let args = [
        "verify", "--suite", "moments", "--q", "4", "--n", "2", "--k", "1", "--seed", "11",
        "--no-timestamp",
    ];
    let a = qgeom(&args);
    let b = qgeom(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "repeated runs must be byte-identical");
    assert!(!stdout(&a).contains("timestamp"));
}

#[test]
fn scan_csv_is_deterministic() {
    let args = [
        "scan-exceptional", "--q", "3", "--n", "3", "--k", "1", "--seed", "7", "--u-list",
        "1,2,4", "--p-list", "2,3", "--format", "csv", "--no-timestamp",
    ];
    let a = qgeom(&args);
    let b = qgeom(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("u,p,c,theta,bound,ratio,holds"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).count(), 7);
}

#[test]
fn set_file_round_trips_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.set");

    // salem emits the generated set verbatim in its JSON report
    let out = qgeom(&[
        "salem", "--q", "5", "--n", "2", "--gen", "random:9", "--seed", "42", "--no-timestamp",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let set_text = v["set_file"].as_str().unwrap();
    assert!(set_text.starts_with("q=5^1 n=2 count=9"));
    std::fs::write(&path, set_text).unwrap();

    // feeding the file back must reproduce the identical report
    let again = qgeom(&[
        "salem", "--q", "5", "--n", "2", "--set", path.to_str().unwrap(), "--no-timestamp",
    ]);
    assert!(again.status.success());
    let w: serde_json::Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(v["profile"], w["profile"]);
    assert_eq!(v["checks"], w["checks"]);
    assert_eq!(w["set_file"].as_str().unwrap(), set_text);
}

#[test]
fn json_reports_carry_the_schema_and_config() {
    let out = qgeom(&["verify", "--suite", "gbc", "--q", "2", "--n", "5", "--no-timestamp"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["q"], 2);
    assert_eq!(v["config"]["rng"], "chacha12");
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["holds"] != false));
}

#[test]
fn exit_codes_follow_the_contract() {
    // 0: checks executed and all hold
    assert_eq!(qgeom(&["verify", "--suite", "gf", "--q", "7", "--n", "2"]).status.code(), Some(0));

    // 2: configuration errors of various kinds
    let bad_q = qgeom(&["verify", "--suite", "gf", "--q", "50", "--n", "2"]);
    assert_eq!(bad_q.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_q.stderr).contains("prime power"));

    let bad_suite = qgeom(&["verify", "--suite", "bogus", "--q", "3", "--n", "2"]);
    assert_eq!(bad_suite.status.code(), Some(2));

    let too_big = qgeom(&["verify", "--suite", "gf", "--q", "101", "--n", "4"]);
    assert_eq!(too_big.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let mangled = dir.path().join("bad.set");
    std::fs::write(&mangled, "q=3^1 n=2 count=2\n0 1\n0 9\n").unwrap();
    let bad_set = qgeom(&[
        "salem", "--q", "3", "--n", "2", "--set", mangled.to_str().unwrap(),
    ]);
    assert_eq!(bad_set.status.code(), Some(2));
}

#[test]
fn sharpness_examples_run_clean() {
    for ex in ["few", "kakeya", "many", "refute"] {
        let out = qgeom(&[
            "sharpness", "--example", ex, "--q", "3", "--n", "2", "--k", "1", "--seed", "5",
            "--no-timestamp",
        ]);
        assert!(out.status.success(), "{ex} failed: {}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["passed"], true, "{ex}");
    }
}

#[test]
fn thread_override_is_recorded_and_harmless() {
    let out = Command::new(env!("CARGO_BIN_EXE_qgeom"))
        .args(["verify", "--suite", "moments", "--q", "3", "--n", "3", "--no-timestamp"])
        .env("QGEOM_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["config"]["threads"], 2);
}
