//! End-to-end invocations of the binary: output shape, determinism,
//! and exit codes.

use std::process::Command;

fn lawbench(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lawbench"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn growth_csv_shape_and_determinism() {
    let a = lawbench(&["growth", "--group", "free2", "--n", "5"]);
    assert!(a.status.success());
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert!(text.starts_with("n,value,status\n"));
    assert_eq!(text.lines().count(), 6);
    // reruns are byte-identical
    let b = lawbench(&["growth", "--group", "free2", "--n", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn growth_json_parses() {
    let out = lawbench(&["growth", "--group", "sym3", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["entries"].is_array());
}

#[test]
fn words_file_restricts_the_scan() {
    let dir = std::env::temp_dir().join("lawbench-test-words");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("powers.txt");
    std::fs::write(&path, "aa\naaaa\n").unwrap();
    let out = lawbench(&[
        "growth",
        "--group",
        "grig",
        "--n",
        "4",
        "--budget",
        "4",
        "--words-file",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // two entries, keyed by word length
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("2,2,exact"));
}

#[test]
fn unknown_group_is_a_config_error() {
    let out = lawbench(&["growth", "--group", "nosuch", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_certificate_exits_one() {
    let dir = std::env::temp_dir().join("lawbench-test-gs");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reject.json");
    std::fs::write(
        &path,
        r#"{"k":2,"p":2,"q":"2","m0":2,"exact_blocks":3,"finite_degrees":[]}"#,
    )
    .unwrap();
    let out = lawbench(&["gs", "verify", "--tau", "3/4", "--schedule", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn wreath_law_reports_no_short_law() {
    let out = lawbench(&["wreath-law", "--n", "2", "--max-len", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("no law of W_2 up to length 3"));
}

#[test]
fn combine_prints_a_nontrivial_word() {
    let out = lawbench(&["combine", "a", "b"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.trim().is_empty());
}
