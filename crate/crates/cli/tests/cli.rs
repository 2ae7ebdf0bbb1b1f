//! End-to-end runs of the binary: output shape and exit codes.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ortholab"));
    c.env_remove("ORTHO_MAX_ELEMENTS")
        .env_remove("ORTHO_NODE_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Writes a fixture document to a per-test temporary file.
fn fixture_file(name: &str, tag: &str) -> PathBuf {
    let o = run(&["fixture", name]);
    assert!(o.status.success());
    let path = std::env::temp_dir().join(format!(
        "ortholab-cli-{}-{tag}-{name}.json",
        std::process::id()
    ));
    std::fs::write(&path, &o.stdout).unwrap();
    path
}

fn write_doc(tag: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ortholab-cli-{}-{tag}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_and_classify_benzene() {
    let f = fixture_file("benzene6", "classify");
    let o = run(&["validate", path_str(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("i-OL"));
    let o = run(&["classify", path_str(&f), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "i-OL");
    assert_eq!(v["is_iol"], true);
    assert_eq!(v["is_ioml"], false);
}

#[test]
fn validate_rejects_non_be_table() {
    // a -> a = 0 breaks x -> x = 1
    let f = write_doc(
        "nonbe",
        r#"{"elements":["0","a","1"],"one":"1","zero":"0","arrow":[["1","1","1"],["0","0","1"],["0","a","1"]]}"#,
    );
    let o = run(&["validate", path_str(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("BE1"));
}

#[test]
fn malformed_input_exits_2() {
    let f = write_doc(
        "dup",
        r#"{"elements":["0","0"],"one":"0","zero":"0","arrow":[["0","0"],["0","0"]]}"#,
    );
    assert_eq!(run(&["classify", path_str(&f)]).status.code(), Some(2));
    assert_eq!(
        run(&["classify", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["fixture", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["enumerate", "--size", "4", "--class", "lattice"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn stdin_is_accepted() {
    let doc = stdout(&run(&["fixture", "boolean4"]));
    let mut child = bin()
        .args(["classify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(doc.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("class: i-Boolean"));
}

#[test]
fn derive_prints_full_table() {
    let f = fixture_file("benzene6", "derive");
    let o = run(&["derive", path_str(&f), "--op", "wedge_q"]);
    assert!(o.status.success());
    let out = stdout(&o);
    // header, rule, six rows
    assert_eq!(out.lines().count(), 8);
    assert!(out.lines().any(|l| l.trim() == "a | 0 a b 0 0 a"));
    let star = stdout(&run(&["derive", path_str(&f), "--op", "star"]));
    assert!(star.lines().any(|l| l == "a c"));
}

#[test]
fn ortho_reports_fail_with_exit_1() {
    let f = fixture_file("benzene6", "ortho");
    let o = run(&["ortho", path_str(&f), "--dacey", "--blocks", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"][0]["status"], "fail");
    assert_eq!(v["blocks"].as_array().unwrap().len(), 4);
    let o = run(&["ortho", path_str(&f), "--cl"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("closed sets (6)"));
}

#[test]
fn sasaki_space_passes_on_sasaki6() {
    let f = fixture_file("sasaki6", "space");
    let o = run(&["ortho", path_str(&f), "--sasaki-space", "--dacey"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn sasaki_full_set() {
    let bz = fixture_file("benzene6", "full");
    assert_eq!(
        run(&["sasaki", path_str(&bz), "--full-set"]).status.code(),
        Some(1)
    );
    let g = fixture_file("ioml6-full", "full");
    let o = run(&["sasaki", path_str(&g), "--full-set", "--center", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["center"], serde_json::json!(["0", "1"]));
}

#[test]
fn theorems_exit_status_and_filter() {
    let f = fixture_file("benzene6", "theorems");
    let o = run(&["theorems", path_str(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 fail"));
    let o = run(&[
        "theorems",
        path_str(&f),
        "--filter",
        "T4-C-SYMMETRIC",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(
        run(&["theorems", path_str(&f), "--filter", "NO-SUCH"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumerate_streams_and_counts() {
    let o = run(&["enumerate", "--size", "6", "--class", "iol"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    for line in out.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
    assert_eq!(
        stdout(&run(&[
            "enumerate",
            "--size",
            "3",
            "--class",
            "iol",
            "--count-only"
        ]))
        .trim(),
        "0"
    );
    assert_eq!(
        stdout(&run(&[
            "enumerate",
            "--size",
            "6",
            "--class",
            "i-OL",
            "--limit",
            "1"
        ]))
        .lines()
        .count(),
        1
    );
}

#[test]
fn resource_caps_exit_3() {
    assert_eq!(
        run(&["enumerate", "--size", "12", "--class", "iol"])
            .status
            .code(),
        Some(3)
    );
    let f = fixture_file("ioml10", "cap");
    let o = bin()
        .args(["classify", path_str(&f)])
        .env("ORTHO_MAX_ELEMENTS", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn iso_prints_permutation_or_non_isomorphic() {
    let a = fixture_file("sasaki6", "iso");
    let b = fixture_file("ioml6-full", "iso");
    let c = fixture_file("benzene6", "iso");
    let o = run(&["iso", path_str(&a), path_str(&b)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = run(&["iso", path_str(&a), path_str(&c)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "non-isomorphic");
}

#[test]
fn search_finds_non_orthomodular_example() {
    let o = run(&[
        "search",
        "--require",
        "impl,DN",
        "--forbid",
        "IOM",
        "--max-size",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
    let o = run(&[
        "search",
        "--require",
        "impl,DN",
        "--forbid",
        "IOM",
        "--max-size",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        run(&["search", "--require", "nope", "--max-size", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn fixture_roundtrips_through_validate() {
    for name in ["benzene6", "ioml10", "ioml6-full", "sasaki6", "boolean4"] {
        let f = fixture_file(name, "roundtrip");
        assert_eq!(
            run(&["validate", path_str(&f)]).status.code(),
            Some(0),
            "{name}"
        );
    }
}
