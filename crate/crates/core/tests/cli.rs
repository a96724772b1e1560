use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zp2code(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zp2code"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn weight_and_gray() {
    let out = zp2code(&["weight", "-p", "3", "-x", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "lee=3 hamming=1\n");
    assert_eq!(
        stdout(&zp2code(&["gray", "-p", "2", "--word", "1,2"])),
        "1,0,1,1\n"
    );
    let json: Value = serde_json::from_slice(
        &zp2code(&["--format", "json", "weight", "-p", "2", "-x", "2"]).stdout,
    )
    .unwrap();
    assert_eq!(json["lee"], 2);
}

#[test]
fn radius_of_zero_divisor_repetition() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c.txt", "2\n1 2\n2 2\n");
    let out = zp2code(&["radius", &file, "--metric", "lee", "--method", "cosets"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("radius=2 "), "{}", stdout(&out));
    let gray = zp2code(&[
        "--format", "json", "radius", &file, "--metric", "lee", "--method", "gray",
    ]);
    let v: Value = serde_json::from_slice(&gray.stdout).unwrap();
    assert_eq!(v["radius"], 2);
    assert_eq!(v["metric"], "hamming");
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c.txt", "3\n2 3\n1 1 4\n0 3 3\n");
    for metric in ["lee", "hamming"] {
        let outs: Vec<Vec<u8>> = ["1", "2", "3", "7"]
            .iter()
            .map(|t| zp2code(&["--threads", t, "radius", &file, "--metric", metric]).stdout)
            .collect();
        assert!(outs.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn analyze_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c.txt", "# a comment\n2\n1 3\n1 2 3\n");
    let out = zp2code(&["--format", "json", "analyze", &file]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert_eq!(v["size"], 4);
    assert_eq!(v["d_hamming"], 2);
    assert_eq!(v["d_lee"], 4);
    assert_eq!(v["code_type"], "alpha");
    let table = stdout(&zp2code(&["analyze", &file]));
    assert!(
        table.starts_with("p=2 n=3 M=4 d_H=2 d_L=4\ntype=alpha\n"),
        "{table}"
    );
}

#[test]
fn construct_writes_parseable_generator() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("br.txt");
    let out = zp2code(&[
        "construct",
        "--family",
        "br_drop_last",
        "--params",
        "p=2,n=1",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = zp2code(&["radius", out_path.to_str().unwrap()]);
    assert!(stdout(&r).starts_with("radius=1 "));

    let spec = r#"{"family":"cartesian","left":{"family":"unit_rep","p":2,"n":1},"right":{"family":"zero_div_rep","p":2,"n":1}}"#;
    let text = stdout(&zp2code(&["construct", "--spec", spec]));
    assert_eq!(text.lines().nth(1), Some("2 2"));
}

#[test]
fn bounds_lists_three_reports() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c.txt", "3\n1 1\n3\n");
    let out = zp2code(&["bounds", &file]);
    assert_eq!(
        stdout(&out),
        "sphere_covering_paper=unsatisfiable\nsphere_covering_exact_ball=1\nexternal_distance=1\n"
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(zp2code(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        zp2code(&["weight", "-p", "4", "-x", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        zp2code(&["--threads", "0", "weight", "-p", "2", "-x", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(zp2code(&["--help"]).status.code(), Some(0));
    assert_eq!(
        zp2code(&["radius", "/nonexistent/file"]).status.code(),
        Some(4)
    );

    let bad_width = write(dir.path(), "w.txt", "2\n1 3\n1 2\n");
    let out = zp2code(&["analyze", &bad_width]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let bad_residue = write(dir.path(), "r.txt", "2\n1 2\n1 4\n");
    assert_eq!(zp2code(&["analyze", &bad_residue]).status.code(), Some(5));

    let big = write(dir.path(), "big.txt", "2\n1 8\n1 1 1 1 1 1 1 1\n");
    let out = Command::new(env!("CARGO_BIN_EXE_zp2code"))
        .env("ZP2CODE_MAX_WORDS", "1000")
        .args(["radius", &big])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn audit_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.json", r#"{"audits": []}"#);
    let out = zp2code(&["audit", "--config", &empty]);
    assert_eq!(out.status.code(), Some(0));

    let skip = write(
        dir.path(),
        "skip.json",
        r#"{"audits": [{"theorem": "thm_k", "params": [{"p": 5, "n": 1}]}]}"#,
    );
    let out = zp2code(&["audit", "--config", &skip]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("skipped_resource"));

    let contra = write(
        dir.path(),
        "c.json",
        r#"{"audits": [{"theorem": "thm_l", "params": [{"p": 2, "n": 1}]}]}"#,
    );
    assert_eq!(
        zp2code(&["audit", "--config", &contra]).status.code(),
        Some(3)
    );

    let malformed = write(
        dir.path(),
        "m.json",
        "{\"audits\": [\n  {\"theorem\": \"thm_j\", \"params\": [{\"p\": 2}]}]}",
    );
    let out = zp2code(&["audit", "--config", &malformed]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("audits[0].params[0]"));

    assert_eq!(zp2code(&["audit"]).status.code(), Some(1));
}

#[test]
fn default_audit_report_bodies_are_reproducible() {
    let run = || {
        let out = zp2code(&["--format", "json", "audit", "--default"]);
        assert_eq!(out.status.code(), Some(3));
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    let first = run();
    assert_eq!(first, run());
    let reports = first["reports"].as_array().unwrap();
    assert!(reports.len() >= 20);
    assert!(first["suite"]["totals"]["contradicted"].as_u64().unwrap() > 0);
}
