use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const RING3: &str = "3 3\n110\n011\n101\n";
const OPEN3: &str = "2 3\n110\n011\n";
// alist of the length-5 ring repetition code.
const RING5_ALIST: &str =
    "5 5\n2 2\n2 2 2 2 2\n2 2 2 2 2\n1 5\n1 2\n2 3\n3 4\n4 5\n1 2\n2 3\n3 4\n4 5\n1 5\n";

fn hgpb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgpb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(text.lines().next().expect("one line")).unwrap()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn classical_barrier_of_ring5() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "ringrep5.alist", RING5_ALIST);
    let out = hgpb(&["barrier", "classical", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["value"], 2);
    assert_eq!(v["exact"], true);
    assert_eq!(v["witness"]["max_energy"], 2);
}

#[test]
fn info_reports_ring5_parameters() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "ringrep5.alist", RING5_ALIST);
    let v = stdout_json(&hgpb(&["info", s(&p)]));
    for (key, want) in [
        ("n", 5),
        ("r", 5),
        ("k", 1),
        ("d", 5),
        ("w_c", 2),
        ("w_q", 2),
    ] {
        assert_eq!(v[key], want, "{key}");
    }
}

#[test]
fn verify_main_on_toric_passes() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "ringrep3.txt", RING3);
    let out = hgpb(&["verify", "main", s(&p), s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["measured"]["quantum_barrier"], 2);
}

#[test]
fn cap_exceeded_exits_3() {
    let dir = TempDir::new().unwrap();
    let ring4 = "4 4\n1100\n0110\n0011\n1001\n";
    let p = write(&dir, "big.txt", ring4);
    let out = hgpb(&["barrier", "quantum", s(&p), s(&p), "--max-dim", "20"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert_eq!(stderr_json(&out)["error"], "CapExceeded");
}

#[test]
fn parse_error_exits_2() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "bad.txt", "2 3\n110\n01x\n");
    let out = hgpb(&["info", s(&p)]);
    assert_eq!(out.status.code(), Some(2));
    let e = stderr_json(&out);
    assert_eq!(e["error"], "ParseError");
    assert!(e["detail"].as_str().unwrap().contains("line 3"));
}

#[test]
fn usage_and_io_errors_exit_2() {
    let out = hgpb(&["barrier", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "UsageError");

    let out = hgpb(&["info", "/nonexistent/code.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "IoError");

    let out = hgpb(&["verify", "main"]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(hgpb(&["--help"]).status.code(), Some(0));
}

#[test]
fn hgp_outputs_reparse_and_commute() {
    let dir = TempDir::new().unwrap();
    let p1 = write(&dir, "ring3.txt", RING3);
    let p2 = write(&dir, "open3.txt", OPEN3);
    let prefix = dir.path().join("prod");
    let out = hgpb(&["hgp", s(&p1), s(&p2), "--out", s(&prefix)]);
    assert_eq!(out.status.code(), Some(0));

    let hx = hgpb_core::codes::parse_dense_matrix(
        &fs::read_to_string(prefix.with_extension("hx")).unwrap(),
    )
    .unwrap();
    let hz = hgpb_core::codes::parse_dense_matrix(
        &fs::read_to_string(prefix.with_extension("hz")).unwrap(),
    )
    .unwrap();
    assert_eq!((hx.rows(), hx.cols()), (9, 15));
    assert_eq!((hz.rows(), hz.cols()), (6, 15));
    assert!(hx.mul(&hz.transpose()).unwrap().is_zero());

    let params: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("prod.params.json")).unwrap())
            .unwrap();
    assert_eq!(params["n"], 15);
    assert_eq!(params["k"], 1);
    assert_eq!(params["css"], true);
}

#[test]
fn logicals_records_for_surface() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "open3.txt", OPEN3);
    let out = hgpb(&["logicals", s(&p), s(&p), "--sector", "z"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let recs: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["type"], "Z");
    assert_eq!(recs[0]["weight"], 3);
    assert_eq!(recs[0]["support"].as_array().unwrap().len(), 3);
}

#[test]
fn canonical_barrier_picks_smaller_sector() {
    let dir = TempDir::new().unwrap();
    let p1 = write(&dir, "ring3.txt", RING3);
    let p2 = write(&dir, "open3.txt", OPEN3);
    let v = stdout_json(&hgpb(&["barrier", "canonical", s(&p1), s(&p2)]));
    assert_eq!(v["z"]["value"], 2);
    assert_eq!(v["x"]["value"], 1);
    assert_eq!(v["value"], 1);
}

#[test]
fn output_is_byte_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "open3.txt", OPEN3);
    for args in [
        vec!["verify", "thm1", s(&p), s(&p), "--seed", "7"],
        vec!["verify", "deform", s(&p), s(&p)],
        vec!["barrier", "quantum", s(&p), s(&p)],
    ] {
        let a = hgpb(&args);
        let b = hgpb(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn text_format_prints_key_lines() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "ring5.alist", RING5_ALIST);
    let out = hgpb(&["info", s(&p), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "k: 1"));
}
