use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use univsos::certificate::{parse, verify_exact};
use univsos::text::parse_poly;

fn univsos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_univsos"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

const F_EX1: &str = "poly v1 deg 6\n2 2/15 -11/10 -1/9 1 0 1/16\n";

#[test]
fn sos1_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "f.poly", F_EX1);
    let cert = dir.path().join("f.cert");
    let out = univsos(&["sos1", path(&input), "-o", path(&cert)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(verify_exact(&parse(&fs::read_to_string(&cert).unwrap()).unwrap()).ok);
    for mode in ["exact", "eval"] {
        let out = univsos(&["verify", path(&cert), "--mode", mode]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
    }
}

#[test]
fn sos2_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "f.poly", F_EX1);
    let out = univsos(&["sos2", path(&input), "--delta", "32"]);
    assert_eq!(out.status.code(), Some(0));
    let cert = parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(verify_exact(&cert).ok);
    assert_eq!(cert.target, parse_poly(F_EX1).unwrap());
}

#[test]
fn negative_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "neg.poly", "poly v1 deg 2\n-1 0 1\n");
    for cmd in ["sos1", "sos2"] {
        let out = univsos(&[cmd, path(&input)]);
        assert_eq!(out.status.code(), Some(1), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("not nonnegative"));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn transform_then_certify() {
    let dir = tempfile::tempdir().unwrap();
    // X (1 - X) is nonnegative on [0, 1] only
    let input = write(dir.path(), "p.poly", "poly v1 deg 2\n0 1 -1\n");
    let line = dir.path().join("q.poly");
    let out = univsos(&["transform", path(&input), "--lo", "0", "--hi", "1", "-o", path(&line)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&line).unwrap(), "poly v1 deg 2\n0 0 1\n");
    let out = univsos(&["sos2", path(&line)]);
    assert_eq!(out.status.code(), Some(0));

    let shifted = dir.path().join("r.poly");
    let out = univsos(&["transform", path(&input), "--lo", "-1/2", "--hi", "1", "-o", path(&shifted)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(univsos(&["sos1", path(&shifted)]).status.code(), Some(1));

    let out = univsos(&["transform", path(&input), "--lo", "1", "--hi", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.poly", "poly v1 deg 2\n1 x 1\n");
    let out = univsos(&["sos1", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(univsos(&["sos1", "/nonexistent/input.poly"]).status.code(), Some(2));
    assert_eq!(univsos(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(univsos(&["--help"]).status.code(), Some(0));
}

#[test]
fn tampered_certificate_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "f.poly", F_EX1);
    let cert = dir.path().join("f.cert");
    assert_eq!(univsos(&["sos1", path(&input), "-o", path(&cert)]).status.code(), Some(0));
    let body = fs::read_to_string(&cert).unwrap();
    let tampered = body.replacen("2 2/15", "3 2/15", 1);
    assert_ne!(body, tampered);
    let bad = write(dir.path(), "bad.cert", &tampered);
    for mode in ["exact", "eval"] {
        assert_eq!(univsos(&["verify", path(&bad), "--mode", mode]).status.code(), Some(4));
    }
}

#[test]
fn bench_csv() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("polys");
    let out = univsos(&[
        "bench", "--family", "wilkinson", "--min", "4", "--max", "8", "--algo", "1", "--csv", "--dump-dir",
        path(&dump),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], univsos::bench::CSV_HEADER);
    assert!(lines[1..].iter().all(|l| l.ends_with(",ok")));
    let w6 = parse_poly(&fs::read_to_string(dump.join("wilkinson-6.poly")).unwrap()).unwrap();
    assert_eq!(w6.degree(), Some(6));
    assert_eq!(
        univsos(&["bench", "--family", "nope", "--min", "2", "--max", "2", "--algo", "1"]).status.code(),
        Some(2)
    );
}
