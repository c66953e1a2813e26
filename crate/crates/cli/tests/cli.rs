use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use handlebody_cli::dispatch;
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("handlebody").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Diagram files for <a | a^3> and <a, b | a^3, b>, all framings 0.
fn z3_pair(dir: &TempDir) -> (PathBuf, PathBuf) {
    (
        file(dir, "z3.diag", "one_handles: 1\nhandle: aaa 0\n"),
        file(dir, "z3b.diag", "one_handles: 2\nhandle: aaa 0\nhandle: b 0\n"),
    )
}

#[test]
fn invariants_first_line() {
    let dir = TempDir::new().unwrap();
    let pres = file(&dir, "z3.pres", "gens: a\nrel: aaa framing=0\n");
    let diag = dir.path().join("z3.diag");
    let r = run(&["diag", "build", s(&pres), "-o", s(&diag)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out, "1-handles: 1\nh_1: aaa [f=0]  m_1: 0-framed meridian\n");
    let r = run(&["diag", "invariants", s(&diag)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out.lines().next(), Some("chi=2 sigma=0 H1=Z/3 spin=yes"));
    assert!(r.out.contains("Z/3=3"), "{}", r.out);
}

#[test]
fn decide_z3_pair_prints_path_and_certificate() {
    let dir = TempDir::new().unwrap();
    let (a, b) = z3_pair(&dir);
    let cert = dir.path().join("out.cert");
    let r = run(&["classify", "decide", s(&a), s(&b), "--search-depth", "2", "--certificate", s(&cert)]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert!(r.out.starts_with("verdict: StablyDiffeomorphic\n"), "{}", r.out);
    assert!(r.out.contains("T1 x="), "{}", r.out);
    let r = run(&["cert", "verify", s(&a), s(&b), s(&cert)]);
    assert_eq!(r.code, 0, "{}", r.out);
}

#[test]
fn decide_distinct_and_undetermined() {
    let dir = TempDir::new().unwrap();
    let (a, b) = z3_pair(&dir);
    let z2 = file(&dir, "z2.diag", "one_handles: 1\nhandle: aa 0\n");
    let r = run(&["classify", "decide", s(&a), s(&z2)]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("hom_count Z/3: 3 vs 1"), "{}", r.out);
    let r = run(&["classify", "decide", s(&a), s(&b), "--search-depth", "0"]);
    assert_eq!(r.code, 2, "{}", r.out);
    assert!(r.out.starts_with("verdict: NotDetermined\n"));
}

#[test]
fn decide_with_supplied_path() {
    let dir = TempDir::new().unwrap();
    let (a, b) = z3_pair(&dir);
    let good = file(&dir, "good.path", "T1 x=-\n");
    assert_eq!(run(&["classify", "decide", s(&a), s(&b), "--path", s(&good)]).code, 0);
    let wrong = file(&dir, "wrong.path", "S2\n");
    assert_eq!(run(&["classify", "decide", s(&a), s(&b), "--path", s(&wrong)]).code, 65);
    let r = run(&["classify", "decide", s(&a), s(&b), "--path", s(&good), "--budget", "3"]);
    assert_eq!(r.code, 64);
}

#[test]
fn tampered_certificate_names_the_move() {
    let dir = TempDir::new().unwrap();
    let (a, b) = z3_pair(&dir);
    let bad = file(&dir, "bad.cert", "k=0 l=0\nADDGEN x=-\nCANCEL gen=c rel=1\n");
    let r = run(&["cert", "verify", s(&a), s(&b), s(&bad)]);
    assert_ne!(r.code, 0);
    assert!(r.out.starts_with("rejected at move 2:"), "{}", r.out);
    let r = run(&["--json", "cert", "verify", s(&a), s(&b), s(&bad)]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["failing_move"], 2);
    assert_eq!(v["verified"], false);

    let wrong = file(&dir, "wrong.cert", "k=0 l=0\nADDGEN x=a\n");
    let r = run(&["cert", "verify", s(&a), s(&b), s(&wrong)]);
    assert_ne!(r.code, 0);
    assert!(r.out.starts_with("mismatch"), "{}", r.out);
}

#[test]
fn moves_apply_outputs_a_diagram_file() {
    let dir = TempDir::new().unwrap();
    let (a, _) = z3_pair(&dir);
    let cert = file(&dir, "c.cert", "k=1 l=0\nADDGEN x=aa\nTWIST g=b\n");
    let r = run(&["moves", "apply", s(&a), s(&cert)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out, "one_handles: 2\nhandle: aaa 0\nhandle: - 0\nhandle: bAA 1\n");
}

#[test]
fn surgery_run_matches_build() {
    let r = run(&["surgery", "run", "--handles", "1", "--loop", "aaa", "--parity", "0"]);
    assert_eq!((r.code, r.out.as_str()), (0, "one_handles: 1\nhandle: aaa 0\n"));
    let r = run(&["surgery", "run", "--handles", "1", "--loop", "aaa", "--parity", "0", "--loop", "-"]);
    assert_eq!(r.code, 64);
    let r = run(&["surgery", "run", "--handles", "1", "--loop", "b", "--parity", "0"]);
    assert_eq!(r.code, 65);
}

#[test]
fn pres_commands() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.pres", "# two relators\ngens: x y\nrel: xxx\nrel: y\n");
    let r = run(&["pres", "check", s(&p)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "<a,b | aaa, b>\ngenerators=2 relators=2 H1=Z/3\n");
    let r = run(&["pres", "tietze", s(&p), "--op", "T1inv", "--generator", "b", "--rel", "2"]);
    assert_eq!(r.out, "gens: a\nrel: aaa\n");
    let r = run(&["pres", "tietze", s(&p), "--op", "S1", "--i", "2", "--j", "1", "--sign", "-", "--w", "b"]);
    assert_eq!(r.out, "gens: a b\nrel: aaa\nrel: AAAb\n", "{}", r.err);
    let r = run(&["pres", "tietze", s(&p), "--op", "S2"]);
    assert_eq!(r.out, "gens: a b\nrel: aaa\nrel: b\nrel: -\n");
    assert_eq!(run(&["pres", "tietze", s(&p), "--op", "T1"]).code, 64);
    assert_eq!(run(&["pres", "tietze", s(&p), "--op", "S2", "--rel", "1"]).code, 65);
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&["bogus"]).code, 64);
    assert_eq!(run(&["diag", "invariants"]).code, 64);
    let missing = dir.path().join("missing.diag");
    assert_eq!(run(&["diag", "invariants", s(&missing)]).code, 66);
    let bad = file(&dir, "bad.pres", "rel: aaa\n");
    let r = run(&["pres", "check", s(&bad)]);
    assert_eq!(r.code, 65);
    assert!(r.err.contains("line 1, column 1"), "{}", r.err);
    let unnormal = file(&dir, "u.diag", "one_handles: 1\nhandle: aA 2\n");
    let r = run(&["diag", "invariants", s(&unnormal)]);
    assert_eq!(r.code, 65);
    assert!(r.err.contains("word not freely reduced at handle 1"), "{}", r.err);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn json_outputs_parse() {
    let dir = TempDir::new().unwrap();
    let (a, b) = z3_pair(&dir);
    let r = run(&["--json", "diag", "invariants", s(&a)]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["euler_characteristic"], 2);
    assert_eq!(v["h1"]["torsion"][0], "3");
    assert_eq!(v["hom_counts"][1]["group"], "Z/3");
    let r = run(&["classify", "decide", s(&a), s(&b), "--json", "--search-depth", "2"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["verdict"], "StablyDiffeomorphic");
    assert_eq!(v["path"]["steps"][0]["op"], "T1");
    assert_eq!(v["certificate"]["left_stabilizations"], 0);
}

#[test]
fn group_selection() {
    let dir = TempDir::new().unwrap();
    let (a, _) = z3_pair(&dir);
    let r = run(&["diag", "invariants", s(&a), "--groups", "Z/3,Q8"]);
    assert!(r.out.ends_with("hom_counts Z/3=3 Q8=1\n"), "{}", r.out);
    let list = file(&dir, "groups.txt", "# small\nS3\n");
    let r = run(&["diag", "invariants", s(&a), "--groups-file", s(&list)]);
    assert!(r.out.ends_with("hom_counts S3=3\n"), "{}", r.out);
    assert_eq!(run(&["diag", "invariants", s(&a), "--groups", "A5"]).code, 64);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = z3_pair(&dir);
    let args = ["classify", "decide", s(&a), s(&b), "--search-depth", "3"];
    assert_eq!(run(&args).out, run(&args).out);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let (a, _) = z3_pair(&dir);
    let z2 = file(&dir, "z2.diag", "one_handles: 1\nhandle: aa 0\n");
    let status = Command::new(env!("CARGO_BIN_EXE_handlebody"))
        .args(["classify", "decide", s(&a), s(&z2)])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
    let status = Command::new(env!("CARGO_BIN_EXE_handlebody")).arg("nope").output().unwrap();
    assert_eq!(status.status.code(), Some(64));
}
