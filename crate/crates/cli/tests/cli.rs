use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";

fn knotq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotq"))
        .args(args)
        .env_remove("KNOTQ_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture_table() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/knots.jsonl")
}

fn pd_file(dir: &tempfile::TempDir, body: &str) -> String {
    let p = dir.path().join("in.pd");
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn q_lines() {
    let dir = tempfile::tempdir().unwrap();
    let o = knotq(&["q", &pd_file(&dir, "")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Q=1 maxdeg=0 m=0\n");
    let o = knotq(&["q", &pd_file(&dir, &format!("# comment\n3_1: {TREFOIL}\n"))]);
    assert_eq!(stdout(&o), "3_1: Q=2z^2+2z-3 maxdeg=2 m=1\n");
}

#[test]
fn q_perko() {
    let dir = tempfile::tempdir().unwrap();
    let table = fs::read_to_string(fixture_table()).unwrap();
    let line = table.lines().find(|l| l.contains("10_161")).unwrap();
    let pd = line
        .split("\"pd\":\"")
        .nth(1)
        .unwrap()
        .split('"')
        .next()
        .unwrap();
    let o = knotq(&["q", &pd_file(&dir, pd)]);
    assert!(stdout(&o).contains("maxdeg=6"), "{}", stdout(&o));
    let o = knotq(&["bridge", &pd_file(&dir, pd)]);
    let s = stdout(&o);
    let cd: usize = s.trim().rsplit("c-d=").next().unwrap().parse().unwrap();
    assert!(cd >= 6, "{s}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(knotq(&["q", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(
        knotq(&["q", &pd_file(&dir, "X(1,2,3")]).status.code(),
        Some(2)
    );
    let tight = knotq(&["q", "--budget", "1", &pd_file(&dir, TREFOIL)]);
    assert_eq!(tight.status.code(), Some(3));
    let env = Command::new(env!("CARGO_BIN_EXE_knotq"))
        .args(["q", &pd_file(&dir, TREFOIL)])
        .env("KNOTQ_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    assert_eq!(knotq(&["curves", "9"]).status.code(), Some(3));
    assert_eq!(
        knotq(&["--budget", "0", "curves", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(knotq(&["bogus"]).status.code(), Some(2));
}

#[test]
fn bridge_lines() {
    let dir = tempfile::tempdir().unwrap();
    let o = knotq(&["bridge", &pd_file(&dir, &format!("a: O\nb: {TREFOIL}\n"))]);
    assert_eq!(stdout(&o), "a: c=0 d=0 c-d=0\nb: c=3 d=1 c-d=2\n");
}

#[test]
fn distances() {
    assert_eq!(stdout(&knotq(&["distance", "a a"])), "c=1 regions=2 d=0\n");
    assert_eq!(
        stdout(&knotq(&["distance", "a b a b"])),
        "c=2 regions=3 d=1\n"
    );
    assert_eq!(knotq(&["distance", "1 2 1 3 2 3"]).status.code(), Some(2));
    assert_eq!(knotq(&["distance", "a b a"]).status.code(), Some(2));
}

#[test]
fn curves_report() {
    let o = knotq(&["curves", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let max_d: Vec<&str> = s
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(3).unwrap())
        .collect();
    assert_eq!(max_d, vec!["0", "0", "1"]);
    let j = stdout(&knotq(&["curves", "4", "--jsonl", "--jobs", "2"]));
    assert_eq!(j.lines().count(), 5);
    assert!(!j.contains("\"bound\""));
}

#[test]
fn scan_flags_perko_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let table = fixture_table();
    let t = table.to_str().unwrap();
    let a = dir.path().join("a.tsv");
    let b = dir.path().join("b.tsv");
    let js = dir.path().join("a.jsonl");
    let o = knotq(&[
        "scan",
        t,
        "--out",
        a.to_str().unwrap(),
        "--jsonl",
        js.to_str().unwrap(),
        "--jobs",
        "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(
        knotq(&["scan", t, "--out", b.to_str().unwrap(), "--jobs", "4"])
            .status
            .success()
    );
    let report = fs::read_to_string(&a).unwrap();
    assert_eq!(report, fs::read_to_string(&b).unwrap());
    let flagged: Vec<&str> = report
        .lines()
        .filter(|l| l.contains("NON_Q_MAXIMAL"))
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(flagged, vec!["10_161"]);
    assert_eq!(
        fs::read_to_string(js).unwrap().lines().count(),
        report.lines().count() - 1
    );
}

#[test]
fn scan_alternating_only_flags_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let table = fs::read_to_string(fixture_table()).unwrap();
    let alt: String = table
        .lines()
        .filter(|l| !l.contains("10_161"))
        .map(|l| format!("{l}\n"))
        .collect();
    let p = dir.path().join("alt.jsonl");
    fs::write(&p, alt).unwrap();
    let o = knotq(&["scan", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("NON_Q_MAXIMAL"));
}

#[test]
fn scan_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(knotq(&["scan", "/no/such/table"]).status.code(), Some(2));
    let p = dir.path().join("t.jsonl");
    fs::write(
        &p,
        format!(
            "{}\n{}\n",
            r#"{"name":"hopf","pd":"X(1,3,2,4) X(3,1,4,2)","crossing_number":2}"#,
            format_args!(r#"{{"name":"3_1","pd":"{TREFOIL}","crossing_number":3}}"#)
        ),
    )
    .unwrap();
    let o = knotq(&["scan", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("3_1"));
    let o = knotq(&["scan", p.to_str().unwrap(), "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3));
}
