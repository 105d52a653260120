use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn graphoid(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphoid")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

fn fixtures() -> TempDir {
    let d = TempDir::new().unwrap();
    let p = d.path();
    write(p, "fam.json", r#"[{"id": "f", "expr": "x/y"}]"#);
    write(p, "shifted.json", r#"[{"id": "f", "expr": "(x-1)/(y-2)"}]"#);
    write(p, "pt_inf.json", r#"{"base": ["0", "0"], "values": {"f": "inf"}}"#);
    write(p, "pt_bad.json", r#"{"base": ["1", "1"], "values": {"f": "2"}}"#);
    write(
        p,
        "sys.json",
        r#"{"nvars": 2, "constraints": [{"poly": "x^2 + y^2 - 1", "rel": "<0"}, {"poly": "x - 2", "rel": ">0"}],
            "region": {"arcs": [{"lo": "-4", "hi": "4"}, {"lo": "-4", "hi": "4"}]}}"#,
    );
    write(
        p,
        "table.json",
        r#"{"entries": {"0": "0", "1": "1", "x": "1", "x + 1": "3"}, "sums": [["x", "1", "x + 1"]], "products": []}"#,
    );
    d
}

#[test]
fn eval_prints_inf() {
    let d = TempDir::new().unwrap();
    let o = graphoid(d.path(), &["eval", "x/y", "1", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "inf");
    let o = graphoid(d.path(), &["eval", "x^2 - y", "-1/2", "3"]);
    assert_eq!(stdout(&o).trim(), "-11/4");
}

#[test]
fn bad_input_exits_2_with_error_object() {
    let d = TempDir::new().unwrap();
    let o = graphoid(d.path(), &["parse", "x +* y"]);
    assert_eq!(o.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "bad_input");
    let o = graphoid(d.path(), &["member", "--family", "missing.json", "--point", "missing.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn member_verdicts() {
    let d = fixtures();
    let o = graphoid(
        d.path(),
        &["member", "--family", "fam.json", "--point", "pt_inf.json", "--radii", "1e-1..1e-6", "--json"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["verdict"], "confirmed_to_radius");
    assert_eq!(v["manifest"]["params"]["radii"], "1e-1..1e-6");

    let o = graphoid(d.path(), &["--json", "member", "--family", "fam.json", "--point", "pt_bad.json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["verdict"], "excluded");
}

#[test]
fn feas_and_place_check() {
    let d = fixtures();
    let o = graphoid(d.path(), &["feas", "check", "sys.json"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("infeasible"), "{}", stdout(&o));

    let o = graphoid(d.path(), &["place-check", "table.json"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("violation"), "{}", stdout(&o));
}

#[test]
fn artifacts_are_written_atomically_and_reproducibly() {
    let d = fixtures();
    let run = |name: &str| {
        let o = graphoid(
            d.path(),
            &["fiber", "--family", "fam.json", "--at", "0,0", "--count", "24", "--seed", "7", "--out", name],
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(d.path().join(name)).unwrap()
    };
    let a = run("a.jsonl");
    let b = run("b.jsonl");
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let head: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(head["manifest"]["seed"], 7);
    assert!(head["tool"].as_str().unwrap().starts_with("graphoid "));
    assert_eq!(text.lines().count(), 25);
    let leftovers: Vec<_> = fs::read_dir(d.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().contains(".tmp-"))
        .collect();
    assert!(leftovers.is_empty());

    let o = graphoid(d.path(), &["fiber", "--family", "fam.json", "--at", "0,0", "--count", "24", "--seed", "8"]);
    assert!(o.status.success());
}

#[test]
fn probe_reads_fiber_artifacts() {
    let d = fixtures();
    let o = graphoid(d.path(), &["fiber", "--family", "shifted.json", "--at", "1,2", "--out", "c.jsonl"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = graphoid(d.path(), &["probe", "scan", "c.jsonl", "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["longest"]["betti0"], 1);
    assert_eq!(v["result"]["longest"]["betti1"], 1);
    let o = graphoid(d.path(), &["probe", "betti", "c.jsonl", "--eps", "auto"]);
    assert!(stdout(&o).contains("b0 = 1, b1 = 1"), "{}", stdout(&o));
}

#[test]
fn manifests_replay_byte_identically() {
    let d = fixtures();
    let o = graphoid(d.path(), &["cluster", "x*y/(x^2+y^2)", "--at", "0,0", "--out", "first.json"]);
    assert!(o.status.success());
    let first = fs::read(d.path().join("first.json")).unwrap();
    let v: Value = serde_json::from_slice(&first).unwrap();
    write(d.path(), "m.json", &v["manifest"].to_string());
    let o = graphoid(d.path(), &["run", "m.json", "--out", "second.json"]);
    assert!(o.status.success());
    assert_eq!(first, fs::read(d.path().join("second.json")).unwrap());
}

#[test]
fn number_field_verbs() {
    let d = TempDir::new().unwrap();
    let o = graphoid(d.path(), &["nf", "places", "x^4 - 5*x^2 + 2"]);
    assert!(stdout(&o).starts_with("4 real place(s)"), "{}", stdout(&o));
    let o = graphoid(d.path(), &["nf", "chi", "x^2 - 2", "a^2 + 1", "1/1000", "--root", "0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("χ(x) ≈ 3 "), "{}", stdout(&o));
    let o = graphoid(d.path(), &["demo-remark-as"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("isomorphic, but not equal"));
}
