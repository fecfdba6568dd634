use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use kodlib::{BatchRecord, Report};
use serde_json::{json, Value};

const LEFSCHETZ_E2: &str = r#"{"command":"lefschetz","payload":{"g":1,"h":0,"a":24}}"#;
const SEIFERT_237: &str = r#"{"command":"seifert","payload":{"base_genus":0,"multiplicities":[2,3,7]}}"#;
const DIM2_SPHERE: &str = r#"{"command":"dim2","payload":{"genus":0,"divisor":[]}}"#;

fn kodlib(args: &[&str], stdin: &str) -> Output {
    kodlib_env(args, stdin, &[])
}

fn kodlib_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kodlib"));
    cmd.args(args).env_remove("KODLIB_BOUND");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_report(o: &Output) -> Report {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn e1() -> Value {
    json!({
        "minimal": {"kind": "RationalCP2"},
        "blowups": 9,
        "omega": {"head": [31], "areas": [10, 10, 10, 10, 10, 10, 10, 10, 10]},
        "surface": {"components": [[3, -1, -1, -1, -1, -1, -1, -1, -1, -1]]}
    })
}

fn k3() -> Value {
    json!({"minimal": {"kind": "General", "ksq": 0, "k_torsion": true, "k_dot_omega_positive": false, "b_plus": 3}})
}

#[test]
fn request_examples() {
    for (req, kappa) in [(LEFSCHETZ_E2, "0"), (SEIFERT_237, "1"), (DIM2_SPHERE, "-inf")] {
        let r = json_report(&kodlib(&["--output", "json", "run"], req));
        assert_eq!(r.kappa, kappa, "{req}");
        assert!(!r.bound_qualified);
    }
}

#[test]
fn subcommands_read_payload_from_file_or_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seifert.json");
    std::fs::write(&path, r#"{"base_genus":0,"multiplicities":[2,3,5]}"#).unwrap();
    let from_file = json_report(&kodlib(&["--output", "json", "seifert", path.to_str().unwrap()], ""));
    assert_eq!(from_file.kappa, "-inf");
    let from_stdin = json_report(&kodlib(&["--output", "json", "seifert", "-"], r#"{"multiplicities":[2,3,6]}"#));
    assert_eq!(from_stdin.kappa, "0");
}

#[test]
fn trace_records_exact_quantities() {
    let r = json_report(&kodlib(&["--output", "json", "--trace", "run"], SEIFERT_237));
    assert_eq!(r.trace.len(), 1);
    assert_eq!(r.trace[0].value, "-1/42");
    let lf = json_report(&kodlib(&["--output", "json", "--trace", "lefschetz"], r#"{"g":1,"h":0,"a":24}"#));
    let steps: Vec<&str> = lf.trace.iter().map(|t| t.step.as_str()).collect();
    assert!(steps.contains(&"c(D)"), "{steps:?}");
    let untraced = json_report(&kodlib(&["--output", "json", "run"], SEIFERT_237));
    assert!(untraced.trace.is_empty());
}

#[test]
fn batch_preserves_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reqs.jsonl");
    std::fs::write(&path, format!("{LEFSCHETZ_E2}\n{SEIFERT_237}\n{DIM2_SPHERE}\n")).unwrap();
    let o = kodlib(&["--output", "json", "--batch", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<BatchRecord> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let kappas: Vec<&str> = recs.iter().map(|r| r.report.as_ref().unwrap().kappa.as_str()).collect();
    assert_eq!(kappas, ["0", "1", "-inf"]);
    assert_eq!(recs.iter().map(|r| r.line).collect::<Vec<_>>(), [1, 2, 3]);
}

#[test]
fn batch_isolates_a_malformed_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reqs.jsonl");
    std::fs::write(&path, format!("{LEFSCHETZ_E2}\n{{\"command\": \"seifert\", \n{DIM2_SPHERE}\n")).unwrap();
    let o = kodlib(&["--output", "json", "--batch", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<BatchRecord> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 3);
    assert_eq!(recs.iter().filter(|r| r.is_ok()).count(), 2);
    assert_eq!(recs[1].status, "error");
    let err = recs[1].error.as_ref().unwrap();
    assert_eq!(err.kind, "malformed");
    assert!(err.message.contains("line 1 column"), "{}", err.message);
}

#[test]
fn batch_of_empty_file_prints_nothing() {
    let file = tempfile::NamedTempFile::new().unwrap();
    let o = kodlib(&["--batch", file.path().to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn unreadable_batch_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = kodlib(&["--batch", dir.path().join("missing.jsonl").to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validation_errors_exit_2() {
    let malformed = kodlib(&["run"], "{\"command\": ");
    assert_eq!(malformed.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("line 1 column"));
    let unknown = kodlib(&["run"], r#"{"command":"dim5","payload":{}}"#);
    assert_eq!(unknown.status.code(), Some(2));
    let schema = kodlib(&["seifert"], r#"{"multiplicities":"2,3,7"}"#);
    assert_eq!(schema.status.code(), Some(2));
    let float = kodlib(&["dim2"], r#"{"genus":1,"divisor":[{"id":"p","weight":0.5}]}"#);
    assert_eq!(float.status.code(), Some(2));
    let model = kodlib(&["dim4"], r#"{"minimal":{"kind":"RuledTrivial","h":1},"omega":{"head":[1,1],"areas":[]}}"#);
    assert_eq!(model.status.code(), Some(0));
    let no_omega = kodlib(&["dim4"], r#"{"minimal":{"kind":"RationalCP2"}}"#);
    assert_eq!(no_omega.status.code(), Some(2));
}

#[test]
fn theorem_consistency_failures_exit_3() {
    let payload = json!({
        "minimal": {"kind": "General", "ksq": 1, "k_torsion": false, "k_dot_omega_positive": true, "b_plus": 1},
        "surface": {"components": [{"K_dot_F": -3, "F_sq": 3, "F_omega_pos": true}]}
    });
    let o = kodlib(&["--output", "json", "relative"], &payload.to_string());
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["error"]["kind"], "consistency");
}

#[test]
fn bound_comes_from_flag_env_and_request() {
    let payload = json!({"minimal": {"kind": "RationalCP2"}, "blowups": 2, "omega": {"head": [10], "areas": [1, 2]}, "enumerate": true});
    let p = payload.to_string();
    assert_eq!(json_report(&kodlib(&["--output", "json", "dim4"], &p)).bound, Some(30));
    assert_eq!(json_report(&kodlib(&["--output", "json", "--bound", "7", "dim4"], &p)).bound, Some(7));
    let env = kodlib_env(&["--output", "json", "dim4"], &p, &[("KODLIB_BOUND", "11")]);
    assert_eq!(json_report(&env).bound, Some(11));
    let req = json!({"command": "dim4", "payload": payload, "options": {"bound": 4}}).to_string();
    let r = json_report(&kodlib_env(&["--output", "json", "run"], &req, &[("KODLIB_BOUND", "11")]));
    assert_eq!(r.bound, Some(4));
    assert!(r.bound_qualified);
}

#[test]
fn request_output_option_overrides_the_flag() {
    let req = json!({"command": "seifert", "payload": {"multiplicities": [2, 3, 7]}, "options": {"output": "json"}});
    let r = json_report(&kodlib(&["run"], &req.to_string()));
    assert_eq!(r.kappa, "1");
}

#[test]
fn json_reports_round_trip_byte_identically() {
    let payloads = [
        ("run", LEFSCHETZ_E2.to_string()),
        ("run", SEIFERT_237.to_string()),
        ("relative", e1().to_string()),
        ("dim2", r#"{"genus":1,"divisor":[{"id":"p","weight":"3/6"}]}"#.to_string()),
    ];
    for (cmd, p) in payloads {
        let o = kodlib(&["--output", "json", "--trace", "--bound", "12", cmd], &p);
        assert_eq!(o.status.code(), Some(0));
        let s = stdout(&o);
        let r: Report = serde_json::from_str(s.trim()).unwrap();
        assert_eq!(r.to_json(), s.trim());
        assert!(!s.contains(".0"), "rational printed as float: {s}");
    }
}

#[test]
fn text_and_json_agree_on_kappa() {
    let cases = [
        ("run", LEFSCHETZ_E2.to_string()),
        ("run", SEIFERT_237.to_string()),
        ("run", DIM2_SPHERE.to_string()),
        ("relative", e1().to_string()),
        ("dim4", k3().to_string()),
        ("bundle", r#"{"base_genus":2,"fiber_genus":3}"#.to_string()),
        ("dim3", r#"{"pieces":["H3","S2xR"]}"#.to_string()),
        ("rhurwitz", r#"{"degree":2,"chi_base":2,"indices":[2,2,2,2,2,2]}"#.to_string()),
        ("cover", json!({"minimal": {"kind": "RuledNontrivial", "h": 2}, "omega": {"head": [1, 1], "areas": []}, "n": 2}).to_string()),
    ];
    for (cmd, p) in cases {
        let j = json_report(&kodlib(&["--output", "json", "--bound", "12", cmd], &p));
        let t = kodlib(&["--bound", "12", cmd], &p);
        assert_eq!(t.status.code(), Some(0));
        let first = stdout(&t).lines().next().unwrap().to_string();
        assert!(first.ends_with(&format!("kappa = {}", j.kappa)), "{cmd}: {first} vs {}", j.kappa);
    }
}

#[test]
fn e1_relative_and_fiber_sum() {
    let r = json_report(&kodlib(&["--output", "json", "relative"], &e1().to_string()));
    assert_eq!(r.kappa, "0");
    assert!(r.bound_qualified);
    let sum = json!({"first": e1(), "second": e1()});
    let f = json_report(&kodlib(&["--output", "json", "--bound", "12", "fibersum"], &sum.to_string()));
    assert_eq!(f.kappa, "0");
    let k = json_report(&kodlib(&["--output", "json", "dim4"], &k3().to_string()));
    assert_eq!(k.kappa, f.kappa);
    assert!(!k.bound_qualified);
}

#[test]
fn batch_and_subcommand_are_exclusive() {
    let file = tempfile::NamedTempFile::new().unwrap();
    let o = kodlib(&["--batch", file.path().to_str().unwrap(), "run"], "");
    assert_eq!(o.status.code(), Some(2));
}
