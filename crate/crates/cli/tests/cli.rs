use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn turan(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn reemit(path: &Path) -> (String, String) {
    let text = fs::read_to_string(path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&value).unwrap();
    again.push('\n');
    (text, again)
}

#[test]
fn help_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = turan(&["--help"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("brute-force"));
}

#[test]
fn wheel_formula_value() {
    let dir = tempfile::tempdir().unwrap();
    let o = turan(&["ex-formula", "--wheel-k", "3", "--n", "20"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("value: 111"), "{text}");
    assert!(text.contains("argmax: {10,11}"), "{text}");
}

#[test]
fn brute_force_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = turan(&["brute-force", "--family", "k3,k3", "--n", "6", "--json", "out.json"], dir.path());
    assert!(o.status.success());
    let path = dir.path().join("out.json");
    let value: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["schema"], "turan.extremal-result/v1");
    assert_eq!(value["exhaustive"], true);
    assert_eq!(value["ex_value"], 12);
    let (text, again) = reemit(&path);
    assert_eq!(text, again);
    let record: turan_core::oracle::ExtremalRecord = serde_json::from_str(&text).unwrap();
    let mut typed = serde_json::to_string_pretty(&record).unwrap();
    typed.push('\n');
    assert_eq!(text, typed);
}

#[test]
fn budget_exhaustion_writes_partial_result() {
    let dir = tempfile::tempdir().unwrap();
    let o = turan(
        &["brute-force", "--family", "k3", "--n", "9", "--max-nodes", "5", "--json", "p.json"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3));
    let value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    assert_eq!(value["exhaustive"], false);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["brute-force", "--family", "x3", "--n", "5"][..],
        &["gen", "wheel", "--n", "9", "--k", "3"],
        &["gen", "union", "--ell", "2", "--h", "A"],
        &["ex-formula", "--n", "5"],
        &["nonsense"],
    ] {
        let o = turan(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(!err.trim().is_empty(), "{args:?}");
    }
    let o = turan(&["verify", "missing.g6", "--family", "k3"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_reports_verdicts_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = turan(
        &["gen", "wheel", "--n", "14", "--k", "3", "--graph6", "w.g6", "--json", "r.json"],
        dir.path(),
    );
    assert!(o.status.success());
    let (text, again) = reemit(&dir.path().join("r.json"));
    assert_eq!(text, again);
    // a graph containing the pattern is data, not an error
    fs::write(dir.path().join("k.g6"), "C~\n").unwrap();
    for (file, family, expect) in [("w.g6", "w7", "true     true   pass"), ("k.g6", "k3", "false    false    n/a")] {
        let o = turan(&["verify", file, "--family", family, "--json", "v.json"], dir.path());
        assert!(o.status.success());
        assert!(stdout(&o).contains(expect), "{}", stdout(&o));
        let (text, again) = reemit(&dir.path().join("v.json"));
        assert_eq!(text, again);
    }
}

#[test]
fn outputs_are_deterministic_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let mut outs = Vec::new();
    for threads in ["1", "4"] {
        let json = format!("t{threads}.json");
        let o = turan(
            &["--threads", threads, "brute-force", "--family", "c4", "--n", "8", "--json", &json],
            dir.path(),
        );
        assert!(o.status.success());
        outs.push((stdout(&o), fs::read_to_string(dir.path().join(&json)).unwrap()));
    }
    assert_eq!(outs[0], outs[1]);

    fs::write(dir.path().join("g.g6"), "Gr`HOk\n").unwrap();
    let args = ["stability", "g.g6", "--mode", "local", "--seed", "7", "--r", "3"];
    assert_eq!(stdout(&turan(&args, dir.path())), stdout(&turan(&args, dir.path())));
}

#[test]
fn scan_and_criticality_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = turan(&["scan", "--family", "k3,k3", "--from", "6", "--to", "8", "--json", "s.json"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("first agreement: n = 7"), "{}", stdout(&o));
    let (text, again) = reemit(&dir.path().join("s.json"));
    assert_eq!(text, again);

    let o = turan(&["criticality", "w5,w6,k4"], dir.path());
    let lines: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().collect::<Vec<_>>().join(" ")).collect();
    assert_eq!(lines[1..], ["w5 3 true false", "w6 4 true true", "k4 4 true true"]);
}

#[test]
fn union_and_standard_generation() {
    let dir = tempfile::tempdir().unwrap();
    let o = turan(&["gen", "standard", "turan:8,2", "--graph6", "t.g6"], dir.path());
    assert!(o.status.success());
    let h = fs::read_to_string(dir.path().join("t.g6")).unwrap();
    let o = turan(&["gen", "union", "--ell", "2", "--h", h.trim()], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("edges: 24"));
    let o = turan(&["ex-formula", "--family", "k3,k3", "--n", "9"], dir.path());
    assert!(stdout(&o).contains("value: 24"));
}
