//! End-to-end runs of the compiled binary. Every command-line example in the
//! README appears here verbatim with its documented exit code, alongside the
//! error-path exit codes (2 usage, 3 state space over the cap).

use std::process::Command;

fn bipartition(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bipartition"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn json(stdout: &str) -> serde_json::Value {
    serde_json::from_str(stdout).expect("stdout is a JSON report")
}

#[test]
fn verify_asym4_ring3_lem9_holds() {
    let (code, out, _) =
        bipartition(&["verify", "--protocol", "nobs-asym4", "--graph", "ring:3", "--pred", "LEM9"]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    let rep = json(&out);
    assert_eq!(rep["solves"], true);
    assert_eq!(rep["predicates"]["LEM9"]["holds"], true);
    assert_eq!(rep["configs"], 10);
}

#[test]
fn run_bs_global3_star4_reaches_balanced_silence() {
    let (code, out, _) = bipartition(&[
        "run",
        "--protocol",
        "bs-global3",
        "--graph",
        "star:4",
        "--bs",
        "attach:0",
        "--scheduler",
        "random",
        "--seed",
        "1",
        "--stop",
        "silent",
    ]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    assert!(out.contains("stop: silent"), "run should reach silence:\n{out}");
    // Summary line reads `red/blue  R/B (imbalance ±I)`.
    let line = out.lines().find(|l| l.starts_with("red/blue")).expect("summary line");
    let counts = line.split_whitespace().nth(1).expect("R/B field");
    let (r, b) = counts.split_once('/').expect("R/B shape");
    let (r, b): (i64, i64) = (r.parse().unwrap(), b.parse().unwrap());
    assert!((r - b).abs() <= 1, "final split {r}/{b} is unbalanced");
    assert_eq!(r + b, 4);
}

#[test]
fn verify_asym4_line2_solves() {
    let (code, out, _) = bipartition(&["verify", "--protocol", "nobs-asym4", "--graph", "line:2"]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    let rep = json(&out);
    assert_eq!(rep["solves"], true);
    assert_eq!(rep["configs"], 3);
    assert!(rep["witness"].is_null());
}

#[test]
fn verify_sym5_line2_fails_with_witness() {
    // No symmetric protocol solves two agents; the checker proves it.
    let (code, out, _) = bipartition(&["verify", "--protocol", "nobs-sym5", "--graph", "line:2"]);
    assert_eq!(code, 1, "documented exit code 1\n{out}");
    let rep = json(&out);
    assert_eq!(rep["solves"], false);
    assert!(!rep["witness"].is_null(), "failing verify must carry a witness");
}

#[test]
fn verify_sym5_ring4_all_predicates() {
    let (code, out, _) =
        bipartition(&["verify", "--protocol", "nobs-sym5", "--graph", "ring:4", "--pred", "all"]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    let rep = json(&out);
    assert_eq!(rep["solves"], true);
    assert_eq!(rep["predicates"]["COR12"]["holds"], true);
    assert_eq!(rep["predicates"]["LEM10"]["holds"], true);
    // Depth lemmas speak about the base-station protocols only.
    assert_eq!(rep["predicates"]["LEM2"]["applicable"], false);
}

#[test]
fn verify_weak_protocol_reports_predicates_and_note() {
    let (code, out, _) = bipartition(&[
        "verify",
        "--protocol",
        "bs-weak3p1:3",
        "--graph",
        "line:3",
        "--bs",
        "attach:0",
        "--pred",
        "LEM1,LEM4,MONO-INI",
    ]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    let rep = json(&out);
    for pred in ["LEM1", "LEM4", "MONO-INI"] {
        assert_eq!(rep["predicates"][pred]["holds"], true, "{pred} should hold");
    }
    assert!(rep["note"].as_str().unwrap().contains("global fairness"));
}

#[test]
fn failed_predicate_exits_one_with_counterexample() {
    // Two lone tokens on a 2-line flip phases forever: the eventual
    // single-token lemma fails, and the report pins a configuration.
    let (code, out, _) = bipartition(&[
        "verify",
        "--protocol",
        "nobs-sym5",
        "--graph",
        "line:2",
        "--pred",
        "LEM10",
    ]);
    assert_eq!(code, 1, "documented exit code 1\n{out}");
    let rep = json(&out);
    assert_eq!(rep["predicates"]["LEM10"]["holds"], false);
    assert!(!rep["predicates"]["LEM10"]["counterexample"].is_null());
}

#[test]
fn states_subcommand_reports_bound() {
    let (code, out, _) = bipartition(&[
        "states",
        "--protocol",
        "bs-weak3p1:4",
        "--graph",
        "line:4",
        "--bs",
        "attach:0",
    ]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    assert!(out.contains("of 13 agent states"), "missing bound line:\n{out}");
}

#[test]
fn counterexample_starve_holds_victim() {
    let (code, out, _) = bipartition(&["counterexample", "starve", "--periods", "10"]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    let rep = json(&out);
    assert_eq!(rep["victim_still_initial"], true);
    assert_eq!(rep["pairs_covered_per_period"], true);
    assert!(rep["undo_steps"].as_u64().unwrap() > 0);
}

#[test]
fn counterexample_ring_double_doubles_imbalance() {
    let (code, out, _) =
        bipartition(&["counterexample", "ring-double", "--protocol", "nobs-sym5"]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    let rep = json(&out);
    assert!(rep["violation"].is_null());
    let base = rep["base_imbalance"].as_i64().unwrap();
    assert_eq!(rep["final_imbalance"].as_i64().unwrap(), 2 * base);
}

#[test]
fn counterexample_double_bridge_keeps_equivalence() {
    let (code, out, _) = bipartition(&[
        "counterexample",
        "double-bridge",
        "--protocol",
        "nobs-asym4",
        "--graph",
        "ring:3",
        "--steps",
        "50",
    ]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    let rep = json(&out);
    assert!(rep["violation"].is_null());
    assert_eq!(rep["base_steps"], 50);
    assert_eq!(rep["doubled_steps"], 100);
    assert_eq!(rep["equivalence_held_through"], 100);
}

#[test]
fn graph_emits_text_format_and_round_trips() {
    let (code, out, _) = bipartition(&["graph", "--graph", "ring:4", "--bs", "attach:1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("n 4"));
    assert_eq!(out.lines().nth(1), Some("bs 1"));
    assert_eq!(out.lines().filter(|l| l.starts_with("e ")).count(), 4);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring4.graph");
    let (code, _, _) = bipartition(&[
        "graph",
        "--graph",
        "ring:4",
        "--bs",
        "attach:1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let spec = format!("file:{}", path.display());
    let (code, out, _) = bipartition(&["states", "--protocol", "bs-global3", "--graph", &spec]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("of 3 agent states"));
}

#[test]
fn run_writes_jsonl_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.jsonl");
    let (code, out, _) = bipartition(&[
        "run",
        "--protocol",
        "bs-weak-mod:3",
        "--graph",
        "line:5",
        "--bs",
        "attach:0",
        "--scheduler",
        "roundrobin",
        "--stop",
        "silent",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<serde_json::Value> =
        text.lines().map(|l| serde_json::from_str(l).expect("JSONL line")).collect();
    assert!(lines.len() > 1, "trace should have a header and steps");
    let header = &lines[0];
    assert_eq!(header["protocol"], "bs-weak-mod:3");
    assert_eq!(header["graph"], "line:5");
    assert_eq!(header["schedule"], "roundrobin");
    assert_eq!(header["stop_reason"], "silent");
    for (i, step) in lines[1..].iter().enumerate() {
        assert_eq!(step["t"].as_u64().unwrap() as usize, i);
        for key in ["i", "r", "pre", "post"] {
            assert!(!step[key].is_null(), "step {i} missing {key}");
        }
        assert_eq!(step["pre"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn scripted_run_executes_the_script() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("steps.script");
    std::fs::write(&path, "bs 0\n0 1  # hand the color on\n1 0\n").unwrap();
    let sched = format!("script:{}", path.display());
    let (code, out, _) = bipartition(&[
        "run",
        "--protocol",
        "bs-global3",
        "--graph",
        "line:2",
        "--bs",
        "attach:0",
        "--scheduler",
        &sched,
    ]);
    assert_eq!(code, 0, "documented exit code 0\n{out}");
    assert!(out.contains("steps      3 (stop: script_end)"), "unexpected summary:\n{out}");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = bipartition(&["verify", "--protocol", "nobs-asym4", "--graph", "torus:3"]);
    assert_eq!(code, 2, "unknown family is a parse error");
    assert!(err.contains("bad graph"));

    let (code, _, _) = bipartition(&["verify", "--protocol", "nobs-asym4"]);
    assert_eq!(code, 2, "missing required --graph");

    let (code, _, err) = bipartition(&["verify", "--protocol", "mystery9", "--graph", "ring:3"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown protocol"));

    let (code, _, _) = bipartition(&["transmogrify"]);
    assert_eq!(code, 2, "unknown subcommand");
}

#[test]
fn oversized_state_space_exits_three() {
    let (code, _, err) =
        bipartition(&["verify", "--protocol", "nobs-sym5", "--graph", "ring:5", "--cap", "100"]);
    assert_eq!(code, 3, "documented exit code 3");
    assert!(err.contains("state space"), "stderr should explain: {err}");
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = bipartition(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["run", "verify", "states", "counterexample", "graph"] {
        assert!(out.contains(sub), "--help must list {sub}");
    }
    let (code, _, _) = bipartition(&["--version"]);
    assert_eq!(code, 0);
}
