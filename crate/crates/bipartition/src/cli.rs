//! Command-line front end.
//!
//! Subcommands: `run` (simulate, optionally writing a JSONL trace), `verify`
//! (model-check a protocol/graph pair and print a JSON report), `states`
//! (reachable agent-state count against the protocol's bound),
//! `counterexample` (the three impossibility harnesses), and `graph` (emit a
//! graph file).
//!
//! Exit codes: 0 success / property holds, 1 property violated, 2 usage or
//! parse error, 3 configuration space over the cap.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

/// Line to stdout. A consumer that closes the pipe early (`… | head`) ends
/// the process with the conventional SIGPIPE status instead of a panic.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(141);
        }
    }};
}

macro_rules! out_raw {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let mut so = std::io::stdout();
        if write!(so, $($arg)*).and_then(|_| so.flush()).is_err() {
            std::process::exit(141);
        }
    }};
}

use clap::{Args, Parser, Subcommand};

use crate::counterexamples::{
    replay_double_bridge, ring_doubling_demo, starvation_run, DoubledTraceReport,
};
use crate::error::{Error, Result};
use crate::graph::{build, BsMode, CommGraph, Family};
use crate::model::Interaction;
use crate::protocols::parse_protocol;
use crate::scheduler::{default_window, run, Schedule, StopReason, StopRule};
use crate::verifier::{
    check_predicate, reachable_agent_state_count, reachable_with_cap, verify_global_on, PredId,
    DEFAULT_STATE_CAP,
};

#[derive(Parser)]
#[command(
    name = "bipartition",
    version,
    about = "Simulate and verify uniform-bipartition population protocols"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Simulate one execution and print a summary.
    Run(RunArgs),
    /// Model-check a protocol on a graph; prints a JSON report.
    Verify(VerifyArgs),
    /// Count reachable agent states against the protocol's bound.
    States(StatesArgs),
    /// Run one of the impossibility-proof harnesses.
    #[command(subcommand)]
    Counterexample(CxCmd),
    /// Emit a graph in the text format.
    Graph(GraphArgs),
}

#[derive(Args)]
struct ProtocolGraphArgs {
    /// Protocol: bs-global3, bs-weak3p1:P, bs-weak-mod:l, nobs-asym4, nobs-sym5.
    #[arg(long)]
    protocol: String,
    /// Graph: ring:N, line:N, complete:N, star:N, random:N:SEED, or file:PATH.
    #[arg(long)]
    graph: String,
    /// Base station: `attach:0,2` or `none` (default). Not valid with file: graphs.
    #[arg(long)]
    bs: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    target: ProtocolGraphArgs,
    /// Scheduler: random, roundrobin, or script:PATH.
    #[arg(long, default_value = "random")]
    scheduler: String,
    /// PRNG seed for `random`; period-permutation seed for `roundrobin`
    /// (omitted = canonical order).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: usize,
    /// Stop rule: `silent` or `window:W`. Default: window with W = 50 times
    /// the number of ordered pairs (heuristic, labeled as such).
    #[arg(long)]
    stop: Option<String>,
    /// Write the execution trace as JSON Lines to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    target: ProtocolGraphArgs,
    /// Comma-separated predicate ids (e.g. LEM9,TOKEN-PARITY), or `all` for
    /// every applicable predicate.
    #[arg(long)]
    pred: Option<String>,
    /// Cap on the a-priori configuration-space bound.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    cap: u64,
}

#[derive(Args)]
struct StatesArgs {
    #[command(flatten)]
    target: ProtocolGraphArgs,
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    cap: u64,
}

#[derive(Subcommand)]
enum CxCmd {
    /// Starvation adversary vs bs-global3 on line:3 + bs at 0, victim 2.
    Starve {
        /// Full weakly-fair periods to execute.
        #[arg(long, default_value_t = 10)]
        periods: usize,
    },
    /// Replay a fresh trace onto the doubled graph joined by one bridge edge.
    DoubleBridge {
        /// Protocol without a base station.
        #[arg(long)]
        protocol: String,
        /// Base graph (no base station).
        #[arg(long)]
        graph: String,
        /// Bridge endpoint in the first copy; (alpha, beta) must be an edge.
        #[arg(long, default_value_t = 0)]
        alpha: usize,
        /// Bridge endpoint in the second copy.
        #[arg(long, default_value_t = 1)]
        beta: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Step budget for the base run.
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Replay a 3-ring trace onto the interleaved 6-ring.
    RingDouble {
        /// Protocol without a base station.
        #[arg(long)]
        protocol: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Step budget for the base run on the 3-ring.
        #[arg(long, default_value_t = 600)]
        settle: usize,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Graph: ring:N, line:N, complete:N, star:N, random:N:SEED, or file:PATH.
    #[arg(long)]
    graph: String,
    /// Base station: `attach:0,2` or `none` (default).
    #[arg(long)]
    bs: Option<String>,
    /// Write to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Entry point for the binary; parses real argv.
pub fn run_cli() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::StateSpaceTooLarge { .. } => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Run(a) => cmd_run(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::States(a) => cmd_states(a),
        Cmd::Counterexample(c) => cmd_counterexample(c),
        Cmd::Graph(a) => cmd_graph(a),
    }
}

/// Parses the `--graph`/`--bs` pair. A `file:` graph carries its own base
/// station, so combining it with `--bs` is an error rather than an override.
pub fn parse_graph(spec: &str, bs: Option<&str>) -> Result<CommGraph> {
    if let Some(path) = spec.strip_prefix("file:") {
        if bs.is_some() {
            return Err(Error::Parse(
                "--bs cannot be combined with file: graphs; edit the file's bs line".into(),
            ));
        }
        let text = fs::read_to_string(path)?;
        return CommGraph::from_text(&text);
    }
    let bs_mode = parse_bs(bs)?;
    let parts: Vec<&str> = spec.split(':').collect();
    let usage = || Error::Parse(format!(
        "bad graph {spec:?}; expected ring:N, line:N, complete:N, star:N, random:N:SEED, or file:PATH"
    ));
    let parse_n = |s: &str| s.parse::<usize>().map_err(|_| usage());
    let (family, n) = match parts.as_slice() {
        ["ring", n] => (Family::Ring, parse_n(n)?),
        ["line", n] => (Family::Line, parse_n(n)?),
        ["complete", n] => (Family::Complete, parse_n(n)?),
        ["star", n] => (Family::Star, parse_n(n)?),
        ["random", n, seed] => {
            let seed = seed.parse::<u64>().map_err(|_| usage())?;
            (Family::RandomConnected { seed }, parse_n(n)?)
        }
        _ => return Err(usage()),
    };
    build(family, n, bs_mode)
}

fn parse_bs(bs: Option<&str>) -> Result<BsMode> {
    match bs {
        None => Ok(BsMode::None),
        Some("none") => Ok(BsMode::None),
        Some(s) => {
            let list = s.strip_prefix("attach:").ok_or_else(|| {
                Error::Parse(format!("bad --bs {s:?}; expected `attach:0,2` or `none`"))
            })?;
            let attach = list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad attachment index {t:?}")))
                })
                .collect::<Result<Vec<usize>>>()?;
            Ok(BsMode::ExtraVertex { attach })
        }
    }
}

fn parse_schedule(s: &str, seed: Option<u64>) -> Result<Schedule> {
    if let Some(path) = s.strip_prefix("script:") {
        let text = fs::read_to_string(path)?;
        return Ok(Schedule::Scripted { steps: parse_script(&text)? });
    }
    match s {
        "random" => Ok(Schedule::UniformRandom { seed: seed.unwrap_or(0) }),
        "roundrobin" => Ok(Schedule::RoundRobin { perm_seed: seed }),
        _ => Err(Error::Parse(format!(
            "unknown scheduler {s:?}; expected random, roundrobin, or script:PATH"
        ))),
    }
}

/// Script files: one interaction per line as `<initiator> <responder>`,
/// endpoints written as agent indices or `bs`; `#` starts a comment.
fn parse_script(text: &str) -> Result<Vec<Interaction>> {
    let mut steps = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => {
                steps.push(Interaction::new(a.parse()?, b.parse()?));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "script line {line:?}: expected `<initiator> <responder>`"
                )))
            }
        }
    }
    Ok(steps)
}

fn parse_stop(s: Option<&str>, g: &CommGraph) -> Result<StopRule> {
    match s {
        None => Ok(StopRule::Window(default_window(g))),
        Some("silent") => Ok(StopRule::Silent),
        Some(s) => {
            let w = s.strip_prefix("window:").ok_or_else(|| {
                Error::Parse(format!("bad --stop {s:?}; expected `silent` or `window:W`"))
            })?;
            let w = w
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad window length {w:?}")))?;
            Ok(StopRule::Window(w))
        }
    }
}

fn stop_reason_str(r: StopReason) -> &'static str {
    match r {
        StopReason::Silent => "silent",
        StopReason::StepBudget => "step_budget",
        StopReason::Predicate => "predicate",
        StopReason::ConvergedWindow => "converged_window (heuristic)",
        StopReason::ScriptEnd => "script_end",
    }
}

fn cmd_run(a: RunArgs) -> Result<ExitCode> {
    let p = parse_protocol(&a.target.protocol)?;
    let g = parse_graph(&a.target.graph, a.target.bs.as_deref())?;
    let sched = parse_schedule(&a.scheduler, a.seed)?;
    let stop = parse_stop(a.stop.as_deref(), &g)?;
    let trace = run(&p, &g, &sched, a.max_steps, stop)?;
    let (r, b) = trace.final_counts(&p);

    out!("{:<10} {}", "protocol", p.name());
    out!(
        "{:<10} {} ({} agents, {} edges{})",
        "graph",
        a.target.graph,
        g.n_agents(),
        g.n_edges(),
        if g.has_bs() { ", bs" } else { "" }
    );
    match a.seed {
        Some(seed) => out!("{:<10} {} seed={}", "scheduler", sched, seed),
        None => out!("{:<10} {}", "scheduler", sched),
    }
    out!("{:<10} {} (stop: {})", "steps", trace.len(), stop_reason_str(trace.stop_reason));
    out!("{:<10} {}", "final", p.render(&trace.final_config));
    out!("{:<10} {}/{} (imbalance {:+})", "red/blue", r, b, r as i64 - b as i64);

    if let Some(out) = &a.out {
        fs::write(out, trace.to_jsonl(&p, &a.target.graph, a.seed, &a.scheduler))?;
        out!("{:<10} {}", "trace", out.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_pred_list(spec: Option<&str>) -> Result<(Vec<PredId>, bool)> {
    match spec {
        None => Ok((Vec::new(), false)),
        Some("all") => Ok((PredId::all().to_vec(), true)),
        Some(list) => {
            let preds = list
                .split(',')
                .map(|t| t.trim().parse::<PredId>())
                .collect::<Result<Vec<_>>>()?;
            Ok((preds, false))
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode> {
    let p = parse_protocol(&a.target.protocol)?;
    let g = parse_graph(&a.target.graph, a.target.bs.as_deref())?;
    let rg = reachable_with_cap(&p, &g, a.cap)?;
    let outcome = verify_global_on(&p, &rg);
    let (preds, skip_inapplicable) = parse_pred_list(a.pred.as_deref())?;

    let mut all_hold = outcome.solves;
    let mut pred_json = serde_json::Map::new();
    for pred in preds {
        match check_predicate(&p, &g, &rg, pred) {
            Ok(rep) => {
                if !rep.holds {
                    all_hold = false;
                }
                let cx = rep.counterexample.map(|i| p.config_json(&rg.configs[i]));
                pred_json.insert(
                    pred.to_string(),
                    serde_json::json!({ "holds": rep.holds, "counterexample": cx }),
                );
            }
            Err(Error::InapplicablePredicate(_, why)) if skip_inapplicable => {
                pred_json.insert(
                    pred.to_string(),
                    serde_json::json!({ "applicable": false, "why": why }),
                );
            }
            Err(e) => return Err(e),
        }
    }

    let mut report = serde_json::json!({
        "protocol": p.name(),
        "graph": a.target.graph,
        "configs": rg.len(),
        "stable_count": outcome.stable_count,
        "solves": outcome.solves,
        "state_count": reachable_agent_state_count(&rg),
        "state_bound": p.agent_state_count(),
        "predicates": pred_json,
        "witness": outcome.witness.map(|w| p.config_json(&rg.configs[w])),
    });
    if p.name().starts_with("bs-weak") {
        report["note"] = serde_json::json!(
            "`solves` is decided for global fairness; weak-fairness correctness is \
             evidenced by the predicate checks and round-robin runs, not decided exhaustively"
        );
    }
    out!("{}", serde_json::to_string_pretty(&report).expect("report is valid json"));
    Ok(if all_hold { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_states(a: StatesArgs) -> Result<ExitCode> {
    let p = parse_protocol(&a.target.protocol)?;
    let g = parse_graph(&a.target.graph, a.target.bs.as_deref())?;
    let rg = reachable_with_cap(&p, &g, a.cap)?;
    out!("{:<16} {}", "protocol", p.name());
    out!("{:<16} {}", "graph", a.target.graph);
    out!("{:<16} {}", "configurations", rg.len());
    out!(
        "{:<16} {} of {} agent states",
        "reachable",
        reachable_agent_state_count(&rg),
        p.agent_state_count()
    );
    Ok(ExitCode::SUCCESS)
}

fn doubled_report_json(report: &DoubledTraceReport) -> serde_json::Value {
    serde_json::json!({
        "base_steps": report.base_trace.len(),
        "doubled_steps": report.doubled_trace.len(),
        "equivalence_held_through": report.equivalence_held_through,
        "violation": report.violation,
        "base_imbalance": report.base_imbalance,
        "final_imbalance": report.final_imbalance,
    })
}

fn cmd_counterexample(c: CxCmd) -> Result<ExitCode> {
    match c {
        CxCmd::Starve { periods } => {
            let report = starvation_run(periods)?;
            let ok = report.victim_still_initial && report.pairs_covered_per_period;
            let json = serde_json::json!({
                "periods": report.periods,
                "victim_still_initial": report.victim_still_initial,
                "pairs_covered_per_period": report.pairs_covered_per_period,
                "total_steps": report.total_steps,
                "undo_steps": report.undo_steps,
            });
            out!("{}", serde_json::to_string_pretty(&json).expect("report is valid json"));
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        CxCmd::DoubleBridge { protocol, graph, alpha, beta, seed, steps } => {
            let p = parse_protocol(&protocol)?;
            let g = parse_graph(&graph, None)?;
            let sched = Schedule::UniformRandom { seed };
            let trace = run(&p, &g, &sched, steps, StopRule::Silent)?;
            let report = replay_double_bridge(&p, &g, &trace, alpha, beta)?;
            out!(
                "{}",
                serde_json::to_string_pretty(&doubled_report_json(&report))
                    .expect("report is valid json")
            );
            Ok(if report.violation.is_none() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        CxCmd::RingDouble { protocol, seed, settle } => {
            let p = parse_protocol(&protocol)?;
            let report = ring_doubling_demo(&p, seed, settle)?;
            out!(
                "{}",
                serde_json::to_string_pretty(&doubled_report_json(&report))
                    .expect("report is valid json")
            );
            Ok(if report.violation.is_none() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn cmd_graph(a: GraphArgs) -> Result<ExitCode> {
    let g = parse_graph(&a.graph, a.bs.as_deref())?;
    let text = g.to_text();
    match &a.out {
        Some(path) => fs::write(path, text)?,
        None => out_raw!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

// Keeps the CLI surface honest without spawning the binary; the end-to-end
// examples run in tests/cli_examples.rs.
#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_specs_parse() {
        let g = parse_graph("ring:5", None).unwrap();
        assert_eq!((g.n_agents(), g.n_edges()), (5, 5));
        let g = parse_graph("star:4", Some("attach:0")).unwrap();
        assert!(g.has_bs());
        assert_eq!(g.n_agents(), 4);
        let g = parse_graph("random:6:9", Some("none")).unwrap();
        assert_eq!(g.n_agents(), 6);
        assert!(parse_graph("torus:3", None).is_err());
        assert!(parse_graph("ring:x", None).is_err());
        assert!(parse_graph("random:6", None).is_err());
        assert!(parse_graph("ring:3:4", None).is_err());
    }

    #[test]
    fn graph_file_round_trips_through_parse() {
        let g = parse_graph("line:3", Some("attach:0,2")).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.graph");
        fs::write(&path, g.to_text()).unwrap();
        let spec = format!("file:{}", path.display());
        let g2 = parse_graph(&spec, None).unwrap();
        assert_eq!(g.to_text(), g2.to_text());
        assert!(matches!(parse_graph(&spec, Some("none")), Err(Error::Parse(_))));
    }

    #[test]
    fn bs_specs_parse() {
        assert_eq!(parse_bs(None).unwrap(), BsMode::None);
        assert_eq!(parse_bs(Some("none")).unwrap(), BsMode::None);
        assert_eq!(
            parse_bs(Some("attach:0,2")).unwrap(),
            BsMode::ExtraVertex { attach: vec![0, 2] }
        );
        assert!(parse_bs(Some("at:1")).is_err());
        assert!(parse_bs(Some("attach:x")).is_err());
    }

    #[test]
    fn schedule_and_stop_specs_parse() {
        assert!(matches!(
            parse_schedule("random", Some(3)).unwrap(),
            Schedule::UniformRandom { seed: 3 }
        ));
        assert!(matches!(
            parse_schedule("roundrobin", None).unwrap(),
            Schedule::RoundRobin { perm_seed: None }
        ));
        assert!(parse_schedule("fair", None).is_err());

        let g = parse_graph("ring:3", None).unwrap();
        assert!(matches!(parse_stop(Some("silent"), &g).unwrap(), StopRule::Silent));
        assert!(matches!(parse_stop(Some("window:7"), &g).unwrap(), StopRule::Window(7)));
        assert!(matches!(parse_stop(None, &g).unwrap(), StopRule::Window(300)));
        assert!(parse_stop(Some("when-done"), &g).is_err());
    }

    #[test]
    fn scripts_parse() {
        let steps = parse_script("0 1\nbs 0  # assignment\n\n2 1\n").unwrap();
        assert_eq!(steps.len(), 3);
        assert_eq!(steps[1].initiator.to_string(), "bs");
        assert!(parse_script("0\n").is_err());
        assert!(parse_script("0 1 2\n").is_err());
    }

    #[test]
    fn pred_lists_parse() {
        let (preds, skip) = parse_pred_list(Some("LEM9, token-parity")).unwrap();
        assert_eq!(preds, vec![PredId::Lem9, PredId::TokenParity]);
        assert!(!skip);
        let (preds, skip) = parse_pred_list(Some("all")).unwrap();
        assert_eq!(preds.len(), 11);
        assert!(skip);
        assert!(parse_pred_list(Some("LEM99")).is_err());
    }

    #[test]
    fn cli_declares_all_subcommands() {
        use clap::CommandFactory;
        let cmd = Cli::command();
        let subs: Vec<&str> = cmd.get_subcommands().map(|s| s.get_name()).collect();
        for want in ["run", "verify", "states", "counterexample", "graph"] {
            assert!(subs.contains(&want), "missing subcommand {want}");
        }
        Cli::command().debug_assert();
    }
}
