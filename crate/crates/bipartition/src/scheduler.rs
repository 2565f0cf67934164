//! Schedulers, the execution loop, and trace serialization.
//!
//! All randomness in the crate flows through [`SplitMix64`], a 64-bit PRNG
//! with a fixed algorithm so that seeded results are reproducible across
//! implementations and languages. Uniform choices use rejection sampling,
//! never a bare modulo.
//!
//! Traces serialize to JSON Lines: one header record, then one record per
//! step of the form
//! `{"t":0,"i":"bs","r":"2","pre":["b_red","initial"],"post":["b_blue","red"]}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CommGraph;
use crate::model::{
    apply, check_compatible, color_counts, enabled, ordered_pairs, Configuration, Endpoint,
    Interaction, ProtocolSpec,
};

/// SplitMix64. State advances by the golden-gamma constant; output is the
/// finalized mix of the new state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

/// One raw PRNG step: `(new_state, value)`.
pub fn prng_next(state: u64) -> (u64, u64) {
    let state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (state, z ^ (z >> 31))
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        let (state, value) = prng_next(self.state);
        self.state = state;
        value
    }

    /// Uniform value in `0..bound` by rejection sampling; no modulo bias.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = ((1u128 << 64) / bound as u128 * bound as u128) as u128;
        loop {
            let v = self.next_u64();
            if (v as u128) < zone {
                return v % bound;
            }
        }
    }

    /// Fair coin: low bit of the next value.
    pub fn flip(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }
}

/// Schedule kinds. `UniformRandom` and `RoundRobin` draw from the canonical
/// ordered-pair list of the graph; `Scripted` plays back a fixed list;
/// `Adaptive` consults an adversary that may inspect the configuration.
#[derive(Debug, Clone)]
pub enum Schedule {
    UniformRandom { seed: u64 },
    /// Cycles through every ordered pair. The period is the canonical
    /// lexicographic order, or a seeded permutation of it.
    RoundRobin { perm_seed: Option<u64> },
    Scripted { steps: Vec<Interaction> },
    Adaptive(Adversary),
}

/// Adaptive adversaries. They stay weakly fair: every ordered pair still
/// occurs infinitely often.
#[derive(Debug, Clone)]
pub enum Adversary {
    /// Follows the round-robin period, but whenever the victim has left its
    /// initial state, immediately re-schedules the interaction that moved it
    /// (which undoes the swap).
    StarveVictim { victim: usize },
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::UniformRandom { .. } => write!(f, "random"),
            Schedule::RoundRobin { .. } => write!(f, "roundrobin"),
            Schedule::Scripted { .. } => write!(f, "script"),
            Schedule::Adaptive(Adversary::StarveVictim { victim }) => {
                write!(f, "starve:{victim}")
            }
        }
    }
}

/// Stateful scheduler driver for one run.
pub struct Scheduler<'a> {
    p: &'a ProtocolSpec,
    pairs: Vec<Interaction>,
    kind: DriverKind,
}

enum DriverKind {
    Uniform { rng: SplitMix64 },
    RoundRobin { period: Vec<Interaction> },
    Scripted { steps: Vec<Interaction> },
    Starve { period: Vec<Interaction>, victim: usize, cursor: usize, last: Option<Interaction> },
}

impl<'a> Scheduler<'a> {
    pub fn new(schedule: &Schedule, p: &'a ProtocolSpec, g: &CommGraph) -> Result<Scheduler<'a>> {
        let pairs = ordered_pairs(g);
        if pairs.is_empty() && !matches!(schedule, Schedule::Scripted { .. }) {
            return Err(Error::InvalidSize(
                "graph has no adjacent pairs to schedule".into(),
            ));
        }
        let kind = match schedule {
            Schedule::UniformRandom { seed } => DriverKind::Uniform { rng: SplitMix64::new(*seed) },
            Schedule::RoundRobin { perm_seed } => {
                let mut period = pairs.clone();
                if let Some(seed) = perm_seed {
                    SplitMix64::new(*seed).shuffle(&mut period);
                }
                DriverKind::RoundRobin { period }
            }
            Schedule::Scripted { steps } => DriverKind::Scripted { steps: steps.clone() },
            Schedule::Adaptive(Adversary::StarveVictim { victim }) => {
                if *victim >= g.n_agents() {
                    return Err(Error::InvalidSize(format!(
                        "victim {victim} out of range for {} agents",
                        g.n_agents()
                    )));
                }
                // The period visits every forward pair before any reverse
                // pair. In the canonical order each edge's two directions
                // fire back to back, so every swap is undone one step later
                // and no state ever travels more than one hop — the victim
                // would stay initial with nothing for the adversary to do.
                let (fwd, rev): (Vec<_>, Vec<_>) =
                    pairs.iter().partition(|i| i.is_forward());
                let period = fwd.into_iter().chain(rev).collect();
                DriverKind::Starve { period, victim: *victim, cursor: 0, last: None }
            }
        };
        Ok(Scheduler { p, pairs, kind })
    }

    /// The fixed round-robin period (canonical or permuted), when one exists.
    pub fn period(&self) -> Option<&[Interaction]> {
        match &self.kind {
            DriverKind::RoundRobin { period } => Some(period),
            _ => None,
        }
    }

    /// Picks the interaction for step `step` in configuration `c`.
    pub fn next_interaction(&mut self, c: &Configuration, step: usize) -> Result<Interaction> {
        match &mut self.kind {
            DriverKind::Uniform { rng } => {
                let idx = rng.below(self.pairs.len() as u64) as usize;
                Ok(self.pairs[idx])
            }
            DriverKind::RoundRobin { period } => Ok(period[step % period.len()]),
            DriverKind::Scripted { steps } => {
                steps.get(step).copied().ok_or(Error::ScheduleExhausted(step))
            }
            DriverKind::Starve { period, victim, cursor, last } => {
                let moved = c.agents[*victim] != self.p.agent_init();
                let pick = match (moved, *last) {
                    (true, Some(prev)) => prev,
                    _ => {
                        let i = period[*cursor % period.len()];
                        *cursor += 1;
                        i
                    }
                };
                *last = Some(pick);
                Ok(pick)
            }
        }
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// No interaction is enabled anywhere.
    Silent,
    StepBudget,
    Predicate,
    /// No agent changed output color for the window length; heuristic, not
    /// a convergence proof.
    ConvergedWindow,
    /// A scripted schedule ran out of steps.
    ScriptEnd,
}

/// Stop criterion checked before every step.
pub enum StopRule {
    /// Stop at the first silent configuration.
    Silent,
    /// Stop once no agent's output color has changed for this many
    /// consecutive steps. The result is labeled heuristic via
    /// [`StopReason::ConvergedWindow`].
    Window(usize),
    /// Stop once the predicate holds.
    Predicate {
        id: String,
        check: Box<dyn Fn(&ProtocolSpec, &Configuration) -> bool>,
    },
}

impl fmt::Debug for StopRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StopRule::Silent => write!(f, "Silent"),
            StopRule::Window(w) => write!(f, "Window({w})"),
            StopRule::Predicate { id, .. } => write!(f, "Predicate({id})"),
        }
    }
}

/// Default heuristic window: 50 periods of the ordered-pair list.
pub fn default_window(g: &CommGraph) -> usize {
    50 * ordered_pairs(g).len().max(1)
}

/// One executed step: endpoint states before and after, initiator first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub index: usize,
    pub initiator: Endpoint,
    pub responder: Endpoint,
    pub pre: (u16, u16),
    pub post: (u16, u16),
}

/// A finished run: initial and final configurations plus every step between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionTrace {
    pub initial: Configuration,
    pub steps: Vec<StepRecord>,
    pub final_config: Configuration,
    pub stop_reason: StopReason,
}

fn endpoint_state(c: &Configuration, e: Endpoint) -> u16 {
    match e {
        Endpoint::BaseStation => c.bs.expect("bs endpoint requires bs state"),
        Endpoint::Agent(i) => c.agents[i],
    }
}

/// Runs from the protocol's designated initial configuration.
pub fn run(
    p: &ProtocolSpec,
    g: &CommGraph,
    schedule: &Schedule,
    max_steps: usize,
    stop: StopRule,
) -> Result<ExecutionTrace> {
    let init = p.initial_config(g, None)?;
    run_from(p, g, &init, schedule, max_steps, stop)
}

/// Runs from an explicit initial configuration. The stop rule is checked
/// before each step, so `max_steps == 0` yields an empty trace with
/// [`StopReason::StepBudget`].
pub fn run_from(
    p: &ProtocolSpec,
    g: &CommGraph,
    init: &Configuration,
    schedule: &Schedule,
    max_steps: usize,
    stop: StopRule,
) -> Result<ExecutionTrace> {
    check_compatible(p, g)?;
    let mut sched = Scheduler::new(schedule, p, g)?;
    let mut c = init.clone();
    let mut steps = Vec::new();
    let mut stop_reason = StopReason::StepBudget;
    let mut unchanged_colors = 0usize;
    for step in 0..max_steps {
        let done = match &stop {
            StopRule::Silent => enabled(p, g, &c)?.is_empty(),
            StopRule::Window(w) => unchanged_colors >= *w,
            StopRule::Predicate { check, .. } => check(p, &c),
        };
        if done {
            stop_reason = match &stop {
                StopRule::Silent => StopReason::Silent,
                StopRule::Window(_) => StopReason::ConvergedWindow,
                StopRule::Predicate { .. } => StopReason::Predicate,
            };
            break;
        }
        let i = match sched.next_interaction(&c, step) {
            Ok(i) => i,
            Err(Error::ScheduleExhausted(_)) => {
                stop_reason = StopReason::ScriptEnd;
                break;
            }
            Err(e) => return Err(e),
        };
        let pre = (endpoint_state(&c, i.initiator), endpoint_state(&c, i.responder));
        let next = apply(p, g, &c, i)?;
        let post = (endpoint_state(&next, i.initiator), endpoint_state(&next, i.responder));
        let color_changed = c
            .agents
            .iter()
            .zip(&next.agents)
            .any(|(&a, &b)| p.color(a) != p.color(b));
        unchanged_colors = if color_changed { 0 } else { unchanged_colors + 1 };
        steps.push(StepRecord { index: step, initiator: i.initiator, responder: i.responder, pre, post });
        c = next;
    }
    Ok(ExecutionTrace { initial: init.clone(), steps, final_config: c, stop_reason })
}

impl ExecutionTrace {
    /// Re-applies every step from the initial configuration, checking each
    /// recorded pre/post pair, and returns the final configuration. Any
    /// mismatch is an incompatible trace.
    pub fn replay(&self, p: &ProtocolSpec, g: &CommGraph) -> Result<Configuration> {
        let mut c = self.initial.clone();
        for s in &self.steps {
            let i = Interaction::new(s.initiator, s.responder);
            let pre = (endpoint_state(&c, s.initiator), endpoint_state(&c, s.responder));
            if pre != s.pre {
                return Err(Error::IncompatibleTrace(format!(
                    "step {}: recorded pre-states do not match the replayed configuration",
                    s.index
                )));
            }
            c = apply(p, g, &c, i)?;
            let post = (endpoint_state(&c, s.initiator), endpoint_state(&c, s.responder));
            if post != s.post {
                return Err(Error::IncompatibleTrace(format!(
                    "step {}: recorded post-states do not match the protocol",
                    s.index
                )));
            }
        }
        if c != self.final_config {
            return Err(Error::IncompatibleTrace(
                "final configuration does not match the replayed steps".into(),
            ));
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Serializes to JSON Lines: a header record, then one record per step.
    pub fn to_jsonl(&self, p: &ProtocolSpec, graph_desc: &str, seed: Option<u64>, schedule: &str) -> String {
        let mut out = String::new();
        let initial_agents: Vec<&str> = self
            .initial
            .agents
            .iter()
            .map(|&s| p.agent_state_name(s))
            .collect();
        let mut header = serde_json::json!({
            "protocol": p.name(),
            "graph": graph_desc,
            "schedule": schedule,
            "initial": initial_agents,
            "stop_reason": self.stop_reason,
        });
        if let Some(seed) = seed {
            header["seed"] = serde_json::json!(seed);
        }
        if let Some(b) = self.initial.bs {
            header["bs"] = serde_json::json!(p.bs_state_name(b));
        }
        out.push_str(&header.to_string());
        out.push('\n');
        for s in &self.steps {
            let name = |e: Endpoint, st: u16| -> &str {
                match e {
                    Endpoint::BaseStation => p.bs_state_name(st),
                    Endpoint::Agent(_) => p.agent_state_name(st),
                }
            };
            let rec = serde_json::json!({
                "t": s.index,
                "i": s.initiator.to_string(),
                "r": s.responder.to_string(),
                "pre": [name(s.initiator, s.pre.0), name(s.responder, s.pre.1)],
                "post": [name(s.initiator, s.post.0), name(s.responder, s.post.1)],
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        out
    }

    /// Final `(reds, blues)` under the protocol's output map.
    pub fn final_counts(&self, p: &ProtocolSpec) -> (usize, usize) {
        color_counts(p, &self.final_config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, BsMode, Family};
    use crate::protocols;

    fn ring(n: usize) -> CommGraph {
        build(Family::Ring, n, BsMode::None).unwrap()
    }

    #[test]
    fn splitmix_reference_vectors() {
        // Frozen with an independent implementation of the same algorithm.
        let (s1, v1) = prng_next(0);
        assert_eq!(v1, 0xE220_A839_7B1D_CDAF);
        let (s2, v2) = prng_next(s1);
        assert_eq!(v2, 0x6E78_9E6A_A1B9_65F4);
        let (_, v3) = prng_next(s2);
        assert_eq!(v3, 0x06C4_5D18_8009_454F);

        let mut rng = SplitMix64::new(42);
        assert_eq!(rng.next_u64(), 0xBDD7_3226_2FEB_6E95);

        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        let xs: Vec<u64> = (0..100).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..100).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs[0], xs[1]);
    }

    #[test]
    fn below_is_in_range_and_deterministic() {
        let mut rng = SplitMix64::new(3);
        for bound in [1u64, 2, 3, 6, 7, 1000] {
            for _ in 0..1000 {
                assert!(rng.below(bound) < bound);
            }
        }
    }

    #[test]
    fn uniform_pick_golden_value() {
        // Frozen with an independent implementation: seed 42 on the 3-ring
        // picks ordered pairs (0,2), (0,2), (0,1), (0,1), (2,0) first.
        let p = protocols::nobs_asym4();
        let g = ring(3);
        let mut sched = Scheduler::new(&Schedule::UniformRandom { seed: 42 }, &p, &g).unwrap();
        let c = p.initial_config(&g, None).unwrap();
        let expect = [
            Interaction::agents(0, 2),
            Interaction::agents(0, 2),
            Interaction::agents(0, 1),
            Interaction::agents(0, 1),
            Interaction::agents(2, 0),
        ];
        for (step, want) in expect.into_iter().enumerate() {
            assert_eq!(sched.next_interaction(&c, step).unwrap(), want);
        }
    }

    #[test]
    fn round_robin_covers_period() {
        let p = protocols::nobs_asym4();
        let g = ring(3);
        let sched = Schedule::RoundRobin { perm_seed: None };
        let trace = run(&p, &g, &sched, 18, StopRule::Window(usize::MAX)).unwrap();
        assert_eq!(trace.len(), 18);
        let pairs = ordered_pairs(&g);
        assert_eq!(pairs.len(), 6);
        for pair in pairs {
            let count = trace
                .steps
                .iter()
                .filter(|s| s.initiator == pair.initiator && s.responder == pair.responder)
                .count();
            assert_eq!(count, 3, "each ordered pair exactly once per period");
        }
        // First period in canonical order.
        let first: Vec<Interaction> = trace.steps[..6]
            .iter()
            .map(|s| Interaction::new(s.initiator, s.responder))
            .collect();
        assert_eq!(first, ordered_pairs(&g));
    }

    #[test]
    fn permuted_round_robin_still_covers() {
        let p = protocols::nobs_asym4();
        let g = ring(3);
        let sched = Schedule::RoundRobin { perm_seed: Some(9) };
        let trace = run(&p, &g, &sched, 12, StopRule::Window(usize::MAX)).unwrap();
        for pair in ordered_pairs(&g) {
            let count = trace
                .steps
                .iter()
                .filter(|s| Interaction::new(s.initiator, s.responder) == pair)
                .count();
            assert_eq!(count, 2);
        }
    }

    #[test]
    fn scripted_schedule_ends_the_run() {
        let p = protocols::nobs_asym4();
        let g = ring(3);
        let sched = Schedule::Scripted { steps: vec![Interaction::agents(0, 1)] };
        let trace = run(&p, &g, &sched, 10, StopRule::Window(usize::MAX)).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.stop_reason, StopReason::ScriptEnd);
        // A budget no larger than the script never exhausts it.
        let sched = Schedule::Scripted { steps: vec![Interaction::agents(0, 1)] };
        let trace = run(&p, &g, &sched, 1, StopRule::Window(usize::MAX)).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.stop_reason, StopReason::StepBudget);
    }

    #[test]
    fn zero_budget_yields_empty_trace() {
        let p = protocols::nobs_asym4();
        let g = ring(3);
        let trace = run(&p, &g, &Schedule::UniformRandom { seed: 0 }, 0, StopRule::Silent).unwrap();
        assert!(trace.is_empty());
        assert_eq!(trace.initial, trace.final_config);
        assert_eq!(trace.stop_reason, StopReason::StepBudget);
    }

    #[test]
    fn asym4_ring3_stabilizes_to_2_1() {
        let p = protocols::nobs_asym4();
        let g = ring(3);
        // Never silent on an odd ring (the leftover token keeps moving), so
        // the run exhausts its budget; the color split is stable long before.
        let trace = run(&p, &g, &Schedule::UniformRandom { seed: 5 }, 20_000, StopRule::Silent).unwrap();
        assert_eq!(trace.stop_reason, StopReason::StepBudget);
        assert_eq!(trace.final_counts(&p), (2, 1));
    }

    #[test]
    fn bs_global3_star_goes_silent_balanced() {
        let p = protocols::bs_global3();
        let g = build(Family::Star, 4, BsMode::ExtraVertex { attach: vec![0] }).unwrap();
        let trace = run(&p, &g, &Schedule::UniformRandom { seed: 1 }, 100_000, StopRule::Silent).unwrap();
        assert_eq!(trace.stop_reason, StopReason::Silent);
        let (r, b) = trace.final_counts(&p);
        assert!((r as i64 - b as i64).abs() <= 1, "got ({r}, {b})");
    }

    #[test]
    fn window_stop_is_labeled_heuristic() {
        let p = protocols::nobs_asym4();
        let g = ring(3);
        let w = default_window(&g);
        assert_eq!(w, 300);
        let trace = run(&p, &g, &Schedule::UniformRandom { seed: 5 }, 100_000, StopRule::Window(w)).unwrap();
        assert_eq!(trace.stop_reason, StopReason::ConvergedWindow);
        assert_eq!(trace.final_counts(&p), (2, 1));
    }

    #[test]
    fn predicate_stop() {
        let p = protocols::nobs_asym4();
        let g = ring(4);
        let stop = StopRule::Predicate {
            id: "has-blue".into(),
            check: Box::new(|p, c| color_counts(p, c).1 > 0),
        };
        let trace = run(&p, &g, &Schedule::UniformRandom { seed: 2 }, 100_000, stop).unwrap();
        assert_eq!(trace.stop_reason, StopReason::Predicate);
        assert!(color_counts(&p, &trace.final_config).1 > 0);
    }

    #[test]
    fn traces_replay_and_are_bytewise_deterministic() {
        let p = protocols::bs_global3();
        let g = build(Family::Line, 4, BsMode::ExtraVertex { attach: vec![0, 3] }).unwrap();
        let sched = Schedule::UniformRandom { seed: 11 };
        let t1 = run(&p, &g, &sched, 50_000, StopRule::Silent).unwrap();
        let t2 = run(&p, &g, &sched, 50_000, StopRule::Silent).unwrap();
        assert_eq!(t1, t2);
        let j1 = t1.to_jsonl(&p, "line:4", Some(11), "random");
        let j2 = t2.to_jsonl(&p, "line:4", Some(11), "random");
        assert_eq!(j1.as_bytes(), j2.as_bytes());
        assert_eq!(t1.replay(&p, &g).unwrap(), t1.final_config);
    }

    #[test]
    fn jsonl_shape() {
        let p = protocols::bs_global3();
        let g = build(Family::Line, 2, BsMode::ExtraVertex { attach: vec![0] }).unwrap();
        let trace = run(&p, &g, &Schedule::RoundRobin { perm_seed: None }, 3, StopRule::Silent).unwrap();
        let jsonl = trace.to_jsonl(&p, "line:2", None, "roundrobin");
        let lines: Vec<&str> = jsonl.lines().collect();
        assert_eq!(lines.len(), 1 + trace.len());
        let header: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(header["protocol"], "bs-global3");
        assert_eq!(header["graph"], "line:2");
        assert_eq!(header["schedule"], "roundrobin");
        let first: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(first["t"], 0);
        assert_eq!(first["i"], "bs");
        assert_eq!(first["r"], "0");
        assert_eq!(first["pre"][0], "b_red");
        assert_eq!(first["post"][0], "b_blue");
        assert_eq!(first["post"][1], "red");
    }

    #[test]
    fn corrupted_trace_fails_replay() {
        let p = protocols::nobs_asym4();
        let g = ring(3);
        let mut trace = run(&p, &g, &Schedule::UniformRandom { seed: 3 }, 100, StopRule::Silent).unwrap();
        trace.steps[0].pre.0 = trace.steps[0].pre.0.wrapping_add(1);
        assert!(matches!(trace.replay(&p, &g), Err(Error::IncompatibleTrace(_))));
    }
}
