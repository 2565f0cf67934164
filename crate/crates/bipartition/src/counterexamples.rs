//! Runnable constructions behind the impossibility arguments: the starvation
//! adversary that defeats the base-station protocol under weak fairness, and
//! the two trace-doubling replays that turn a balanced execution into an
//! unbalanced one on a doubled graph.
//!
//! The doubling replays never find an equivalence violation for any protocol
//! and any base trace — the copies run the same rules on identical states —
//! so a reported violation indicates an engine bug, not a protocol property.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{build, double_bridge, ring_interleave_double, BsMode, CommGraph, Family};
use crate::model::{
    apply, imbalance, ordered_pairs, Configuration, Endpoint, Interaction, ProtocolSpec,
};
use crate::protocols;
use crate::scheduler::{
    run, Adversary, ExecutionTrace, Schedule, Scheduler, StepRecord, StopReason, StopRule,
};

/// Outcome of the starvation adversary run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarvationReport {
    /// Full periods of the weakly-fair schedule that were executed.
    pub periods: usize,
    /// Whether the victim sits in its designated initial state at the end.
    pub victim_still_initial: bool,
    /// Whether every ordered pair occurred at least once per period.
    pub pairs_covered_per_period: bool,
    pub total_steps: usize,
    /// Steps spent undoing a swap that had moved the victim.
    pub undo_steps: usize,
}

/// Runs the adaptive starvation adversary against `bs_global3` on the 3-line
/// with the base station attached at agent 0, victim agent 2, for `p_len`
/// full round-robin periods.
///
/// The adversary follows a fixed period (forward pairs first, then reverse
/// pairs, so colors actually travel down the line), but whenever an
/// interaction swaps the victim out of its initial state, it schedules the
/// same pair again immediately, undoing the swap. Every ordered pair still
/// occurs in every period, so the schedule is weakly fair — yet the victim
/// is back in its initial state at every period boundary, and the protocol
/// never finishes assigning colors.
pub fn starvation_run(p_len: usize) -> Result<StarvationReport> {
    if p_len < 1 {
        return Err(Error::InvalidSize("need at least one period".into()));
    }
    let p = protocols::bs_global3();
    let g = build(Family::Line, 3, BsMode::ExtraVertex { attach: vec![0] })?;
    let victim = 2usize;
    let pairs = ordered_pairs(&g);
    let period_len = pairs.len();

    let mut sched = Scheduler::new(&Schedule::Adaptive(Adversary::StarveVictim { victim }), &p, &g)?;
    let mut c = p.initial_config(&g, None)?;
    let init_state = p.agent_init();

    let mut counts: HashMap<Interaction, usize> = HashMap::new();
    let mut cursor_advances = 0usize;
    let mut undo_steps = 0usize;
    let mut total_steps = 0usize;
    let mut last: Option<Interaction> = None;
    // Each period is period_len scheduled pairs plus at most one undo per
    // swap; anything past this budget means the undo stopped restoring.
    let budget = p_len * period_len * 3 + 2;

    while cursor_advances < p_len * period_len || c.agents[victim] != init_state {
        if total_steps >= budget {
            break;
        }
        let moved = c.agents[victim] != init_state;
        let i = sched.next_interaction(&c, total_steps)?;
        if moved {
            debug_assert_eq!(Some(i), last, "undo must repeat the moving pair");
            undo_steps += 1;
        } else {
            cursor_advances += 1;
        }
        last = Some(i);
        c = apply(&p, &g, &c, i)?;
        *counts.entry(i).or_default() += 1;
        total_steps += 1;
    }

    let pairs_covered_per_period =
        pairs.iter().all(|i| counts.get(i).copied().unwrap_or(0) >= p_len);
    Ok(StarvationReport {
        periods: p_len,
        victim_still_initial: c.agents[victim] == init_state,
        pairs_covered_per_period,
        total_steps,
        undo_steps,
    })
}

/// Outcome of a trace-doubling replay: the base execution, its doubled
/// counterpart, and how long the copy-equivalence held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledTraceReport {
    pub base_trace: ExecutionTrace,
    pub doubled_trace: ExecutionTrace,
    /// Doubled steps after which both copies still mirrored the base
    /// configuration agent-for-agent.
    pub equivalence_held_through: usize,
    /// First doubled step at which the equivalence broke, if it ever did.
    pub violation: Option<usize>,
    /// Signed #red − #blue of the base trace's final configuration.
    pub base_imbalance: i64,
    /// Signed #red − #blue of the doubled final configuration.
    pub final_imbalance: i64,
}

/// Replays `trace` (produced by `p` on `g`) on the doubled bridge graph:
/// each base step (x, y) becomes (x, y) followed by (x+n, y+n). After every
/// such pair, agents x and x+n must both match the base execution's agent x.
///
/// The bridge edge keeps the doubled graph connected but is never scheduled,
/// so the two copies evolve in lockstep and the doubled final configuration
/// has exactly twice the base imbalance — a balanced base run of ±1 doubles
/// to ±2, which no uniform bipartition allows.
pub fn replay_double_bridge(
    p: &ProtocolSpec,
    g: &CommGraph,
    trace: &ExecutionTrace,
    alpha: usize,
    beta: usize,
) -> Result<DoubledTraceReport> {
    if p.has_bs() {
        return Err(Error::NotSupported(
            "trace doubling needs a protocol without a base station".into(),
        ));
    }
    trace.replay(p, g)?;
    let doubled = double_bridge(g, alpha, beta)?;
    let n = g.n_agents();
    replay_doubled(p, g, &doubled, trace, |x, y| [(x, y), (x + n, y + n)])
}

/// Runs `p` on the 3-ring under a seeded round-robin schedule for up to
/// `settle_steps`, then replays the trace on the interleaved 6-ring using the
/// two-rule step mapping: a step touching agent 0 duplicates to (x, y) then
/// (x+3, y+3); a step between agents 1 and 2 maps to (x, y+3) then (x+3, y).
///
/// Both images are edges of the 6-ring, every agent pair {i, i+3} mirrors
/// base agent i throughout, and the final imbalance doubles. The 6-ring has
/// no bridge edge at all, so the doubling argument survives on 2-connected
/// graphs too.
pub fn ring_doubling_demo(
    p: &ProtocolSpec,
    seed: u64,
    settle_steps: usize,
) -> Result<DoubledTraceReport> {
    if p.has_bs() {
        return Err(Error::NotSupported(
            "trace doubling needs a protocol without a base station".into(),
        ));
    }
    let g = build(Family::Ring, 3, BsMode::None)?;
    let sched = Schedule::RoundRobin { perm_seed: Some(seed) };
    let trace = run(p, &g, &sched, settle_steps, StopRule::Silent)?;
    let doubled = ring_interleave_double();
    replay_doubled(p, &g, &doubled, &trace, |x, y| {
        if (x.min(y), x.max(y)) == (1, 2) {
            [(x, y + 3), (x + 3, y)]
        } else {
            [(x, y), (x + 3, y + 3)]
        }
    })
}

fn replay_doubled(
    p: &ProtocolSpec,
    g: &CommGraph,
    doubled: &CommGraph,
    base: &ExecutionTrace,
    map_step: impl Fn(usize, usize) -> [(usize, usize); 2],
) -> Result<DoubledTraceReport> {
    let n = g.n_agents();
    let initial = Configuration { agents: base.initial.agents.repeat(2), bs: None };
    let mut dc = initial.clone();
    let mut bc = base.initial.clone();
    let mut steps: Vec<StepRecord> = Vec::new();
    let mut held = 0usize;
    let mut violation: Option<usize> = None;

    for s in &base.steps {
        let (x, y) = match (s.initiator, s.responder) {
            (Endpoint::Agent(x), Endpoint::Agent(y)) => (x, y),
            _ => {
                return Err(Error::IncompatibleTrace(
                    "base trace schedules the base station".into(),
                ))
            }
        };
        bc = apply(p, g, &bc, Interaction::agents(x, y))?;
        for (i2, r2) in map_step(x, y) {
            let pre = (dc.agents[i2], dc.agents[r2]);
            dc = apply(p, doubled, &dc, Interaction::agents(i2, r2))?;
            steps.push(StepRecord {
                index: steps.len(),
                initiator: Endpoint::Agent(i2),
                responder: Endpoint::Agent(r2),
                pre,
                post: (dc.agents[i2], dc.agents[r2]),
            });
        }
        if violation.is_none() {
            let mirrored = (0..n)
                .all(|v| dc.agents[v] == bc.agents[v] && dc.agents[v + n] == bc.agents[v]);
            if mirrored {
                held = steps.len();
            } else {
                violation = Some(steps.len());
            }
        }
    }

    let doubled_trace = ExecutionTrace {
        initial,
        steps,
        final_config: dc.clone(),
        stop_reason: StopReason::StepBudget,
    };
    Ok(DoubledTraceReport {
        base_trace: base.clone(),
        doubled_trace,
        equivalence_held_through: held,
        violation,
        base_imbalance: imbalance(p, &base.final_config),
        final_imbalance: imbalance(p, &dc),
    })
}
