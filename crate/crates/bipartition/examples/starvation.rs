//! The weak-fairness starvation adversary, in action.
//!
//! The three-state station protocol needs global fairness. Under weak
//! fairness — every pair interacts infinitely often — an adaptive scheduler
//! can keep one agent unassigned forever: whenever a swap hands the victim a
//! color, the adversary schedules the same pair again and takes it back.
//! Every ordered pair still occurs in every period.
//!
//! ```text
//! cargo run -p bipartition --example starvation
//! ```

use bipartition::counterexamples::starvation_run;
use bipartition::graph::{build, BsMode, Family};
use bipartition::protocols;
use bipartition::scheduler::{run, Schedule, StopReason, StopRule};
use bipartition::Result;

fn main() -> Result<()> {
    for periods in [1usize, 10, 100] {
        let rep = starvation_run(periods)?;
        println!(
            "{periods:>4} periods: victim still initial: {:<5}  every pair ≥ {periods}×: {:<5}  \
             {} steps of which {} undid a swap",
            rep.victim_still_initial, rep.pairs_covered_per_period, rep.total_steps, rep.undo_steps,
        );
    }

    // Contrast: the same protocol, graph, and victim under an ordinary
    // uniform-random scheduler. The victim is colored almost immediately —
    // starvation is the adversary's doing, not the protocol's.
    let p = protocols::bs_global3();
    let g = build(Family::Line, 3, BsMode::ExtraVertex { attach: vec![0] })?;
    let stop = StopRule::Predicate {
        id: "victim-left-initial".into(),
        check: Box::new(|p, c| c.agents[2] != p.agent_init()),
    };
    let trace = run(&p, &g, &Schedule::UniformRandom { seed: 7 }, 100_000, stop)?;
    assert_eq!(trace.stop_reason, StopReason::Predicate);
    println!(
        "\nuniform random (seed 7) on the same instance: victim colored after {} steps",
        trace.len()
    );
    Ok(())
}
