//! Simulates each protocol on a small graph and prints the run summaries.
//!
//! ```text
//! cargo run -p bipartition --example simulate
//! ```

use bipartition::graph::{build, BsMode, Family};
use bipartition::model::ProtocolSpec;
use bipartition::protocols;
use bipartition::scheduler::{default_window, run, Schedule, StopRule};
use bipartition::{CommGraph, Result};

fn show(p: &ProtocolSpec, g: &CommGraph, label: &str, sched: Schedule, stop: StopRule) -> Result<()> {
    let trace = run(p, g, &sched, 1_000_000, stop)?;
    let (r, b) = trace.final_counts(p);
    println!(
        "{:<14} on {:<8} {:>6} steps  stop={:<16?} final {}  (red {r} / blue {b})",
        p.name(),
        label,
        trace.len(),
        trace.stop_reason,
        p.render(&trace.final_config),
    );
    Ok(())
}

fn main() -> Result<()> {
    // The station protocol colors agents one by one; silence means every
    // agent is colored and the split is settled.
    let p = protocols::bs_global3();
    let g = build(Family::Star, 4, BsMode::ExtraVertex { attach: vec![0] })?;
    show(&p, &g, "star:4", Schedule::UniformRandom { seed: 1 }, StopRule::Silent)?;

    // Depth-bounded weak-fairness protocol under a permuted round-robin.
    let p = protocols::bs_weak_3p1(8)?;
    let g = build(Family::Line, 6, BsMode::ExtraVertex { attach: vec![0] })?;
    show(&p, &g, "line:6", Schedule::RoundRobin { perm_seed: Some(7) }, StopRule::Silent)?;

    // Its cyclic-depth sibling, fine on the 4-ring (no cycle length is a
    // multiple of 3).
    let p = protocols::bs_weak_mod_l(3)?;
    let g = build(Family::Ring, 4, BsMode::ExtraVertex { attach: vec![0] })?;
    show(&p, &g, "ring:4", Schedule::RoundRobin { perm_seed: None }, StopRule::Silent)?;

    // The station-free protocols never go silent on odd rings — one token
    // keeps wandering after the split settles — so stop on a quiet window.
    let p = protocols::nobs_asym4();
    let g = build(Family::Ring, 5, BsMode::None)?;
    let w = default_window(&g);
    show(&p, &g, "ring:5", Schedule::UniformRandom { seed: 5 }, StopRule::Window(w))?;

    let p = protocols::nobs_sym5();
    let g = build(Family::Complete, 6, BsMode::None)?;
    let w = default_window(&g);
    show(&p, &g, "complete:6", Schedule::UniformRandom { seed: 5 }, StopRule::Window(w))?;

    // A scripted prefix, step by step: the station colors agent 0 red, the
    // color is swapped down the line, and the station colors agent 0 again.
    let p = protocols::bs_global3();
    let g = build(Family::Line, 2, BsMode::ExtraVertex { attach: vec![0] })?;
    let script = Schedule::Scripted {
        steps: bipartition::model::ordered_pairs(&g),
    };
    let trace = run(&p, &g, &script, 1_000_000, StopRule::Silent)?;
    println!("\none canonical period of {} on line:2, step by step:", p.name());
    let mut c = trace.initial.clone();
    println!("    {}", p.render(&c));
    for s in &trace.steps {
        c = bipartition::model::apply(&p, &g, &c, bipartition::Interaction::new(s.initiator, s.responder))?;
        println!("    {} -> {:<2} {}", s.initiator, s.responder.to_string(), p.render(&c));
    }
    Ok(())
}
