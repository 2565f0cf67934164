//! The doubling replays behind "no station-free protocol solves uniform
//! bipartition under weak fairness".
//!
//! Run a protocol on a base graph until the split settles, then replay the
//! trace on a graph made of two copies: each base step becomes two steps,
//! one per copy. The copies stay in lockstep with the base run — an agent
//! and its twin always share the base agent's state — so the final
//! imbalance doubles. A base split of ±1 becomes ±2 on the doubled graph,
//! which no uniform bipartition allows, and the doubled schedule is as
//! weakly fair as the base one.
//!
//! Two gadgets: a bridge edge joining the copies (never scheduled), and the
//! interleaved 6-ring, which needs no bridge at all.
//!
//! ```text
//! cargo run -p bipartition --example ring_doubling
//! ```

use bipartition::counterexamples::{replay_double_bridge, ring_doubling_demo};
use bipartition::graph::{build, BsMode, Family};
use bipartition::protocols;
use bipartition::scheduler::{run, Schedule, StopRule};
use bipartition::Result;

fn main() -> Result<()> {
    for p in [protocols::nobs_asym4(), protocols::nobs_sym5()] {
        let rep = ring_doubling_demo(&p, 0, 600)?;
        println!(
            "{:<10} 3-ring -> interleaved 6-ring: base imbalance {:+}, doubled {:+}, \
             equivalence held through all {} doubled steps (violations: {:?})",
            p.name(),
            rep.base_imbalance,
            rep.final_imbalance,
            rep.equivalence_held_through,
            rep.violation,
        );
    }

    // The bridge variant works from any recorded trace on any station-free
    // graph; here a 50-step random prefix on the 3-ring.
    let p = protocols::nobs_asym4();
    let g = build(Family::Ring, 3, BsMode::None)?;
    let trace = run(&p, &g, &Schedule::UniformRandom { seed: 13 }, 50, StopRule::Window(usize::MAX))?;
    let rep = replay_double_bridge(&p, &g, &trace, 0, 1)?;
    println!(
        "\n{} bridge replay: {} base steps -> {} doubled steps, imbalance {:+} -> {:+}",
        p.name(),
        rep.base_trace.len(),
        rep.doubled_trace.len(),
        rep.base_imbalance,
        rep.final_imbalance,
    );

    // Not every round-robin permutation settles the odd ring to ±1 — weak
    // fairness allows runs that keep flipping forever. The report is honest
    // about what the base run actually reached.
    let p = protocols::nobs_sym5();
    let rep = ring_doubling_demo(&p, 21, 600)?;
    println!(
        "\n{} with the seed-21 permutation never settles: base imbalance {:+} (doubled {:+})",
        p.name(),
        rep.base_imbalance,
        rep.final_imbalance,
    );
    Ok(())
}
