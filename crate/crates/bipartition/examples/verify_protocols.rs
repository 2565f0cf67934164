//! Model-checks every protocol on its home ground: exhaustive reachability,
//! stability census, and the global-fairness verdict.
//!
//! ```text
//! cargo run -p bipartition --example verify_protocols
//! ```

use bipartition::graph::{build, BsMode, Family};
use bipartition::model::ProtocolSpec;
use bipartition::protocols;
use bipartition::verifier::{reachable, reachable_agent_state_count, verify_global_on};
use bipartition::{CommGraph, Result};

fn report(p: &ProtocolSpec, g: &CommGraph, label: &str) -> Result<()> {
    let rg = reachable(p, g)?;
    let v = verify_global_on(p, &rg);
    println!(
        "{:<14} {:<8} {:>5} configs  {:>2} stable  states {}/{}  solves: {}",
        p.name(),
        label,
        rg.len(),
        v.stable_count,
        reachable_agent_state_count(&rg),
        p.agent_state_count(),
        v.solves,
    );
    if let Some(w) = v.witness {
        println!("{:<23} witness with no stable successor: {}", "", p.render(&rg.configs[w]));
    }
    Ok(())
}

fn main() -> Result<()> {
    report(&protocols::bs_global3(), &build(Family::Ring, 4, BsMode::ExtraVertex { attach: vec![0] })?, "ring:4")?;
    report(&protocols::bs_weak_3p1(4)?, &build(Family::Line, 4, BsMode::ExtraVertex { attach: vec![0] })?, "line:4")?;
    report(&protocols::bs_weak_mod_l(3)?, &build(Family::Star, 5, BsMode::ExtraVertex { attach: vec![0, 2] })?, "star:5")?;
    report(&protocols::nobs_asym4(), &build(Family::Ring, 5, BsMode::None)?, "ring:5")?;
    report(&protocols::nobs_sym5(), &build(Family::Complete, 4, BsMode::None)?, "complete:4")?;

    // The negative case the checker proves rather than assumes: no symmetric
    // protocol can split two agents — the initial deadlocks into phase
    // flipping, and no reachable configuration is stable.
    println!();
    report(&protocols::nobs_sym5(), &build(Family::Line, 2, BsMode::None)?, "line:2")?;

    // Anything beyond the cap is refused up front instead of thrashing:
    // 25 agent states on 8 agents is ~1.5 * 10^11 candidate configurations.
    let p = protocols::bs_weak_3p1(8)?;
    let g = build(Family::Ring, 8, BsMode::ExtraVertex { attach: vec![0] })?;
    match reachable(&p, &g) {
        Err(e) => println!("\n{} on ring:8 -> {e}", p.name()),
        Ok(_) => unreachable!("the a-priori bound exceeds the default cap"),
    }
    Ok(())
}
