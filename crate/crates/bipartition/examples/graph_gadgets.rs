//! Tour of the graph toolbox: families, the text format, the proof gadgets,
//! the mod-l cycle condition, and the exhaustive enumerators.
//!
//! ```text
//! cargo run -p bipartition --example graph_gadgets
//! ```

use bipartition::graph::{
    build, connected_bs_graphs, connected_graphs, double_bridge, quad_clique,
    ring_interleave_double, violates_mod_l_condition, BsMode, Family,
};
use bipartition::Result;

fn main() -> Result<()> {
    // Families, with and without the extra station vertex.
    let ring = build(Family::Ring, 5, BsMode::None)?;
    let star = build(Family::Star, 4, BsMode::ExtraVertex { attach: vec![0] })?;
    let rand = build(Family::RandomConnected { seed: 9 }, 6, BsMode::None)?;
    println!("ring:5      {} agents, {} edges", ring.n_agents(), ring.n_edges());
    println!("star:4+bs   {} agents, {} edges, bs at {:?}", star.n_agents(), star.n_edges(), star.bs_edges().collect::<Vec<_>>());
    println!("random:6:9  {} agents, {} edges", rand.n_agents(), rand.n_edges());

    // The text format round-trips; this is what the `graph` subcommand emits.
    println!("\nstar:4+bs in the text format:\n{}", star.to_text());

    // Proof gadgets. double_bridge joins two copies with one extra edge;
    // quad_clique wires four copies through a 4-clique of representatives;
    // the interleaved 6-ring splices two 3-rings into a single cycle.
    let bridged = double_bridge(&ring, 0, 1)?;
    println!("double_bridge(ring:5, 0, 1)  {} agents, {} edges", bridged.n_agents(), bridged.n_edges());
    let quad = quad_clique(&ring, 2)?;
    println!("quad_clique(ring:5, rep 2)   {} agents, {} edges", quad.n_agents(), quad.n_edges());
    let six = ring_interleave_double();
    println!("ring_interleave_double()     {} agents, edges {:?}", six.n_agents(), six.edges().collect::<Vec<_>>());

    // The cyclic-depth protocol tolerates a cycle only if its length is not
    // a multiple of l. Rings make the condition concrete.
    println!();
    for n in 3..=9 {
        let g = build(Family::Ring, n, BsMode::ExtraVertex { attach: vec![0] })?;
        let bad = violates_mod_l_condition(&g, 3)?;
        println!("ring:{n} + bs  {}", if bad { "violates the mod-3 condition" } else { "ok for mod-3 depths" });
    }

    // Exhaustive enumeration backs the small-size sweeps.
    println!();
    for n in 1..=5 {
        println!("connected graphs on {n} agents: {}", connected_graphs(n)?.len());
    }
    for n in 1..=3 {
        println!("connected station graphs on {n} agents: {}", connected_bs_graphs(n)?.len());
    }
    Ok(())
}
