//! Simulation and verification toolkit for uniform-bipartition population
//! protocols on arbitrary connected communication graphs.
//!
//! A population protocol is a network of anonymous finite-state agents that
//! update state through pairwise interactions chosen by a scheduler. The
//! protocols built in here divide the agents into a red and a blue group
//! whose sizes differ by at most one, under several combinations of
//! assumptions: with or without a distinguished base station, under global or
//! only weak fairness, with designated or arbitrary initial states.
//!
//! What lives where:
//!
//! * [`graph`] — communication graphs: standard families, seeded random
//!   connected graphs, a text format, exhaustive enumerators for small sizes,
//!   and the doubled-graph gadgets the impossibility replays run on.
//! * [`model`] — protocol specifications (total transition tables over
//!   ordered pairs plus per-state metadata), configurations, interactions,
//!   and rule surgery for mutation testing.
//! * [`protocols`] — the five bipartition protocols: `bs-global3`,
//!   `bs-weak3p1:P`, `bs-weak-mod:l`, `nobs-asym4`, `nobs-sym5`.
//! * [`scheduler`] — seeded uniform-random, round-robin, scripted, and
//!   adaptive adversarial schedulers; execution traces; JSONL serialization
//!   and replay.
//! * [`verifier`] — explicit-state reachability, stability certificates, the
//!   global-fairness decision procedure, and the invariant predicate catalog
//!   (LEM1 … TOKEN-PARITY).
//! * [`counterexamples`] — the starvation adversary and the two
//!   trace-doubling replays that realize the impossibility arguments.
//! * [`cli`] — the `bipartition` binary: `run`, `verify`, `states`,
//!   `counterexample`, `graph`.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run -p bipartition --example simulate
//! cargo run -p bipartition --example verify_protocols
//! cargo run -p bipartition --example lemma_predicates
//! cargo run -p bipartition --example starvation
//! cargo run -p bipartition --example ring_doubling
//! cargo run -p bipartition --example graph_gadgets
//! ```
//!
//! Quick taste — check that the four-state protocol solves bipartition on a
//! small ring and that its token-balance invariant holds everywhere:
//!
//! ```
//! use bipartition::graph::{build, BsMode, Family};
//! use bipartition::verifier::{check_predicate, reachable, verify_global_on, PredId};
//!
//! let p = bipartition::protocols::nobs_asym4();
//! let g = build(Family::Ring, 4, BsMode::None)?;
//! let rg = reachable(&p, &g)?;
//! assert!(verify_global_on(&p, &rg).solves);
//! assert!(check_predicate(&p, &g, &rg, PredId::Lem9)?.holds);
//! # Ok::<(), bipartition::Error>(())
//! ```

pub mod cli;
pub mod counterexamples;
pub mod error;
pub mod graph;
pub mod model;
pub mod protocols;
pub mod scheduler;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{build, BsMode, CommGraph, Family};
pub use model::{Color, Configuration, Endpoint, Interaction, ProtocolSpec};
pub use scheduler::{run, ExecutionTrace, Schedule, StopReason, StopRule};
pub use verifier::{reachable, verify_global, PredId, ReachabilityGraph};
