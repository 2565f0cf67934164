//! Explicit-state model checking: reachability, stability, correctness under
//! global fairness, and the invariant predicates the protocols are built
//! around.
//!
//! Configurations are enumerated explicitly (no symmetry reduction: agents on
//! an arbitrary graph are not interchangeable), so everything here is meant
//! for desk-scale instances. [`reachable_with_cap`] refuses up front when the
//! a-priori bound `|Q|^n · |Q_bs|` exceeds the cap.

use std::collections::{HashMap, VecDeque};

use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::graph::CommGraph;
use crate::model::{
    apply, check_compatible, ordered_pairs, Color, Configuration, Depth, DepthMode, Endpoint,
    Interaction, ProtocolSpec,
};

/// Default cap on the a-priori configuration-space bound.
pub const DEFAULT_STATE_CAP: u64 = 50_000_000;

/// Strongly-connected-component partition of a reachability graph.
#[derive(Debug, Clone)]
pub struct SccPartition {
    /// Component id of each configuration.
    pub comp_of: Vec<usize>,
    /// Members of each component.
    pub comps: Vec<Vec<usize>>,
    /// Components with no edge leaving them. Globally fair executions end up
    /// cycling inside exactly one of these.
    pub terminal: Vec<bool>,
}

/// The full reachable configuration space of a protocol on a graph, with the
/// non-null successor relation and its SCC partition.
///
/// For protocols whose base station starts in an arbitrary state, the set is
/// the union over every base-station initial state; `initials` then holds one
/// entry per start.
#[derive(Debug, Clone)]
pub struct ReachabilityGraph {
    pub configs: Vec<Configuration>,
    index: HashMap<Configuration, usize>,
    /// Deduplicated successor lists; every edge is some ordered pair's
    /// non-null transition.
    pub successors: Vec<Vec<usize>>,
    pub initials: Vec<usize>,
    pub sccs: SccPartition,
}

impl ReachabilityGraph {
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn index_of(&self, c: &Configuration) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Indices reachable from `start` (including `start` itself).
    pub fn forward_closure(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            for &j in &self.successors[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen
    }
}

/// BFS over all reachable configurations with the default cap.
pub fn reachable(p: &ProtocolSpec, g: &CommGraph) -> Result<ReachabilityGraph> {
    reachable_with_cap(p, g, DEFAULT_STATE_CAP)
}

/// BFS over all reachable configurations, refusing when the a-priori bound
/// `|Q|^n · |Q_bs|` exceeds `cap`. The bound is checked before any expansion,
/// so the call fails fast rather than exhausting memory.
pub fn reachable_with_cap(p: &ProtocolSpec, g: &CommGraph, cap: u64) -> Result<ReachabilityGraph> {
    check_compatible(p, g)?;
    let mut bound: u128 = 1;
    for _ in 0..g.n_agents() {
        bound = bound.saturating_mul(p.agent_state_count() as u128);
    }
    if p.has_bs() {
        bound = bound.saturating_mul(p.bs_state_count() as u128);
    }
    if bound > cap as u128 {
        return Err(Error::StateSpaceTooLarge { bound, cap });
    }

    let pairs = ordered_pairs(g);
    let mut configs: Vec<Configuration> = Vec::new();
    let mut index: HashMap<Configuration, usize> = HashMap::new();
    let mut successors: Vec<Vec<usize>> = Vec::new();
    let mut initials: Vec<usize> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let starts: Vec<Configuration> = if p.has_bs() {
        p.bs_initial_states()
            .into_iter()
            .map(|b| p.initial_config(g, Some(b)))
            .collect::<Result<_>>()?
    } else {
        vec![p.initial_config(g, None)?]
    };
    for c in starts {
        let idx = match index.get(&c) {
            Some(&i) => i,
            None => {
                let i = configs.len();
                index.insert(c.clone(), i);
                configs.push(c);
                successors.push(Vec::new());
                queue.push_back(i);
                i
            }
        };
        if !initials.contains(&idx) {
            initials.push(idx);
        }
    }

    while let Some(i) = queue.pop_front() {
        let c = configs[i].clone();
        let mut succ: Vec<usize> = Vec::new();
        for &pair in &pairs {
            let c2 = apply(p, g, &c, pair)?;
            if c2 == c {
                continue;
            }
            let j = match index.get(&c2) {
                Some(&j) => j,
                None => {
                    let j = configs.len();
                    index.insert(c2.clone(), j);
                    configs.push(c2);
                    successors.push(Vec::new());
                    queue.push_back(j);
                    j
                }
            };
            if !succ.contains(&j) {
                succ.push(j);
            }
        }
        succ.sort_unstable();
        successors[i] = succ;
    }

    let sccs = scc_partition(&successors);
    Ok(ReachabilityGraph { configs, index, successors, initials, sccs })
}

fn scc_partition(successors: &[Vec<usize>]) -> SccPartition {
    let mut pg: DiGraph<(), ()> = DiGraph::with_capacity(successors.len(), 0);
    for _ in 0..successors.len() {
        pg.add_node(());
    }
    for (i, succ) in successors.iter().enumerate() {
        for &j in succ {
            pg.add_edge(NodeIndex::new(i), NodeIndex::new(j), ());
        }
    }
    let comps: Vec<Vec<usize>> = petgraph::algo::tarjan_scc(&pg)
        .into_iter()
        .map(|comp| comp.into_iter().map(|n| n.index()).collect())
        .collect();
    let mut comp_of = vec![0usize; successors.len()];
    for (k, comp) in comps.iter().enumerate() {
        for &i in comp {
            comp_of[i] = k;
        }
    }
    let mut terminal = vec![true; comps.len()];
    for (i, succ) in successors.iter().enumerate() {
        for &j in succ {
            if comp_of[j] != comp_of[i] {
                terminal[comp_of[i]] = false;
            }
        }
    }
    SccPartition { comp_of, comps, terminal }
}

/// Witness that a configuration is stable: the color each agent keeps across
/// everything reachable from it, with the balance bound satisfied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityCertificate {
    pub partition: Vec<Color>,
    pub balanced: bool,
}

/// Decides stability of one configuration: every agent keeps one color across
/// the full forward closure, and the resulting partition sizes differ by at
/// most one. Returns the certificate, or nothing if either part fails.
///
/// This is the per-configuration closure reading of stability: the partition
/// is induced by the configuration itself and must persist along every
/// reachable future.
pub fn is_stable(
    p: &ProtocolSpec,
    rg: &ReachabilityGraph,
    idx: usize,
) -> Option<StabilityCertificate> {
    let n = rg.configs[idx].agents.len();
    let seen = rg.forward_closure(idx);
    let partition: Vec<Color> = rg.configs[idx].agents.iter().map(|&s| p.color(s)).collect();
    for (i, &in_closure) in seen.iter().enumerate() {
        if !in_closure {
            continue;
        }
        for v in 0..n {
            if p.color(rg.configs[i].agents[v]) != partition[v] {
                return None;
            }
        }
    }
    let reds = partition.iter().filter(|&&c| c == Color::Red).count() as i64;
    let balanced = (reds - (n as i64 - reds)).abs() <= 1;
    if !balanced {
        return None;
    }
    Some(StabilityCertificate { partition, balanced })
}

/// Flags every configuration that is stable, in one pass over the SCC
/// condensation instead of one closure per configuration.
///
/// Stability only depends on the component: the forward closure of any
/// configuration is its component plus all descendant components, so we
/// union per-agent color sets bottom-up over the condensation and accept
/// components whose union is a single color per agent with balanced counts.
pub fn stable_flags(p: &ProtocolSpec, rg: &ReachabilityGraph) -> Vec<bool> {
    let n_comps = rg.sccs.comps.len();
    let n = rg.configs.first().map_or(0, |c| c.agents.len());
    const RED: u8 = 1;
    const BLUE: u8 = 2;

    // Distinct successor components of each component.
    let mut comp_succ: Vec<Vec<usize>> = vec![Vec::new(); n_comps];
    for (i, succ) in rg.successors.iter().enumerate() {
        let ci = rg.sccs.comp_of[i];
        for &j in succ {
            let cj = rg.sccs.comp_of[j];
            if cj != ci && !comp_succ[ci].contains(&cj) {
                comp_succ[ci].push(cj);
            }
        }
    }

    // Per-agent color masks over the component and all its descendants,
    // memoized by iterative post-order DFS (no reliance on the order the SCC
    // algorithm emits components in).
    let mut masks: Vec<Option<Vec<u8>>> = vec![None; n_comps];
    for root in 0..n_comps {
        if masks[root].is_some() {
            continue;
        }
        let mut stack = vec![(root, false)];
        while let Some((k, expanded)) = stack.pop() {
            if masks[k].is_some() {
                continue;
            }
            if !expanded {
                stack.push((k, true));
                for &s in &comp_succ[k] {
                    if masks[s].is_none() {
                        stack.push((s, false));
                    }
                }
                continue;
            }
            let mut mask = vec![0u8; n];
            for &i in &rg.sccs.comps[k] {
                for (v, &s) in rg.configs[i].agents.iter().enumerate() {
                    mask[v] |= match p.color(s) {
                        Color::Red => RED,
                        Color::Blue => BLUE,
                    };
                }
            }
            for &s in &comp_succ[k] {
                let sub = masks[s].as_ref().expect("post-order: children first");
                for (m, &b) in mask.iter_mut().zip(sub) {
                    *m |= b;
                }
            }
            masks[k] = Some(mask);
        }
    }

    let mut comp_stable = vec![false; n_comps];
    for k in 0..n_comps {
        let mask = masks[k].as_ref().unwrap();
        if mask.iter().any(|&m| m == RED | BLUE) {
            continue;
        }
        let reds = mask.iter().filter(|&&m| m == RED).count() as i64;
        comp_stable[k] = (reds - (n as i64 - reds)).abs() <= 1;
    }

    (0..rg.len()).map(|i| comp_stable[rg.sccs.comp_of[i]]).collect()
}

/// Verdict of the global-fairness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub solves: bool,
    /// A reachable configuration from which no stable configuration is
    /// reachable, when `solves` is false.
    pub witness: Option<usize>,
    /// Number of stable configurations in the reachable set.
    pub stable_count: usize,
}

/// Decides whether the protocol solves uniform bipartition under global
/// fairness on this graph: true iff every reachable configuration can reach a
/// stable one.
///
/// Why this reduction is exact, in both directions:
///
/// * In a globally fair execution the set `I` of configurations occurring
///   infinitely often is closed under reachability, and any two of its
///   members reach each other through the execution itself (between an
///   occurrence of `C` and a later occurrence of `C'` the executed steps form
///   a path). So `I` is exactly one terminal SCC of the reachability graph.
///
/// * If every reachable configuration can reach a stable one, then for any
///   globally fair execution pick `C ∈ I`; some stable `S` is reachable from
///   `C`, closure puts `S ∈ I`, so the execution actually reaches `S`. From
///   there every future configuration preserves the balanced partition, i.e.
///   the execution stabilizes: the protocol solves the problem.
///
/// * Conversely, if some reachable `C` cannot reach any stable
///   configuration, extend a path to `C` into a globally fair execution
///   (always possible on a finite space: keep enumerating all currently
///   reachable configurations round-robin). Were this execution to
///   stabilize, every agent would keep its color from some point on, with a
///   balanced split; any `D ∈ I` after that point would then have constant
///   colors across `I` — which is all of `reach(D)` since `I` is a terminal
///   SCC — making `D` stable and reachable from `C`. Contradiction, so the
///   execution never stabilizes and the protocol fails.
pub fn verify_global(p: &ProtocolSpec, g: &CommGraph) -> Result<VerifyOutcome> {
    let rg = reachable(p, g)?;
    Ok(verify_global_on(p, &rg))
}

/// [`verify_global`] on an already-computed reachability graph.
pub fn verify_global_on(p: &ProtocolSpec, rg: &ReachabilityGraph) -> VerifyOutcome {
    let stable = stable_flags(p, rg);
    let stable_count = stable.iter().filter(|&&s| s).count();

    // Backward closure of the stable set over reversed edges.
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); rg.len()];
    for (i, succ) in rg.successors.iter().enumerate() {
        for &j in succ {
            preds[j].push(i);
        }
    }
    let mut can_stabilize = stable.clone();
    let mut queue: VecDeque<usize> =
        (0..rg.len()).filter(|&i| can_stabilize[i]).collect();
    while let Some(i) = queue.pop_front() {
        for &j in &preds[i] {
            if !can_stabilize[j] {
                can_stabilize[j] = true;
                queue.push_back(j);
            }
        }
    }

    match can_stabilize.iter().position(|&ok| !ok) {
        None => VerifyOutcome { solves: true, witness: None, stable_count },
        Some(w) => VerifyOutcome { solves: false, witness: Some(w), stable_count },
    }
}

/// Number of distinct agent states occurring anywhere in the reachable set.
pub fn reachable_agent_state_count(rg: &ReachabilityGraph) -> usize {
    let mut seen = std::collections::HashSet::new();
    for c in &rg.configs {
        for &s in &c.agents {
            seen.insert(s);
        }
    }
    seen.len()
}

/// The invariant predicates checkable against a full reachable set. Universal
/// predicates are checked on every configuration (or every successor edge);
/// eventual ones on every terminal SCC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PredId {
    /// Interactions other than a base station coloring a depth-1 undecided
    /// agent leave (#r, #b, #ini) unchanged.
    Lem1,
    /// An assigned depth never changes.
    Lem2,
    /// Eventually (in every terminal SCC) every agent has an assigned depth.
    Lem3,
    /// Depth d ≥ 2 requires a neighbor at depth d−1; depth 1 requires
    /// adjacency to the base station. Linear depths only.
    Lem4,
    /// Eventually no agent is undecided.
    Lem5,
    /// The station's pending color and the letter imbalance stay in lockstep,
    /// relative to the station's starting color.
    Lem6,
    /// #r = #b + 2·#b-tokens in every reachable configuration.
    Lem9,
    /// Same balance equation, for the symmetric five-state protocol.
    Cor12,
    /// Eventually at most one token remains.
    Lem10,
    /// #ini never increases along any edge.
    MonoIni,
    /// #tokens ≡ n (mod 2) in every reachable configuration.
    TokenParity,
}

impl PredId {
    pub fn all() -> [PredId; 11] {
        [
            PredId::Lem1,
            PredId::Lem2,
            PredId::Lem3,
            PredId::Lem4,
            PredId::Lem5,
            PredId::Lem6,
            PredId::Lem9,
            PredId::Cor12,
            PredId::Lem10,
            PredId::MonoIni,
            PredId::TokenParity,
        ]
    }
}

impl std::fmt::Display for PredId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PredId::Lem1 => "LEM1",
            PredId::Lem2 => "LEM2",
            PredId::Lem3 => "LEM3",
            PredId::Lem4 => "LEM4",
            PredId::Lem5 => "LEM5",
            PredId::Lem6 => "LEM6",
            PredId::Lem9 => "LEM9",
            PredId::Cor12 => "COR12",
            PredId::Lem10 => "LEM10",
            PredId::MonoIni => "MONO-INI",
            PredId::TokenParity => "TOKEN-PARITY",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for PredId {
    type Err = Error;

    fn from_str(s: &str) -> Result<PredId> {
        match s.to_ascii_uppercase().as_str() {
            "LEM1" => Ok(PredId::Lem1),
            "LEM2" => Ok(PredId::Lem2),
            "LEM3" => Ok(PredId::Lem3),
            "LEM4" => Ok(PredId::Lem4),
            "LEM5" => Ok(PredId::Lem5),
            "LEM6" => Ok(PredId::Lem6),
            "LEM9" => Ok(PredId::Lem9),
            "COR12" => Ok(PredId::Cor12),
            "LEM10" => Ok(PredId::Lem10),
            "MONO-INI" => Ok(PredId::MonoIni),
            "TOKEN-PARITY" => Ok(PredId::TokenParity),
            _ => Err(Error::Parse(format!("unknown predicate {s:?}"))),
        }
    }
}

/// Result of one predicate check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateReport {
    pub holds: bool,
    /// Index of a violating configuration when the predicate fails.
    pub counterexample: Option<usize>,
}

fn letter_counts(p: &ProtocolSpec, c: &Configuration) -> (i64, i64) {
    let mut r = 0;
    let mut b = 0;
    for &s in &c.agents {
        let m = p.meta(s);
        if m.token {
            continue;
        }
        match m.plain {
            Some(Color::Red) => r += 1,
            Some(Color::Blue) => b += 1,
            None => {}
        }
    }
    (r, b)
}

fn ini_count(p: &ProtocolSpec, c: &Configuration) -> i64 {
    c.agents.iter().filter(|&&s| p.meta(s).is_ini).count() as i64
}

fn token_count(p: &ProtocolSpec, c: &Configuration) -> i64 {
    c.agents.iter().filter(|&&s| p.meta(s).token).count() as i64
}

fn blue_token_count(p: &ProtocolSpec, c: &Configuration) -> i64 {
    c.agents
        .iter()
        .filter(|&&s| {
            let m = p.meta(s);
            m.token && m.plain == Some(Color::Blue)
        })
        .count() as i64
}

fn has_tokens(p: &ProtocolSpec) -> bool {
    (0..p.agent_state_count() as u16).any(|s| p.meta(s).token)
}

fn has_ini(p: &ProtocolSpec) -> bool {
    (0..p.agent_state_count() as u16).any(|s| p.meta(s).is_ini)
}

fn bs_tracks_assign(p: &ProtocolSpec) -> bool {
    p.has_bs() && (0..p.bs_state_count() as u16).all(|b| p.bs_meta(b).next_assign.is_some())
}

fn inapplicable(pred: PredId, why: &str) -> Error {
    Error::InapplicablePredicate(pred.to_string(), why.into())
}

/// Checks one predicate against the full reachable set. Universal predicates
/// scan every configuration and every ordered pair; eventual predicates scan
/// the terminal SCCs. Fails with `InapplicablePredicate` when the protocol
/// lacks the structure the predicate speaks about.
pub fn check_predicate(
    p: &ProtocolSpec,
    g: &CommGraph,
    rg: &ReachabilityGraph,
    pred: PredId,
) -> Result<PredicateReport> {
    let tracks_depth = p.depth_mode() != DepthMode::None;
    match pred {
        PredId::Lem1 => {
            if !p.has_bs() || !tracks_depth {
                return Err(inapplicable(pred, "needs a base station and tracked depths"));
            }
            check_edges(p, g, rg, |c, i, c2| {
                if coloring_interaction(p, c, i) {
                    return true;
                }
                letter_counts(p, c) == letter_counts(p, c2) && ini_count(p, c) == ini_count(p, c2)
            })
        }
        PredId::Lem2 => {
            if !tracks_depth {
                return Err(inapplicable(pred, "protocol does not track depths"));
            }
            check_edges(p, g, rg, |c, _, c2| {
                c.agents.iter().zip(&c2.agents).all(|(&a, &b)| {
                    match p.meta(a).depth {
                        Depth::Val(_) => p.meta(a).depth == p.meta(b).depth,
                        _ => true,
                    }
                })
            })
        }
        PredId::Lem3 => {
            if !p.has_bs() || !tracks_depth {
                return Err(inapplicable(pred, "needs a base station and tracked depths"));
            }
            check_terminal(p, rg, |c| {
                c.agents.iter().all(|&s| p.meta(s).depth != Depth::Bot)
            })
        }
        PredId::Lem4 => {
            if !matches!(p.depth_mode(), DepthMode::Linear { .. }) {
                return Err(inapplicable(pred, "depth comparison must be linear"));
            }
            check_configs(p, rg, |c| {
                for (v, &s) in c.agents.iter().enumerate() {
                    match p.meta(s).depth {
                        Depth::Val(1) => {
                            if !g.is_bs_edge(v) {
                                return false;
                            }
                        }
                        Depth::Val(d) => {
                            let ok = g
                                .neighbors(v)
                                .iter()
                                .any(|&u| p.meta(c.agents[u]).depth == Depth::Val(d - 1));
                            if !ok {
                                return false;
                            }
                        }
                        _ => {}
                    }
                }
                true
            })
        }
        PredId::Lem5 => {
            if !p.has_bs() || !has_ini(p) {
                return Err(inapplicable(pred, "needs a base station and undecided states"));
            }
            check_terminal(p, rg, |c| ini_count(p, c) == 0)
        }
        PredId::Lem6 => {
            if !bs_tracks_assign(p) {
                return Err(inapplicable(pred, "base station must track a pending color"));
            }
            // The invariant is relative to the station's starting color, so
            // each start's forward closure is checked separately.
            for &start in &rg.initials {
                let s0 = rg.configs[start].bs.expect("bs protocol");
                let start_color = p.bs_meta(s0).next_assign.unwrap();
                let sign = match start_color {
                    Color::Red => 1,
                    Color::Blue => -1,
                };
                let seen = rg.forward_closure(start);
                for (i, &in_closure) in seen.iter().enumerate() {
                    if !in_closure {
                        continue;
                    }
                    let c = &rg.configs[i];
                    let rb = p.bs_meta(c.bs.unwrap()).next_assign.unwrap();
                    let (r, b) = letter_counts(p, c);
                    let ok = if rb == start_color { r - b == 0 } else { r - b == sign };
                    if !ok {
                        return Ok(PredicateReport { holds: false, counterexample: Some(i) });
                    }
                }
            }
            Ok(PredicateReport { holds: true, counterexample: None })
        }
        PredId::Lem9 | PredId::Cor12 => {
            if p.has_bs() || !has_tokens(p) {
                return Err(inapplicable(pred, "needs a token protocol without a base station"));
            }
            check_configs(p, rg, |c| {
                let (r, b) = letter_counts(p, c);
                r == b + 2 * blue_token_count(p, c)
            })
        }
        PredId::Lem10 => {
            if !has_tokens(p) {
                return Err(inapplicable(pred, "protocol has no tokens"));
            }
            check_terminal(p, rg, |c| token_count(p, c) <= 1)
        }
        PredId::MonoIni => {
            if !has_ini(p) {
                return Err(inapplicable(pred, "protocol has no undecided states"));
            }
            check_edges(p, g, rg, |c, _, c2| ini_count(p, c2) <= ini_count(p, c))
        }
        PredId::TokenParity => {
            if p.has_bs() || !has_tokens(p) {
                return Err(inapplicable(pred, "needs a token protocol without a base station"));
            }
            let n = g.n_agents() as i64;
            check_configs(p, rg, |c| (token_count(p, c) - n) % 2 == 0)
        }
    }
}

/// True when the interaction is the base station coloring a depth-1 undecided
/// agent (in either role order) — the one step allowed to change counts.
fn coloring_interaction(p: &ProtocolSpec, c: &Configuration, i: Interaction) -> bool {
    let agent = match (i.initiator, i.responder) {
        (Endpoint::BaseStation, Endpoint::Agent(a)) => a,
        (Endpoint::Agent(a), Endpoint::BaseStation) => a,
        _ => return false,
    };
    let m = p.meta(c.agents[agent]);
    m.is_ini && m.depth == Depth::Val(1)
}

fn check_configs(
    _p: &ProtocolSpec,
    rg: &ReachabilityGraph,
    ok: impl Fn(&Configuration) -> bool,
) -> Result<PredicateReport> {
    for (i, c) in rg.configs.iter().enumerate() {
        if !ok(c) {
            return Ok(PredicateReport { holds: false, counterexample: Some(i) });
        }
    }
    Ok(PredicateReport { holds: true, counterexample: None })
}

fn check_terminal(
    _p: &ProtocolSpec,
    rg: &ReachabilityGraph,
    ok: impl Fn(&Configuration) -> bool,
) -> Result<PredicateReport> {
    for (k, comp) in rg.sccs.comps.iter().enumerate() {
        if !rg.sccs.terminal[k] {
            continue;
        }
        for &i in comp {
            if !ok(&rg.configs[i]) {
                return Ok(PredicateReport { holds: false, counterexample: Some(i) });
            }
        }
    }
    Ok(PredicateReport { holds: true, counterexample: None })
}

fn check_edges(
    p: &ProtocolSpec,
    g: &CommGraph,
    rg: &ReachabilityGraph,
    ok: impl Fn(&Configuration, Interaction, &Configuration) -> bool,
) -> Result<PredicateReport> {
    let pairs = ordered_pairs(g);
    for (i, c) in rg.configs.iter().enumerate() {
        for &pair in &pairs {
            let c2 = apply(p, g, c, pair)?;
            if !ok(c, pair, &c2) {
                return Ok(PredicateReport { holds: false, counterexample: Some(i) });
            }
        }
    }
    Ok(PredicateReport { holds: true, counterexample: None })
}
