//! Communication graphs.
//!
//! A [`CommGraph`] is an undirected connected graph over agent vertices
//! `0..n_agents`, optionally extended by a single base station vertex that is
//! adjacent to a chosen attachment set of agents. The base station is not an
//! agent: it never appears as an edge endpoint in `edges`, only in
//! `bs_edges`.
//!
//! Besides the standard families (complete, ring, line, star, seeded random
//! connected), this module builds the proof gadgets used by the
//! counterexample harnesses: the two-copy bridge graph, the four-copy clique
//! graph, and the fixed 6-vertex interleaved double ring.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scheduler::SplitMix64;

/// Undirected communication graph with an optional base station.
///
/// Invariants, enforced by every constructor: no self-loops, no duplicate
/// edges, all endpoints in range, and the whole vertex set (agents plus base
/// station when present) is connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommGraph {
    n_agents: usize,
    edges: BTreeSet<(usize, usize)>,
    bs_edges: BTreeSet<usize>,
    has_bs: bool,
}

/// Base-station mode for [`build`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BsMode {
    None,
    /// Add a base station adjacent to exactly these agents.
    ExtraVertex { attach: Vec<usize> },
}

/// Graph family selector for [`build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete,
    Ring,
    Line,
    Star,
    /// Uniform spanning tree plus each remaining edge independently with
    /// probability 1/2, driven by the crate PRNG.
    RandomConnected { seed: u64 },
}

impl CommGraph {
    /// Builds a graph from raw parts, validating every invariant.
    pub fn new(n_agents: usize, edges: &[(usize, usize)], bs_attach: Option<&[usize]>) -> Result<CommGraph> {
        if n_agents == 0 {
            return Err(Error::InvalidSize("graph needs at least one agent".into()));
        }
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidEdge(format!("self-loop at {u}")));
            }
            if u >= n_agents || v >= n_agents {
                return Err(Error::InvalidEdge(format!(
                    "({u}, {v}) out of range for {n_agents} agents"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let (bs_edges, has_bs) = match bs_attach {
            None => (BTreeSet::new(), false),
            Some(attach) => {
                if attach.is_empty() {
                    return Err(Error::InvalidBsAttachment(
                        "attachment set must not be empty".into(),
                    ));
                }
                for &a in attach {
                    if a >= n_agents {
                        return Err(Error::InvalidBsAttachment(format!(
                            "agent {a} out of range for {n_agents} agents"
                        )));
                    }
                }
                (attach.iter().copied().collect(), true)
            }
        };
        let g = CommGraph { n_agents, edges: set, bs_edges, has_bs };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    /// Normalized agent-agent edges, each with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Agents adjacent to the base station, in sorted order.
    pub fn bs_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.bs_edges.iter().copied()
    }

    pub fn has_bs(&self) -> bool {
        self.has_bs
    }

    pub fn is_agent_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_bs_edge(&self, a: usize) -> bool {
        self.bs_edges.contains(&a)
    }

    /// Agent neighbours of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn is_connected(&self) -> bool {
        // Vertex n_agents stands for the base station when present.
        let total = self.n_agents + usize::from(self.has_bs);
        let mut seen = vec![false; total];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            let push = |w: usize, seen: &mut Vec<bool>, stack: &mut Vec<usize>| {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            };
            if v == self.n_agents {
                for &a in &self.bs_edges {
                    push(a, &mut seen, &mut stack);
                }
            } else {
                for w in self.neighbors(v) {
                    push(w, &mut seen, &mut stack);
                }
                if self.has_bs && self.bs_edges.contains(&v) {
                    push(self.n_agents, &mut seen, &mut stack);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Serializes to the line-oriented text format:
    ///
    /// ```text
    /// n 3
    /// bs 0 2
    /// e 0 1
    /// e 1 2
    /// ```
    ///
    /// The `bs` line lists attachment agents, or `-` when there is no base
    /// station.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.n_agents).unwrap();
        if self.has_bs {
            let attach: Vec<String> = self.bs_edges.iter().map(|a| a.to_string()).collect();
            writeln!(out, "bs {}", attach.join(" ")).unwrap();
        } else {
            writeln!(out, "bs -").unwrap();
        }
        for &(u, v) in &self.edges {
            writeln!(out, "e {u} {v}").unwrap();
        }
        out
    }

    /// Parses the text format emitted by [`CommGraph::to_text`]. Blank lines
    /// and `#` comment lines are ignored.
    pub fn from_text(s: &str) -> Result<CommGraph> {
        let mut n: Option<usize> = None;
        let mut bs: Option<Vec<usize>> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap();
            let rest: Vec<&str> = parts.collect();
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}: {raw:?}", lineno + 1));
            match tag {
                "n" => {
                    let [v] = rest[..] else {
                        return Err(bad("expected `n <count>`"));
                    };
                    n = Some(v.parse().map_err(|_| bad("bad agent count"))?);
                }
                "bs" => {
                    if rest == ["-"] {
                        bs = None;
                    } else {
                        let mut attach = Vec::new();
                        for v in &rest {
                            attach.push(v.parse().map_err(|_| bad("bad attachment index"))?);
                        }
                        if attach.is_empty() {
                            return Err(bad("expected `bs -` or `bs <agents>`"));
                        }
                        bs = Some(attach);
                    }
                }
                "e" => {
                    let [u, v] = rest[..] else {
                        return Err(bad("expected `e <u> <v>`"));
                    };
                    edges.push((
                        u.parse().map_err(|_| bad("bad endpoint"))?,
                        v.parse().map_err(|_| bad("bad endpoint"))?,
                    ));
                }
                _ => return Err(bad("unknown line tag")),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing `n` line".into()))?;
        CommGraph::new(n, &edges, bs.as_deref())
    }
}

/// Builds one of the standard families over `n` agents.
pub fn build(family: Family, n: usize, bs: BsMode) -> Result<CommGraph> {
    if n == 0 {
        return Err(Error::InvalidSize("graph needs at least one agent".into()));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match family {
        Family::Complete => {
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
        }
        Family::Ring => {
            for i in 0..n {
                let j = (i + 1) % n;
                if i != j {
                    edges.push((i, j));
                }
            }
        }
        Family::Line => {
            for i in 0..n.saturating_sub(1) {
                edges.push((i, i + 1));
            }
        }
        Family::Star => {
            for i in 1..n {
                edges.push((0, i));
            }
        }
        Family::RandomConnected { seed } => {
            let mut rng = SplitMix64::new(seed);
            edges = random_spanning_tree(n, &mut rng);
            let tree: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
            for u in 0..n {
                for v in u + 1..n {
                    if !tree.contains(&(u, v)) && rng.flip() {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    let attach = match &bs {
        BsMode::None => None,
        BsMode::ExtraVertex { attach } => Some(attach.as_slice()),
    };
    CommGraph::new(n, &edges, attach)
}

/// Uniform random labelled tree on `n` vertices via a Pruefer sequence whose
/// entries are drawn with rejection sampling (no modulo bias).
fn random_spanning_tree(n: usize, rng: &mut SplitMix64) -> Vec<(usize, usize)> {
    if n == 1 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.below(n as u64) as usize).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut used = vec![false; n];
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1 && !used[v]).unwrap();
        edges.push((leaf.min(s), leaf.max(s)));
        used[leaf] = true;
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let mut last: Vec<usize> = (0..n).filter(|&v| degree[v] == 1 && !used[v]).collect();
    assert_eq!(last.len(), 2);
    let (a, b) = (last.remove(0), last.remove(0));
    edges.push((a.min(b), a.max(b)));
    edges
}

/// Two disjoint copies of `g` joined by the single bridge edge
/// `(alpha, n + beta)`, where `(alpha, beta)` must be an edge of `g`.
///
/// The output has `2n` agents and exactly `2|E| + 1` edges and carries no
/// base station.
pub fn double_bridge(g: &CommGraph, alpha: usize, beta: usize) -> Result<CommGraph> {
    if g.has_bs() {
        return Err(Error::NotSupported(
            "double_bridge is defined for graphs without a base station".into(),
        ));
    }
    if !g.is_agent_edge(alpha, beta) {
        return Err(Error::NotAnEdge(alpha, beta));
    }
    let n = g.n_agents();
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(2 * g.n_edges() + 1);
    for (u, v) in g.edges() {
        edges.push((u, v));
        edges.push((u + n, v + n));
    }
    edges.push((alpha, n + beta));
    CommGraph::new(2 * n, &edges, None)
}

/// Four disjoint copies of `g` whose representatives
/// `{rep, rep+n, rep+2n, rep+3n}` form a 4-clique.
///
/// The output has `4n` agents and exactly `4|E| + 6` edges and carries no
/// base station.
pub fn quad_clique(g: &CommGraph, rep: usize) -> Result<CommGraph> {
    if g.has_bs() {
        return Err(Error::NotSupported(
            "quad_clique is defined for graphs without a base station".into(),
        ));
    }
    let n = g.n_agents();
    if rep >= n {
        return Err(Error::InvalidSize(format!(
            "representative {rep} out of range for {n} agents"
        )));
    }
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(4 * g.n_edges() + 6);
    for copy in 0..4 {
        for (u, v) in g.edges() {
            edges.push((u + copy * n, v + copy * n));
        }
    }
    let reps = [rep, rep + n, rep + 2 * n, rep + 3 * n];
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push((reps[i], reps[j]));
        }
    }
    CommGraph::new(4 * n, &edges, None)
}

/// The fixed 6-vertex graph that interleaves two copies of the 3-ring:
/// edges `{(0,1), (1,5), (5,3), (3,4), (4,2), (2,0)}`. Every vertex has
/// degree 2, so the graph is a single 6-cycle.
pub fn ring_interleave_double() -> CommGraph {
    CommGraph::new(6, &[(0, 1), (1, 5), (5, 3), (3, 4), (4, 2), (2, 0)], None)
        .expect("fixed gadget is valid")
}

/// True iff some simple cycle through agent vertices only has length
/// divisible by `l`. Cycles through the base station are exempt, so
/// `bs_edges` never participate.
///
/// Exhaustive simple-cycle enumeration; graphs with more than 12 agents are
/// rejected rather than silently undersampled.
pub fn violates_mod_l_condition(g: &CommGraph, l: u32) -> Result<bool> {
    if l < 3 {
        return Err(Error::InvalidModulus(l));
    }
    if g.n_agents() > 12 {
        return Err(Error::NotSupported(format!(
            "cycle enumeration capped at 12 agents, got {}",
            g.n_agents()
        )));
    }
    let n = g.n_agents();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut on_path = vec![false; n];
    // Paths start at the smallest vertex of the candidate cycle and only
    // visit larger vertices, so each cycle is enumerated (twice, one per
    // direction) with its canonical start.
    fn dfs(
        v: usize,
        start: usize,
        len: usize,
        l: u32,
        adj: &[Vec<usize>],
        on_path: &mut [bool],
    ) -> bool {
        for &w in &adj[v] {
            if w == start && len >= 3 && len % l as usize == 0 {
                return true;
            }
            if w > start && !on_path[w] {
                on_path[w] = true;
                let hit = dfs(w, start, len + 1, l, adj, on_path);
                on_path[w] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    for start in 0..n {
        on_path[start] = true;
        let hit = dfs(start, start, 1, l, &adj, &mut on_path);
        on_path[start] = false;
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All labelled connected graphs on `n` agents, no base station. Grows as
/// `2^(n(n-1)/2)`; capped at `n <= 7`.
pub fn connected_graphs(n: usize) -> Result<Vec<CommGraph>> {
    if n == 0 {
        return Err(Error::InvalidSize("need at least one agent".into()));
    }
    if n > 7 {
        return Err(Error::NotSupported(format!(
            "exhaustive enumeration capped at 7 agents, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if let Ok(g) = CommGraph::new(n, &edges, None) {
            out.push(g);
        }
    }
    Ok(out)
}

/// All labelled graphs on `n` agents plus a base station, over every
/// (edge set, attachment set) combination whose union is connected. Capped
/// at `n <= 6`.
pub fn connected_bs_graphs(n: usize) -> Result<Vec<CommGraph>> {
    if n == 0 {
        return Err(Error::InvalidSize("need at least one agent".into()));
    }
    if n > 6 {
        return Err(Error::NotSupported(format!(
            "exhaustive enumeration capped at 6 agents, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        for attach_mask in 1u32..(1 << n) {
            let attach: Vec<usize> = (0..n).filter(|i| attach_mask >> i & 1 == 1).collect();
            if let Ok(g) = CommGraph::new(n, &edges, Some(&attach)) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> CommGraph {
        build(Family::Ring, n, BsMode::None).unwrap()
    }

    #[test]
    fn family_shapes() {
        let g = ring(3);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2)]);

        let g = build(Family::Complete, 4, BsMode::None).unwrap();
        assert_eq!(g.n_edges(), 6);

        let g = build(Family::Line, 2, BsMode::ExtraVertex { attach: vec![0] }).unwrap();
        assert_eq!(g.n_edges(), 1);
        assert!(g.has_bs());
        assert_eq!(g.bs_edges().collect::<Vec<_>>(), vec![0]);

        let g = build(Family::Star, 5, BsMode::None).unwrap();
        assert_eq!(g.n_edges(), 4);
        assert_eq!(g.neighbors(0), vec![1, 2, 3, 4]);
    }

    #[test]
    fn build_rejects_degenerate_input() {
        assert!(matches!(
            build(Family::Ring, 0, BsMode::None),
            Err(Error::InvalidSize(_))
        ));
        assert!(matches!(
            build(Family::Line, 3, BsMode::ExtraVertex { attach: vec![] }),
            Err(Error::InvalidBsAttachment(_))
        ));
        assert!(matches!(
            build(Family::Line, 3, BsMode::ExtraVertex { attach: vec![7] }),
            Err(Error::InvalidBsAttachment(_))
        ));
        assert!(matches!(
            CommGraph::new(2, &[(0, 0)], None),
            Err(Error::InvalidEdge(_))
        ));
        assert!(matches!(
            CommGraph::new(3, &[(0, 1)], None),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn random_connected_is_reproducible_and_connected() {
        for seed in 0..50 {
            let a = build(Family::RandomConnected { seed }, 7, BsMode::None).unwrap();
            let b = build(Family::RandomConnected { seed }, 7, BsMode::None).unwrap();
            assert_eq!(a, b);
            assert!(a.n_edges() >= 6, "spanning tree guarantees n-1 edges");
        }
        let a = build(Family::RandomConnected { seed: 1 }, 7, BsMode::None).unwrap();
        let b = build(Family::RandomConnected { seed: 2 }, 7, BsMode::None).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn double_bridge_shapes() {
        let g = double_bridge(&ring(5), 0, 1).unwrap();
        assert_eq!(g.n_agents(), 10);
        assert_eq!(g.n_edges(), 11);
        assert!(g.is_agent_edge(0, 6), "bridge edge (alpha, n + beta)");

        let g = double_bridge(&ring(3), 0, 1).unwrap();
        assert_eq!((g.n_agents(), g.n_edges()), (6, 7));

        let k4 = build(Family::Complete, 4, BsMode::None).unwrap();
        let g = double_bridge(&k4, 2, 3).unwrap();
        assert_eq!((g.n_agents(), g.n_edges()), (8, 13));
        assert!(g.is_agent_edge(2, 7));

        assert!(matches!(
            double_bridge(&build(Family::Line, 4, BsMode::None).unwrap(), 0, 3),
            Err(Error::NotAnEdge(0, 3))
        ));
    }

    #[test]
    fn double_bridge_edge_count_exhaustive() {
        for n in 2..=6 {
            for g in connected_graphs(n).unwrap() {
                let edges: Vec<_> = g.edges().collect();
                for (a, b) in edges {
                    let d = double_bridge(&g, a, b).unwrap();
                    assert_eq!(d.n_agents(), 2 * n);
                    assert_eq!(d.n_edges(), 2 * g.n_edges() + 1);
                }
            }
        }
    }

    #[test]
    fn quad_clique_shapes() {
        let g = quad_clique(&ring(3), 0).unwrap();
        assert_eq!((g.n_agents(), g.n_edges()), (12, 18));
        for (i, j) in [(0, 3), (0, 6), (0, 9), (3, 6), (3, 9), (6, 9)] {
            assert!(g.is_agent_edge(i, j));
        }

        let line2 = build(Family::Line, 2, BsMode::None).unwrap();
        let g = quad_clique(&line2, 1).unwrap();
        assert_eq!((g.n_agents(), g.n_edges()), (8, 10));
        for (i, j) in [(1, 3), (1, 5), (1, 7), (3, 5), (3, 7), (5, 7)] {
            assert!(g.is_agent_edge(i, j));
        }

        assert!(matches!(quad_clique(&ring(3), 3), Err(Error::InvalidSize(_))));
    }

    #[test]
    fn quad_clique_edge_count_exhaustive() {
        for n in 2..=5 {
            for g in connected_graphs(n).unwrap() {
                let q = quad_clique(&g, 0).unwrap();
                assert_eq!(q.n_agents(), 4 * n);
                assert_eq!(q.n_edges(), 4 * g.n_edges() + 6);
            }
        }
    }

    #[test]
    fn interleaved_ring_is_a_6_cycle() {
        let g = ring_interleave_double();
        assert_eq!(g.n_agents(), 6);
        let edges: BTreeSet<_> = g.edges().collect();
        let expect: BTreeSet<_> = [(0, 1), (1, 5), (3, 5), (3, 4), (2, 4), (0, 2)]
            .into_iter()
            .collect();
        assert_eq!(edges, expect);
        for v in 0..6 {
            assert_eq!(g.neighbors(v).len(), 2);
        }
    }

    #[test]
    fn mod_l_condition_examples() {
        assert!(violates_mod_l_condition(&ring(6), 3).unwrap());
        assert!(!violates_mod_l_condition(&ring(4), 3).unwrap());
        let line5 = build(Family::Line, 5, BsMode::ExtraVertex { attach: vec![0, 4] }).unwrap();
        for l in 3..=6 {
            assert!(!violates_mod_l_condition(&line5, l).unwrap());
        }
        assert!(matches!(
            violates_mod_l_condition(&ring(4), 2),
            Err(Error::InvalidModulus(2))
        ));
    }

    /// Oracle: a simple cycle with vertex set S exists iff the subgraph
    /// induced by S has a Hamiltonian cycle. Checked by permutation.
    fn brute_force_violates(g: &CommGraph, l: u32) -> bool {
        let n = g.n_agents();
        for mask in 1u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let k = verts.len();
            if k < 3 || k % l as usize != 0 {
                continue;
            }
            let mut rest: Vec<usize> = verts[1..].to_vec();
            let first = verts[0];
            if permute_has_cycle(g, first, &mut rest, 0) {
                return true;
            }
        }
        false
    }

    fn permute_has_cycle(g: &CommGraph, first: usize, rest: &mut Vec<usize>, at: usize) -> bool {
        if at == rest.len() {
            let mut prev = first;
            for &v in rest.iter() {
                if !g.is_agent_edge(prev, v) {
                    return false;
                }
                prev = v;
            }
            return g.is_agent_edge(prev, first);
        }
        for i in at..rest.len() {
            rest.swap(at, i);
            if permute_has_cycle(g, first, rest, at + 1) {
                rest.swap(at, i);
                return true;
            }
            rest.swap(at, i);
        }
        false
    }

    #[test]
    fn mod_l_matches_brute_force_oracle() {
        for n in 1..=5 {
            for g in connected_graphs(n).unwrap() {
                for l in 3..=5 {
                    assert_eq!(
                        violates_mod_l_condition(&g, l).unwrap(),
                        brute_force_violates(&g, l),
                        "n={n} l={l} edges={:?}",
                        g.edges().collect::<Vec<_>>()
                    );
                }
            }
        }
        // Denser spot checks beyond the exhaustive range.
        for seed in 0..120 {
            let n = 6 + (seed % 3) as usize;
            let g = build(Family::RandomConnected { seed }, n, BsMode::None).unwrap();
            for l in 3..=4 {
                assert_eq!(
                    violates_mod_l_condition(&g, l).unwrap(),
                    brute_force_violates(&g, l),
                    "seed={seed} n={n} l={l}"
                );
            }
        }
    }

    #[test]
    fn mod_l_rejects_oversized_input() {
        let g = build(Family::Ring, 13, BsMode::None).unwrap();
        assert!(matches!(
            violates_mod_l_condition(&g, 3),
            Err(Error::NotSupported(_))
        ));
    }

    #[test]
    fn text_format_round_trips() {
        let g = build(Family::Line, 5, BsMode::ExtraVertex { attach: vec![0, 4] }).unwrap();
        let text = g.to_text();
        let back = CommGraph::from_text(&text).unwrap();
        assert_eq!(g, back);
        assert_eq!(text, back.to_text());

        let g = ring(4);
        assert_eq!(CommGraph::from_text(&g.to_text()).unwrap(), g);

        assert!(CommGraph::from_text("e 0 1\n").is_err());
        assert!(CommGraph::from_text("n 2\nbs -\ne 0 x\n").is_err());
        assert!(CommGraph::from_text("n two\n").is_err());
    }

    #[test]
    fn enumerators_count_connected_graphs() {
        // Known counts of labelled connected graphs.
        assert_eq!(connected_graphs(1).unwrap().len(), 1);
        assert_eq!(connected_graphs(2).unwrap().len(), 1);
        assert_eq!(connected_graphs(3).unwrap().len(), 4);
        assert_eq!(connected_graphs(4).unwrap().len(), 38);
        assert_eq!(connected_graphs(5).unwrap().len(), 728);
        // One agent plus base station: the only option is attach = {0}.
        assert_eq!(connected_bs_graphs(1).unwrap().len(), 1);
        for g in connected_bs_graphs(3).unwrap() {
            assert!(g.has_bs());
        }
    }
}
