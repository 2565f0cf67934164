//! Protocol model: state spaces, configurations, and interaction semantics.
//!
//! A [`ProtocolSpec`] is a finite table-driven protocol: a set of named agent
//! states, an optional set of base-station states, and a total deterministic
//! transition function over ordered pairs. "Total" means every ordered pair
//! has an entry; pairs the protocol listing leaves out are identity (null)
//! transitions. Listings stay readable, the table stays complete.
//!
//! Each agent state carries a [`StateMeta`] record describing how the
//! verifier's predicate catalog should count it: its output color, whether it
//! is an undecided `ini` state, its plain color letter, whether it carries a
//! cancellation token, and its tracked depth. The semantics below never read
//! the metadata; only the predicates do.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CommGraph;

/// Output color under the protocol's labeling function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// Tracked depth of an agent state, for protocols that propagate distance
/// from the base station.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    /// The protocol does not track depth in this state.
    Untracked,
    /// Depth not yet assigned (the bottom value).
    Bot,
    Val(u32),
}

/// How a protocol's depth component behaves; drives predicate applicability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthMode {
    None,
    /// Depths 1..=bound, assigned once and never changed.
    Linear { bound: u32 },
    /// Depths 1..=modulus compared cyclically.
    Cyclic { modulus: u32 },
}

/// Predicate-facing description of one agent state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateMeta {
    /// Output color under the labeling function.
    pub color: Color,
    /// Undecided state: still counts as red output but has no letter.
    pub is_ini: bool,
    /// Plain color letter, when the protocol has decided one.
    pub plain: Option<Color>,
    /// Carries a cancellation token.
    pub token: bool,
    pub depth: Depth,
}

impl StateMeta {
    pub fn plain(color: Color) -> StateMeta {
        StateMeta { color, is_ini: false, plain: Some(color), token: false, depth: Depth::Untracked }
    }

    pub fn ini(color: Color) -> StateMeta {
        StateMeta { color, is_ini: true, plain: None, token: false, depth: Depth::Untracked }
    }

    pub fn token(color: Color, plain: Color) -> StateMeta {
        StateMeta { color, is_ini: false, plain: Some(plain), token: true, depth: Depth::Untracked }
    }

    pub fn with_depth(mut self, depth: Depth) -> StateMeta {
        self.depth = depth;
        self
    }
}

/// Predicate-facing description of one base-station state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BsMeta {
    /// Color the base station will hand out at its next assignment.
    pub next_assign: Option<Color>,
}

/// How the base station is initialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsInit {
    Designated(u16),
    /// Any base-station state may be the start; the verifier quantifies over
    /// all of them, the simulator defaults to the first listed.
    Arbitrary,
}

/// One endpoint of an interaction. The base station orders before agent 0,
/// which fixes the canonical pair order everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    BaseStation,
    Agent(usize),
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Endpoint::BaseStation => write!(f, "bs"),
            Endpoint::Agent(i) => write!(f, "{i}"),
        }
    }
}

impl std::str::FromStr for Endpoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Endpoint> {
        if s == "bs" {
            Ok(Endpoint::BaseStation)
        } else {
            s.parse::<usize>()
                .map(Endpoint::Agent)
                .map_err(|_| Error::Parse(format!("bad endpoint {s:?}")))
        }
    }
}

/// An ordered interaction: initiator first, responder second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interaction {
    pub initiator: Endpoint,
    pub responder: Endpoint,
}

impl Interaction {
    pub fn new(initiator: Endpoint, responder: Endpoint) -> Interaction {
        Interaction { initiator, responder }
    }

    pub fn agents(i: usize, r: usize) -> Interaction {
        Interaction::new(Endpoint::Agent(i), Endpoint::Agent(r))
    }

    /// Whether this is the forward direction of its edge in the canonical
    /// endpoint order (base station before every agent).
    pub fn is_forward(&self) -> bool {
        match (self.initiator, self.responder) {
            (Endpoint::BaseStation, _) => true,
            (_, Endpoint::BaseStation) => false,
            (Endpoint::Agent(x), Endpoint::Agent(y)) => x < y,
        }
    }
}

impl std::fmt::Display for Interaction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.initiator, self.responder)
    }
}

/// A snapshot of every agent's state plus the base station's, when present.
/// Agent entries are indices into the protocol's agent state list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub agents: Vec<u16>,
    pub bs: Option<u16>,
}

/// A finite population protocol over named states with a total deterministic
/// transition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolSpec {
    name: String,
    agent_states: Vec<String>,
    agent_index: HashMap<String, u16>,
    bs_states: Vec<String>,
    bs_index: HashMap<String, u16>,
    meta: Vec<StateMeta>,
    bs_meta: Vec<BsMeta>,
    /// Agent-agent table, row-major by (initiator, responder).
    aa: Vec<(u16, u16)>,
    /// Base-station-initiator table, row-major by (bs, agent).
    ba: Vec<(u16, u16)>,
    /// Agent-initiator table, row-major by (agent, bs).
    ab: Vec<(u16, u16)>,
    agent_init: u16,
    bs_init: BsInit,
    depth_mode: DepthMode,
}

impl ProtocolSpec {
    pub fn builder(name: &str) -> ProtocolBuilder {
        ProtocolBuilder {
            name: name.to_string(),
            agent_states: Vec::new(),
            bs_states: Vec::new(),
            meta: Vec::new(),
            bs_meta: Vec::new(),
            rules: Vec::new(),
            bs_rules: Vec::new(),
            ab_rules: Vec::new(),
            agent_init: None,
            bs_init: BsInit::Arbitrary,
            depth_mode: DepthMode::None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn agent_state_count(&self) -> usize {
        self.agent_states.len()
    }

    pub fn bs_state_count(&self) -> usize {
        self.bs_states.len()
    }

    pub fn has_bs(&self) -> bool {
        !self.bs_states.is_empty()
    }

    pub fn agent_state_name(&self, idx: u16) -> &str {
        &self.agent_states[idx as usize]
    }

    pub fn bs_state_name(&self, idx: u16) -> &str {
        &self.bs_states[idx as usize]
    }

    pub fn agent_state(&self, name: &str) -> Option<u16> {
        self.agent_index.get(name).copied()
    }

    pub fn bs_state(&self, name: &str) -> Option<u16> {
        self.bs_index.get(name).copied()
    }

    pub fn meta(&self, idx: u16) -> &StateMeta {
        &self.meta[idx as usize]
    }

    pub fn bs_meta(&self, idx: u16) -> &BsMeta {
        &self.bs_meta[idx as usize]
    }

    pub fn color(&self, idx: u16) -> Color {
        self.meta[idx as usize].color
    }

    pub fn agent_init(&self) -> u16 {
        self.agent_init
    }

    pub fn bs_init(&self) -> BsInit {
        self.bs_init
    }

    pub fn depth_mode(&self) -> DepthMode {
        self.depth_mode
    }

    /// Base-station states the verifier must quantify over as starts.
    pub fn bs_initial_states(&self) -> Vec<u16> {
        if !self.has_bs() {
            return Vec::new();
        }
        match self.bs_init {
            BsInit::Designated(s) => vec![s],
            BsInit::Arbitrary => (0..self.bs_states.len() as u16).collect(),
        }
    }

    pub fn delta_aa(&self, p: u16, q: u16) -> (u16, u16) {
        self.aa[p as usize * self.agent_states.len() + q as usize]
    }

    pub fn delta_ba(&self, b: u16, q: u16) -> (u16, u16) {
        self.ba[b as usize * self.agent_states.len() + q as usize]
    }

    pub fn delta_ab(&self, p: u16, b: u16) -> (u16, u16) {
        self.ab[p as usize * self.bs_states.len() + b as usize]
    }

    /// The all-`agent_init` configuration. `bs_start` overrides the default
    /// base-station start (designated state, or first listed when arbitrary).
    pub fn initial_config(&self, g: &CommGraph, bs_start: Option<u16>) -> Result<Configuration> {
        check_compatible(self, g)?;
        let bs = if self.has_bs() {
            let s = bs_start.unwrap_or(match self.bs_init {
                BsInit::Designated(s) => s,
                BsInit::Arbitrary => 0,
            });
            if s as usize >= self.bs_states.len() {
                return Err(Error::CorruptConfiguration(format!(
                    "base-station state index {s} out of range"
                )));
            }
            Some(s)
        } else {
            None
        };
        Ok(Configuration { agents: vec![self.agent_init; g.n_agents()], bs })
    }

    /// Renders a configuration with state names, e.g. for reports.
    pub fn render(&self, c: &Configuration) -> String {
        let agents: Vec<&str> = c
            .agents
            .iter()
            .map(|&s| self.agent_states[s as usize].as_str())
            .collect();
        match c.bs {
            Some(b) => format!("[{}] bs={}", agents.join(", "), self.bs_states[b as usize]),
            None => format!("[{}]", agents.join(", ")),
        }
    }

    /// Configuration as a JSON value: `{"agents": [names...], "bs": name?}`.
    pub fn config_json(&self, c: &Configuration) -> serde_json::Value {
        let agents: Vec<&str> = c
            .agents
            .iter()
            .map(|&s| self.agent_states[s as usize].as_str())
            .collect();
        match c.bs {
            Some(b) => serde_json::json!({ "agents": agents, "bs": self.bs_states[b as usize] }),
            None => serde_json::json!({ "agents": agents }),
        }
    }

    /// Copy with the single ordered agent-agent entry `(p, q)` replaced.
    /// Used by mutation tests; metadata and everything else is preserved.
    pub fn with_rule_replaced(&self, p: u16, q: u16, out: (u16, u16)) -> ProtocolSpec {
        let mut s = self.clone();
        let n = s.agent_states.len();
        s.aa[p as usize * n + q as usize] = out;
        s.name = format!(
            "{}[{} {}->...]",
            s.name, s.agent_states[p as usize], s.agent_states[q as usize]
        );
        s
    }

    /// Copy with the agent-agent rule for `(p, q)` and its mirror `(q, p)`
    /// both reset to null. A listed rule plus its mirror is one rule unit.
    pub fn with_rule_deleted(&self, p: u16, q: u16) -> ProtocolSpec {
        let mut s = self.clone();
        let n = s.agent_states.len();
        s.aa[p as usize * n + q as usize] = (p, q);
        s.aa[q as usize * n + p as usize] = (q, p);
        s.name = format!(
            "{}[del {} {}]",
            s.name, s.agent_states[p as usize], s.agent_states[q as usize]
        );
        s
    }

    /// Non-null agent-agent rule units, mirrors folded together: each unit is
    /// reported once as its lexicographically least ordered input pair.
    pub fn non_null_rules(&self) -> Vec<(u16, u16)> {
        let n = self.agent_states.len() as u16;
        let mut units = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if self.delta_aa(p, q) == (p, q) {
                    continue;
                }
                let unit = (p.min(q), p.max(q));
                if !units.contains(&unit) {
                    units.push(unit);
                }
            }
        }
        units
    }
}

/// Incremental construction of a [`ProtocolSpec`]. Rules may only reference
/// states that were added first; the transition table starts all-null.
pub struct ProtocolBuilder {
    name: String,
    agent_states: Vec<String>,
    bs_states: Vec<String>,
    meta: Vec<StateMeta>,
    bs_meta: Vec<BsMeta>,
    rules: Vec<(u16, u16, u16, u16)>,
    bs_rules: Vec<(u16, u16, u16, u16)>,
    ab_rules: Vec<(u16, u16, u16, u16)>,
    agent_init: Option<u16>,
    bs_init: BsInit,
    depth_mode: DepthMode,
}

impl ProtocolBuilder {
    pub fn agent_state(&mut self, name: &str, meta: StateMeta) -> u16 {
        let idx = self.agent_states.len() as u16;
        self.agent_states.push(name.to_string());
        self.meta.push(meta);
        idx
    }

    pub fn bs_state(&mut self, name: &str, meta: BsMeta) -> u16 {
        let idx = self.bs_states.len() as u16;
        self.bs_states.push(name.to_string());
        self.bs_meta.push(meta);
        idx
    }

    pub fn agent_init(&mut self, state: u16) {
        self.agent_init = Some(state);
    }

    pub fn bs_init(&mut self, init: BsInit) {
        self.bs_init = init;
    }

    pub fn depth_mode(&mut self, mode: DepthMode) {
        self.depth_mode = mode;
    }

    /// Agent-agent rule for the ordered pair `(p, q)`.
    pub fn rule(&mut self, p: u16, q: u16, p2: u16, q2: u16) {
        self.rules.push((p, q, p2, q2));
    }

    /// Agent-agent rule plus its mirror `(q, p) -> (q2, p2)`.
    pub fn rule_sym(&mut self, p: u16, q: u16, p2: u16, q2: u16) {
        self.rule(p, q, p2, q2);
        if p != q {
            self.rule(q, p, q2, p2);
        }
    }

    /// Base-station rule for the ordered pair `(bs, agent)` plus its mirror
    /// orientation `(agent, bs)`; interactions with the base station do not
    /// distinguish initiator from responder.
    pub fn bs_rule_sym(&mut self, b: u16, q: u16, b2: u16, q2: u16) {
        self.bs_rules.push((b, q, b2, q2));
        self.ab_rules.push((q, b, q2, b2));
    }

    pub fn build(self) -> ProtocolSpec {
        let na = self.agent_states.len();
        let nb = self.bs_states.len();
        assert!(na > 0, "protocol needs at least one agent state");
        let mut aa: Vec<(u16, u16)> = (0..na as u16)
            .flat_map(|p| (0..na as u16).map(move |q| (p, q)))
            .collect();
        for (p, q, p2, q2) in &self.rules {
            aa[*p as usize * na + *q as usize] = (*p2, *q2);
        }
        let mut ba: Vec<(u16, u16)> = (0..nb as u16)
            .flat_map(|b| (0..na as u16).map(move |q| (b, q)))
            .collect();
        for (b, q, b2, q2) in &self.bs_rules {
            ba[*b as usize * na + *q as usize] = (*b2, *q2);
        }
        let mut ab: Vec<(u16, u16)> = (0..na as u16)
            .flat_map(|p| (0..nb as u16).map(move |b| (p, b)))
            .collect();
        for (p, b, p2, b2) in &self.ab_rules {
            ab[*p as usize * nb + *b as usize] = (*p2, *b2);
        }
        let agent_index = self
            .agent_states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u16))
            .collect();
        let bs_index = self
            .bs_states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u16))
            .collect();
        ProtocolSpec {
            name: self.name,
            agent_states: self.agent_states,
            agent_index,
            bs_states: self.bs_states,
            bs_index,
            meta: self.meta,
            bs_meta: self.bs_meta,
            aa,
            ba,
            ab,
            agent_init: self.agent_init.expect("agent_init must be set"),
            bs_init: self.bs_init,
            depth_mode: self.depth_mode,
        }
    }
}

/// Errors unless protocol and graph agree about the base station.
pub fn check_compatible(p: &ProtocolSpec, g: &CommGraph) -> Result<()> {
    if p.has_bs() != g.has_bs() {
        return Err(Error::ProtocolGraphMismatch(format!(
            "protocol {} {} a base station but the graph {}",
            p.name(),
            if p.has_bs() { "expects" } else { "does not expect" },
            if g.has_bs() { "has one" } else { "has none" },
        )));
    }
    Ok(())
}

fn check_config(p: &ProtocolSpec, g: &CommGraph, c: &Configuration) -> Result<()> {
    if c.agents.len() != g.n_agents() {
        return Err(Error::CorruptConfiguration(format!(
            "{} agent entries for a graph with {} agents",
            c.agents.len(),
            g.n_agents()
        )));
    }
    if let Some(&s) = c.agents.iter().find(|&&s| s as usize >= p.agent_state_count()) {
        return Err(Error::CorruptConfiguration(format!(
            "agent state index {s} out of range for protocol {}",
            p.name()
        )));
    }
    match (c.bs, p.has_bs()) {
        (Some(b), true) => {
            if b as usize >= p.bs_state_count() {
                return Err(Error::CorruptConfiguration(format!(
                    "base-station state index {b} out of range for protocol {}",
                    p.name()
                )));
            }
        }
        (None, false) => {}
        (Some(_), false) => {
            return Err(Error::CorruptConfiguration(
                "configuration has a base-station state but the protocol has none".into(),
            ))
        }
        (None, true) => {
            return Err(Error::CorruptConfiguration(
                "configuration is missing the base-station state".into(),
            ))
        }
    }
    Ok(())
}

/// Applies one interaction. Only the two endpoints may change.
pub fn apply(p: &ProtocolSpec, g: &CommGraph, c: &Configuration, i: Interaction) -> Result<Configuration> {
    check_compatible(p, g)?;
    check_config(p, g, c)?;
    let mut out = c.clone();
    match (i.initiator, i.responder) {
        (Endpoint::Agent(x), Endpoint::Agent(y)) => {
            if x >= g.n_agents() || y >= g.n_agents() || !g.is_agent_edge(x, y) {
                return Err(Error::IllegalInteraction(format!(
                    "agents {x} and {y} are not adjacent"
                )));
            }
            let (sx, sy) = p.delta_aa(c.agents[x], c.agents[y]);
            out.agents[x] = sx;
            out.agents[y] = sy;
        }
        (Endpoint::BaseStation, Endpoint::Agent(y)) => {
            if !g.has_bs() {
                return Err(Error::ProtocolGraphMismatch(
                    "interaction names a base station but there is none".into(),
                ));
            }
            if y >= g.n_agents() || !g.is_bs_edge(y) {
                return Err(Error::IllegalInteraction(format!(
                    "agent {y} is not adjacent to the base station"
                )));
            }
            let (sb, sy) = p.delta_ba(c.bs.unwrap(), c.agents[y]);
            out.bs = Some(sb);
            out.agents[y] = sy;
        }
        (Endpoint::Agent(x), Endpoint::BaseStation) => {
            if !g.has_bs() {
                return Err(Error::ProtocolGraphMismatch(
                    "interaction names a base station but there is none".into(),
                ));
            }
            if x >= g.n_agents() || !g.is_bs_edge(x) {
                return Err(Error::IllegalInteraction(format!(
                    "agent {x} is not adjacent to the base station"
                )));
            }
            let (sx, sb) = p.delta_ab(c.agents[x], c.bs.unwrap());
            out.agents[x] = sx;
            out.bs = Some(sb);
        }
        (Endpoint::BaseStation, Endpoint::BaseStation) => {
            return Err(Error::IllegalInteraction(
                "the base station cannot interact with itself".into(),
            ))
        }
    }
    Ok(out)
}

/// Every ordered adjacent pair of the graph in canonical order:
/// initiator-major, responder-minor, base station before agent 0.
pub fn ordered_pairs(g: &CommGraph) -> Vec<Interaction> {
    let mut out = Vec::new();
    if g.has_bs() {
        for a in g.bs_edges() {
            out.push(Interaction::new(Endpoint::BaseStation, Endpoint::Agent(a)));
        }
    }
    for u in 0..g.n_agents() {
        if g.has_bs() && g.is_bs_edge(u) {
            out.push(Interaction::new(Endpoint::Agent(u), Endpoint::BaseStation));
        }
        for v in g.neighbors(u) {
            out.push(Interaction::new(Endpoint::Agent(u), Endpoint::Agent(v)));
        }
    }
    out
}

/// All ordered adjacent pairs whose transition is non-null in `c`, in
/// canonical order. Empty result means the configuration is silent.
pub fn enabled(p: &ProtocolSpec, g: &CommGraph, c: &Configuration) -> Result<Vec<Interaction>> {
    check_compatible(p, g)?;
    check_config(p, g, c)?;
    let mut out = Vec::new();
    for i in ordered_pairs(g) {
        let non_null = match (i.initiator, i.responder) {
            (Endpoint::Agent(x), Endpoint::Agent(y)) => {
                p.delta_aa(c.agents[x], c.agents[y]) != (c.agents[x], c.agents[y])
            }
            (Endpoint::BaseStation, Endpoint::Agent(y)) => {
                p.delta_ba(c.bs.unwrap(), c.agents[y]) != (c.bs.unwrap(), c.agents[y])
            }
            (Endpoint::Agent(x), Endpoint::BaseStation) => {
                p.delta_ab(c.agents[x], c.bs.unwrap()) != (c.agents[x], c.bs.unwrap())
            }
            _ => unreachable!("ordered_pairs never yields (bs, bs)"),
        };
        if non_null {
            out.push(i);
        }
    }
    Ok(out)
}

/// Counts agents by output color: `(reds, blues)`.
pub fn color_counts(p: &ProtocolSpec, c: &Configuration) -> (usize, usize) {
    let mut red = 0;
    let mut blue = 0;
    for &s in &c.agents {
        match p.color(s) {
            Color::Red => red += 1,
            Color::Blue => blue += 1,
        }
    }
    (red, blue)
}

/// Signed imbalance `#red - #blue`.
pub fn imbalance(p: &ProtocolSpec, c: &Configuration) -> i64 {
    let (r, b) = color_counts(p, c);
    r as i64 - b as i64
}

/// True iff for every rule `(p, q) -> (p', q')` the mirror rule
/// `(q, p) -> (q', p')` exists, including both base-station orientations.
pub fn is_symmetric(p: &ProtocolSpec) -> bool {
    let na = p.agent_state_count() as u16;
    for a in 0..na {
        for b in 0..na {
            let (a2, b2) = p.delta_aa(a, b);
            if p.delta_aa(b, a) != (b2, a2) {
                return false;
            }
        }
    }
    let nb = p.bs_state_count() as u16;
    for s in 0..nb {
        for a in 0..na {
            let (s2, a2) = p.delta_ba(s, a);
            if p.delta_ab(a, s) != (a2, s2) {
                return false;
            }
        }
    }
    true
}
