//! The protocol catalog: five uniform-bipartition protocols.
//!
//! Naming scheme for CLI and reports:
//!
//! * `bs-global3`: 3 agent states plus a 2-state base station; solves under
//!   global fairness.
//! * `bs-weak3p1:P`: 3P+1 agent states (depths up to P) plus a 2-state base
//!   station; solves under weak fairness on graphs with at most P agents.
//! * `bs-weak-mod:l`: 3l+1 agent states with cyclic depth comparison; solves
//!   under weak fairness on graphs where no agent-only simple cycle has
//!   length divisible by l.
//! * `nobs-asym4`: 4 states, no base station, asymmetric.
//! * `nobs-sym5`: 5 states, no base station, symmetric.
//!
//! Token-carrying states are written with a `w` suffix (`rw`, `bw`, `rw0`,
//! `rw1`). Depth-tracked states are written `color:depth` with `_` for the
//! unassigned depth, e.g. `ini:_`, `ini:2`, `r:1`.

use crate::error::{Error, Result};
use crate::model::{BsInit, BsMeta, Color, Depth, DepthMode, ProtocolSpec, StateMeta};

/// Three-state protocol with a base station; solves uniform bipartition
/// under global fairness on every connected graph.
///
/// The base station alternates between handing out red and blue; colored
/// agents swap states with undecided neighbours so an undecided agent can
/// always drift next to the base station.
pub fn bs_global3() -> ProtocolSpec {
    let mut b = ProtocolSpec::builder("bs-global3");
    let ini = b.agent_state("initial", StateMeta::ini(Color::Red));
    let red = b.agent_state("red", StateMeta::plain(Color::Red));
    let blue = b.agent_state("blue", StateMeta::plain(Color::Blue));
    let b_red = b.bs_state("b_red", BsMeta { next_assign: Some(Color::Red) });
    let b_blue = b.bs_state("b_blue", BsMeta { next_assign: Some(Color::Blue) });
    b.agent_init(ini);
    b.bs_init(BsInit::Arbitrary);
    b.bs_rule_sym(b_red, ini, b_blue, red);
    b.bs_rule_sym(b_blue, ini, b_red, blue);
    b.rule_sym(blue, ini, ini, blue);
    b.rule_sym(red, ini, ini, red);
    b.build()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Col {
    Ini,
    R,
    B,
}

/// Depth-tracked agent state used while building the weak-fairness
/// protocols. `depth == None` is the unassigned value and implies `Ini`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct St {
    col: Col,
    depth: Option<u32>,
}

#[derive(Debug, Clone, Copy)]
enum DepthKind {
    Linear { bound: u32 },
    Cyclic { modulus: u32 },
}

impl DepthKind {
    fn max_depth(self) -> u32 {
        match self {
            DepthKind::Linear { bound } => bound,
            DepthKind::Cyclic { modulus } => modulus,
        }
    }

    /// Depth a previously unassigned agent receives from a neighbour at
    /// depth `d`. In the linear protocol the value would exceed the bound
    /// when `d` is already maximal; that situation is unreachable on
    /// admissible graphs, and the assignment is skipped to keep the
    /// transition table total.
    fn propagate(self, d: u32) -> Option<u32> {
        match self {
            DepthKind::Linear { bound } => (d < bound).then_some(d + 1),
            DepthKind::Cyclic { modulus } => Some(d % modulus + 1),
        }
    }

    /// The strict depth order: plain `<` for the linear protocol, the cyclic
    /// successor relation (`l` precedes 1) for the modular one.
    fn lt(self, a: u32, b: u32) -> bool {
        match self {
            DepthKind::Linear { .. } => a < b,
            DepthKind::Cyclic { modulus } => b == a % modulus + 1,
        }
    }
}

/// Pairwise step of the weak-fairness protocols, evaluated top to bottom;
/// each line sees the effects of the lines above it. Comparisons against the
/// unassigned depth never hold in either direction.
fn weak_agent_step(kind: DepthKind, mut x: St, mut y: St) -> (St, St) {
    match (x.depth, y.depth) {
        (None, Some(dy)) => x.depth = kind.propagate(dy),
        (Some(dx), None) => y.depth = kind.propagate(dx),
        _ => {}
    }
    if let (Some(dx), Some(dy)) = (x.depth, y.depth) {
        if kind.lt(dx, dy) && y.col == Col::Ini {
            y.col = x.col;
            x.col = Col::Ini;
        }
        if kind.lt(dy, dx) && x.col == Col::Ini {
            x.col = y.col;
            y.col = Col::Ini;
        }
    }
    (x, y)
}

/// Base-station step shared by both weak-fairness protocols: a depth-1
/// undecided agent is colored with the station's current letter, then any
/// unassigned agent receives depth 1. The guard on the first line reads the
/// depth before the second line assigns it, so an agent is never colored at
/// the meeting that gives it its depth.
fn weak_bs_step(rb: Color, mut x: St) -> (Color, St) {
    let mut rb_out = rb;
    if x.col == Col::Ini && x.depth == Some(1) {
        x.col = match rb {
            Color::Red => Col::R,
            Color::Blue => Col::B,
        };
        rb_out = rb.flip();
    }
    if x.depth.is_none() {
        x.depth = Some(1);
    }
    (rb_out, x)
}

fn build_weak(name: String, kind: DepthKind, depth_mode: DepthMode) -> ProtocolSpec {
    let p = kind.max_depth();
    let mut b = ProtocolSpec::builder(&name);
    let mut states: Vec<St> = vec![St { col: Col::Ini, depth: None }];
    states.extend((1..=p).map(|d| St { col: Col::Ini, depth: Some(d) }));
    states.extend((1..=p).map(|d| St { col: Col::R, depth: Some(d) }));
    states.extend((1..=p).map(|d| St { col: Col::B, depth: Some(d) }));
    let idx_of = |s: St| -> u16 {
        states
            .iter()
            .position(|&t| t == s)
            .expect("weak-protocol state in range") as u16
    };
    for &s in &states {
        let depth = match s.depth {
            None => Depth::Bot,
            Some(d) => Depth::Val(d),
        };
        let (name, meta) = match s.col {
            Col::Ini => (
                match s.depth {
                    None => "ini:_".to_string(),
                    Some(d) => format!("ini:{d}"),
                },
                StateMeta::ini(Color::Red).with_depth(depth),
            ),
            Col::R => (format!("r:{}", s.depth.unwrap()), StateMeta::plain(Color::Red).with_depth(depth)),
            Col::B => (format!("b:{}", s.depth.unwrap()), StateMeta::plain(Color::Blue).with_depth(depth)),
        };
        b.agent_state(&name, meta);
    }
    let rb_r = b.bs_state("r", BsMeta { next_assign: Some(Color::Red) });
    let rb_b = b.bs_state("b", BsMeta { next_assign: Some(Color::Blue) });
    b.agent_init(0);
    b.bs_init(BsInit::Arbitrary);
    b.depth_mode(depth_mode);
    for (i, &x) in states.iter().enumerate() {
        for &y in &states {
            let (x2, y2) = weak_agent_step(kind, x, y);
            if (x2, y2) != (x, y) {
                b.rule(idx_of(x), idx_of(y), idx_of(x2), idx_of(y2));
            }
        }
        for (rb, rb_idx) in [(Color::Red, rb_r), (Color::Blue, rb_b)] {
            let (rb2, x2) = weak_bs_step(rb, x);
            if (rb2, x2) != (rb, x) {
                let rb2_idx = if rb2 == Color::Red { rb_r } else { rb_b };
                b.bs_rule_sym(rb_idx, i as u16, rb2_idx, idx_of(x2));
            }
        }
    }
    b.build()
}

/// Symmetric base-station protocol with 3P+1 agent states; solves uniform
/// bipartition under weak fairness on every connected graph with at most P
/// agents. Depths measure distance from the base station and are assigned
/// once; undecided agents drift toward depth 1 by swapping along strictly
/// decreasing depth, and only depth-1 agents get colored.
pub fn bs_weak_3p1(p: u32) -> Result<ProtocolSpec> {
    if p < 1 {
        return Err(Error::InvalidSize("depth bound P must be at least 1".into()));
    }
    Ok(build_weak(
        format!("bs-weak3p1:{p}"),
        DepthKind::Linear { bound: p },
        DepthMode::Linear { bound: p },
    ))
}

/// Variant of the weak-fairness protocol with 3l+1 agent states and cyclic
/// depth comparison (depth l precedes depth 1). Solves uniform bipartition
/// under weak fairness on graphs where no simple cycle avoiding the base
/// station has length divisible by l; see
/// [`violates_mod_l_condition`](crate::graph::violates_mod_l_condition).
pub fn bs_weak_mod_l(l: u32) -> Result<ProtocolSpec> {
    if l < 3 {
        return Err(Error::InvalidModulus(l));
    }
    Ok(build_weak(
        format!("bs-weak-mod:{l}"),
        DepthKind::Cyclic { modulus: l },
        DepthMode::Cyclic { modulus: l },
    ))
}

/// Four-state asymmetric protocol without a base station; solves uniform
/// bipartition under global fairness on every connected graph with at least
/// two agents. Token-carrying agents (`rw`, `bw`) cancel pairwise, each
/// cancellation coloring one agent of each color.
pub fn nobs_asym4() -> ProtocolSpec {
    let mut b = ProtocolSpec::builder("nobs-asym4");
    let rw = b.agent_state("rw", StateMeta::token(Color::Red, Color::Red));
    let bw = b.agent_state("bw", StateMeta::token(Color::Blue, Color::Blue));
    let r = b.agent_state("r", StateMeta::plain(Color::Red));
    let bl = b.agent_state("b", StateMeta::plain(Color::Blue));
    b.agent_init(rw);
    // Rule 1 is the symmetry breaker and deliberately has no mirror.
    b.rule(rw, rw, r, bl);
    b.rule_sym(rw, bw, bl, bl);
    b.rule_sym(rw, r, r, rw);
    b.rule_sym(bw, bl, bl, bw);
    b.rule_sym(rw, bl, r, bw);
    b.rule_sym(bw, r, bl, rw);
    b.build()
}

/// Five-state symmetric protocol without a base station; solves uniform
/// bipartition under global fairness on every connected graph with at least
/// three agents. Red tokens alternate between two phases (`rw0`, `rw1`) so
/// that two equal tokens flip phase instead of deadlocking; opposite-phase
/// red tokens cancel.
pub fn nobs_sym5() -> ProtocolSpec {
    let mut b = ProtocolSpec::builder("nobs-sym5");
    let rw0 = b.agent_state("rw0", StateMeta::token(Color::Red, Color::Red));
    let rw1 = b.agent_state("rw1", StateMeta::token(Color::Red, Color::Red));
    let bw = b.agent_state("bw", StateMeta::token(Color::Blue, Color::Blue));
    let r = b.agent_state("r", StateMeta::plain(Color::Red));
    let bl = b.agent_state("b", StateMeta::plain(Color::Blue));
    b.agent_init(rw0);
    b.rule_sym(rw0, rw0, rw1, rw1);
    b.rule_sym(rw1, rw1, rw0, rw0);
    b.rule_sym(rw0, rw1, r, bl);
    b.rule_sym(rw0, r, r, rw0);
    b.rule_sym(rw1, r, r, rw0);
    b.rule_sym(bw, bl, bl, bw);
    b.rule_sym(rw0, bl, r, bw);
    b.rule_sym(rw1, bl, r, bw);
    b.rule_sym(bw, r, bl, rw0);
    b.rule_sym(rw0, bw, bl, bl);
    b.rule_sym(rw1, bw, bl, bl);
    b.build()
}

/// Parses a CLI protocol name: `bs-global3`, `bs-weak3p1:P`, `bs-weak-mod:l`,
/// `nobs-asym4`, or `nobs-sym5`.
pub fn parse_protocol(s: &str) -> Result<ProtocolSpec> {
    match s {
        "bs-global3" => return Ok(bs_global3()),
        "nobs-asym4" => return Ok(nobs_asym4()),
        "nobs-sym5" => return Ok(nobs_sym5()),
        _ => {}
    }
    if let Some(p) = s.strip_prefix("bs-weak3p1:") {
        let p: u32 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad depth bound in {s:?}")))?;
        return bs_weak_3p1(p);
    }
    if let Some(l) = s.strip_prefix("bs-weak-mod:") {
        let l: u32 = l
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
        return bs_weak_mod_l(l);
    }
    Err(Error::Parse(format!(
        "unknown protocol {s:?}; expected bs-global3, bs-weak3p1:P, bs-weak-mod:l, nobs-asym4, or nobs-sym5"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Depth;

    #[test]
    fn state_counts() {
        assert_eq!(bs_global3().agent_state_count(), 3);
        for p in [1u32, 2, 4, 8] {
            assert_eq!(bs_weak_3p1(p).unwrap().agent_state_count(), (3 * p + 1) as usize);
        }
        for l in [3u32, 4, 5] {
            assert_eq!(bs_weak_mod_l(l).unwrap().agent_state_count(), (3 * l + 1) as usize);
        }
        assert_eq!(nobs_asym4().agent_state_count(), 4);
        assert_eq!(nobs_sym5().agent_state_count(), 5);
    }

    #[test]
    fn builder_errors() {
        assert!(matches!(bs_weak_3p1(0), Err(Error::InvalidSize(_))));
        assert!(matches!(bs_weak_mod_l(2), Err(Error::InvalidModulus(2))));
    }

    #[test]
    fn global3_rules() {
        let p = bs_global3();
        let ini = p.agent_state("initial").unwrap();
        let red = p.agent_state("red").unwrap();
        let blue = p.agent_state("blue").unwrap();
        let b_red = p.bs_state("b_red").unwrap();
        let b_blue = p.bs_state("b_blue").unwrap();
        assert_eq!(p.delta_ba(b_red, ini), (b_blue, red));
        assert_eq!(p.delta_ba(b_blue, ini), (b_red, blue));
        assert_eq!(p.delta_ab(ini, b_red), (red, b_blue));
        assert_eq!(p.delta_aa(blue, ini), (ini, blue));
        assert_eq!(p.delta_aa(red, ini), (ini, red));
        assert_eq!(p.delta_aa(ini, red), (red, ini));
        // Colored pairs and the station with colored agents are null.
        assert_eq!(p.delta_aa(red, blue), (red, blue));
        assert_eq!(p.delta_ba(b_red, red), (b_red, red));
    }

    #[test]
    fn weak3p1_bs_block() {
        let p = bs_weak_3p1(3).unwrap();
        let rb_r = p.bs_state("r").unwrap();
        let rb_b = p.bs_state("b").unwrap();
        let ini1 = p.agent_state("ini:1").unwrap();
        let ini_bot = p.agent_state("ini:_").unwrap();
        let r1 = p.agent_state("r:1").unwrap();
        let b1 = p.agent_state("b:1").unwrap();
        // Depth-1 undecided agent takes the station's letter; letter flips.
        assert_eq!(p.delta_ba(rb_r, ini1), (rb_b, r1));
        assert_eq!(p.delta_ba(rb_b, ini1), (rb_r, b1));
        // Unassigned agent only receives depth 1: colored at a later meeting.
        assert_eq!(p.delta_ba(rb_r, ini_bot), (rb_r, ini1));
        assert_eq!(p.delta_ab(ini_bot, rb_b), (ini1, rb_b));
        // Already-colored depth-1 agent: null.
        assert_eq!(p.delta_ba(rb_r, r1), (rb_r, r1));
    }

    #[test]
    fn weak3p1_agent_block() {
        let p = bs_weak_3p1(3).unwrap();
        let s = |n: &str| p.agent_state(n).unwrap();
        // Color drifts outward, undecided drifts inward.
        assert_eq!(
            p.delta_aa(s("r:2"), s("ini:3")),
            (s("ini:2"), s("r:3"))
        );
        assert_eq!(
            p.delta_aa(s("ini:3"), s("r:2")),
            (s("r:3"), s("ini:2"))
        );
        // Depth propagation: the unassigned side becomes one deeper, and the
        // color comparison in the same meeting already sees the new depth.
        assert_eq!(
            p.delta_aa(s("ini:_"), s("r:1")),
            (s("r:2"), s("ini:1"))
        );
        assert_eq!(
            p.delta_aa(s("ini:_"), s("ini:2")),
            (s("ini:3"), s("ini:2"))
        );
        // Unassigned depths never compare: two unassigned agents are null.
        assert_eq!(
            p.delta_aa(s("ini:_"), s("ini:_")),
            (s("ini:_"), s("ini:_"))
        );
        // Propagation is skipped at the depth bound (unreachable when the
        // graph has at most P agents); the whole pair is then null.
        assert_eq!(
            p.delta_aa(s("ini:_"), s("r:3")),
            (s("ini:_"), s("r:3"))
        );
        // Equal depths never swap.
        assert_eq!(p.delta_aa(s("r:2"), s("ini:2")), (s("r:2"), s("ini:2")));
    }

    #[test]
    fn weak_mod_l_cyclic_depths() {
        let l = 4;
        let p = bs_weak_mod_l(l).unwrap();
        let s = |n: &str| p.agent_state(n).unwrap();
        // Propagation wraps: a depth-l neighbour hands out depth 1, and the
        // fresh depth-1 agent immediately compares below it.
        assert_eq!(
            p.delta_aa(s("ini:_"), s("r:4")),
            (s("r:1"), s("ini:4"))
        );
        // Plain comparison inside the window.
        assert_eq!(
            p.delta_aa(s("r:3"), s("ini:4")),
            (s("ini:3"), s("r:4"))
        );
        // Cyclic comparison: depth l precedes depth 1.
        assert_eq!(
            p.delta_aa(s("r:4"), s("ini:1")),
            (s("ini:4"), s("r:1"))
        );
        // But depth 1 does not precede depth l, and the colored side never
        // gives up its letter: this pair is null.
        assert_eq!(
            p.delta_aa(s("r:1"), s("ini:4")),
            (s("r:1"), s("ini:4"))
        );
    }

    #[test]
    fn asym4_rules() {
        let p = nobs_asym4();
        let s = |n: &str| p.agent_state(n).unwrap();
        assert_eq!(p.delta_aa(s("rw"), s("rw")), (s("r"), s("b")));
        assert_eq!(p.delta_aa(s("rw"), s("bw")), (s("b"), s("b")));
        assert_eq!(p.delta_aa(s("bw"), s("rw")), (s("b"), s("b")));
        assert_eq!(p.delta_aa(s("rw"), s("r")), (s("r"), s("rw")));
        assert_eq!(p.delta_aa(s("r"), s("rw")), (s("rw"), s("r")));
        assert_eq!(p.delta_aa(s("rw"), s("b")), (s("r"), s("bw")));
        assert_eq!(p.delta_aa(s("bw"), s("r")), (s("b"), s("rw")));
        assert_eq!(p.delta_aa(s("b"), s("b")), (s("b"), s("b")));
        assert_eq!(p.delta_aa(s("r"), s("b")), (s("r"), s("b")));
    }

    #[test]
    fn sym5_rules() {
        let p = nobs_sym5();
        let s = |n: &str| p.agent_state(n).unwrap();
        assert_eq!(p.delta_aa(s("rw0"), s("rw0")), (s("rw1"), s("rw1")));
        assert_eq!(p.delta_aa(s("rw1"), s("rw1")), (s("rw0"), s("rw0")));
        assert_eq!(p.delta_aa(s("rw0"), s("rw1")), (s("r"), s("b")));
        assert_eq!(p.delta_aa(s("rw1"), s("rw0")), (s("b"), s("r")));
        assert_eq!(p.delta_aa(s("rw1"), s("r")), (s("r"), s("rw0")));
        assert_eq!(p.delta_aa(s("rw1"), s("bw")), (s("b"), s("b")));
        assert_eq!(p.delta_aa(s("bw"), s("r")), (s("b"), s("rw0")));
        assert_eq!(p.delta_aa(s("r"), s("bw")), (s("rw0"), s("b")));
        assert_eq!(p.delta_aa(s("bw"), s("bw")), (s("bw"), s("bw")));
    }

    #[test]
    fn depth_metadata_matches_names() {
        let p = bs_weak_3p1(2).unwrap();
        assert_eq!(p.meta(p.agent_state("ini:_").unwrap()).depth, Depth::Bot);
        assert_eq!(p.meta(p.agent_state("r:2").unwrap()).depth, Depth::Val(2));
        assert!(p.meta(p.agent_state("ini:1").unwrap()).is_ini);
        assert!(!p.meta(p.agent_state("b:1").unwrap()).is_ini);
    }

    #[test]
    fn parse_round_trips() {
        for name in ["bs-global3", "bs-weak3p1:4", "bs-weak-mod:3", "nobs-asym4", "nobs-sym5"] {
            assert_eq!(parse_protocol(name).unwrap().name(), name);
        }
        assert!(parse_protocol("bs-weak3p1:x").is_err());
        assert!(parse_protocol("frobnicate").is_err());
    }
}
