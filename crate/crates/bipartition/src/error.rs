//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Error`]. The CLI maps
//! variants onto process exit codes (see `cli`), so variant identity is part
//! of the public contract, not just the message text.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A size parameter (agent count, modulus bound, depth bound) is outside
    /// its documented domain.
    #[error("invalid size: {0}")]
    InvalidSize(String),

    /// A base-station attachment set is empty or names a vertex that does
    /// not exist.
    #[error("invalid base-station attachment: {0}")]
    InvalidBsAttachment(String),

    /// A gadget was asked to bridge across a pair that is not an edge of the
    /// base graph.
    #[error("({0}, {1}) is not an edge of the base graph")]
    NotAnEdge(usize, usize),

    /// The cyclic-depth modulus must be at least 3.
    #[error("invalid modulus: l = {0}, need l >= 3")]
    InvalidModulus(u32),

    /// An edge is malformed: self-loop, duplicate, or endpoint out of range.
    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    /// The communication graph (agents plus base station, when present) must
    /// be connected.
    #[error("graph is not connected")]
    Disconnected,

    /// The operation is only implemented up to a stated input size.
    #[error("not supported: {0}")]
    NotSupported(String),

    /// An interaction names endpoints that are not adjacent in the graph, or
    /// a base-station endpoint on a graph without one.
    #[error("illegal interaction: {0}")]
    IllegalInteraction(String),

    /// A configuration does not type-check against the protocol and graph it
    /// was paired with.
    #[error("corrupt configuration: {0}")]
    CorruptConfiguration(String),

    /// A scripted schedule ran out of entries before the step budget.
    #[error("scripted schedule exhausted after {0} steps")]
    ScheduleExhausted(usize),

    /// The a-priori bound on the configuration space exceeds the exploration
    /// cap.
    #[error("state space too large: bound {bound} exceeds cap {cap}")]
    StateSpaceTooLarge { bound: u128, cap: u64 },

    /// A trace does not match the protocol or graph it is being replayed on.
    #[error("incompatible trace: {0}")]
    IncompatibleTrace(String),

    /// The predicate is not defined for this protocol's state space.
    #[error("predicate {0} is not applicable to protocol {1}")]
    InapplicablePredicate(String, String),

    /// Protocol and graph disagree about the presence of a base station.
    #[error("protocol/graph mismatch: {0}")]
    ProtocolGraphMismatch(String),

    /// A textual graph description, protocol name, or schedule string failed
    /// to parse.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
