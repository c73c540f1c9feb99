//! Crate error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node number must be at least 1")]
    ZeroNode,

    #[error("operation not defined for tree flavor {0}")]
    UnsupportedFlavor(String),

    #[error("level {requested} exceeds the configured cap {cap}")]
    LevelCap { requested: usize, cap: usize },

    #[error("sector index {0} out of range 1..=5")]
    BadSector(u8),

    #[error("node {0} lies beyond the materialized oracle (cap {1} levels)")]
    BeyondOracle(u64, usize),

    #[error("invalid tile address: {0}")]
    BadAddress(String),

    #[error("{p},{q} violates the hyperbolicity condition 1/p + 1/q < 1/2")]
    NotHyperbolic { p: u32, q: u32 },

    #[error("numerically degenerate input: {0}")]
    Degenerate(String),

    #[error("coloring references tile {0} absent from the ball")]
    UnknownTile(String),

    #[error("color propagation dead-end at tile {0}")]
    DeadEnd(String),

    #[error("invalid assortment word: {0}")]
    BadAssortment(String),

    #[error("invalid path: tiles {0} and {1} are not adjacent")]
    NotAdjacent(String, String),

    #[error("pump indices must satisfy 0 <= i < j <= n along the descent segment")]
    BadPumpSite,

    #[error("rule parse error at line {line}: {msg}")]
    RuleParse { line: usize, msg: String },

    #[error("conflicting rules at line {line}: same left side, different new state")]
    RuleConflict { line: usize },

    #[error("no rule for tile {tile} with tuple ({tuple})")]
    MissingRule { tile: String, tuple: String },

    #[error("malformed DFA: {0}")]
    BadDfa(String),

    #[error("empty ball")]
    EmptyBall,

    #[error("{0}")]
    Msg(String),
}
