//! Linear orders described by terms over finite orders, `ω^k` and `η`.

mod bf;
mod ordinal;
mod term;
mod types;

use thiserror::Error;

pub(crate) use bf::Slot;
pub use bf::{
    closed_form, finite_threshold_table, lo_bf_leq, JumpSpec, LoBf, LoBfConfig, ThresholdTable,
    Verdict,
};

pub use ordinal::{ordinal_leq, Card, Ordinal};
pub use term::{parse_term, parse_term_raw, OrderTerm};
pub use types::{
    coefficient_vectors, cut_schemas, interval_decompose, Atom, Coord, CutKind, CutSchema,
    OrderType, PointedTerm, Position,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("term syntax error at {pos}: {msg}")]
pub struct TermParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("no atom with index {0}")]
    NoSuchAtom(usize),
    #[error("coordinate {0} does not fit its atom")]
    BadCoordinate(String),
    #[error("points must be strictly ascending")]
    NotAscending,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoBfError {
    #[error("level {level} exceeds configured maximum {max}")]
    LevelOverflow { level: u32, max: u32 },
}
