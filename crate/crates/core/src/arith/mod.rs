//! Cantor pairing, set and sequence codes, and bounded arithmetic formulas.

mod coding;
mod formula;
mod sexpr;

use thiserror::Error;

pub use coding::{
    decode_seq, decode_seq_u64, decode_set, encode_seq, encode_seq_u64, encode_set, pair, pair_u64,
    seq_concat, seq_len, unpair, Natural, SequenceCode,
};
pub use formula::{eval_delta0, truth, truth_of, Formula, Term};
pub use sexpr::{parse_formula, parse_term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("not a sequence code")]
    NotASequence,
    #[error("value too large to encode")]
    TooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable v{0} is not assigned")]
    UnboundVariable(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}
