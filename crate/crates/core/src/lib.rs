//! Back-and-forth relations, α-freeness, Scott ranks and structural jumps.
//!
//! Relations are computed exactly on finite relational structures and
//! symbolically on linear orders described by terms over `n`, `ω^k` and `η`.
//! The [`arith`] and [`bounded`] modules cover pairing, sequence codes,
//! bounded formulas and the bounded relations `≤_n^a` over `[0, B]`.

pub mod arith;
pub mod bounded;
pub mod finite;
pub mod jump;
pub mod order;
pub mod rank;
