//! Common Divisor Nim on `m` piles.
//!
//! A move picks one pile and subtracts from it a positive integer that
//! divides every pile (zero piles are divisible by anything). The player who
//! cannot move loses; the all-zero position is the only end position.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! * move generation and application ([`legal_moves`], [`apply_move`]),
//! * 2-adic valuations and the derived position statistics ([`ord2`], [`valuation`]),
//! * the closed-form Grundy value ([`sg_formula`]),
//! * an independent brute-force evaluator by mex recursion ([`oracle`]),
//! * constructive optimal play ([`strategy`]).

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod divisors;
mod error;
mod game;
mod grundy;
mod ord2;
mod valuation;

pub mod oracle;
pub mod strategy;

pub use divisors::{common_divisors, divisors_of, gcd, position_gcd};
pub use error::{Error, MoveError};
pub use game::{apply_move, legal_moves, next_positions, Move, Position};
pub use grundy::sg_formula;
pub use ord2::{ord2, Ord2Value};
pub use valuation::{valuation, Valuation};

/// Grundy values never exceed 64 for `u64` piles, so a `u32` is ample.
pub type Grundy = u32;
