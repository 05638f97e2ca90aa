use core::fmt;

use crate::Grundy;

/// Reasons a move is rejected by [`apply_move`](crate::apply_move).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveError {
    IndexOutOfRange { index: usize, len: usize },
    ZeroAmount,
    ExceedsPile { amount: u64, pile: u64 },
    NotCommonDivisor { amount: u64, gcd: u64 },
}

impl fmt::Display for MoveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveError::IndexOutOfRange { index, len } => {
                write!(f, "pile index {index} out of range for {len} piles")
            }
            MoveError::ZeroAmount => f.write_str("amount must be positive"),
            MoveError::ExceedsPile { amount, pile } => {
                write!(f, "amount {amount} exceeds pile size {pile}")
            }
            MoveError::NotCommonDivisor { amount, gcd } => {
                write!(
                    f,
                    "{amount} is not a common divisor of the piles (gcd {gcd})"
                )
            }
        }
    }
}

impl core::error::Error for MoveError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A position needs at least one pile.
    NoPiles,
    /// The all-zero position has infinitely many common divisors.
    TerminalPosition,
    IllegalMove(MoveError),
    /// Asked for a successor value at or above the current Grundy value.
    TargetUnreachable {
        target: Grundy,
        current: Grundy,
    },
    /// A constructed move did not reach the value it was built for.
    Inconsistent {
        target: Grundy,
        reached: Grundy,
    },
    ResourceCap {
        positions: Option<u64>,
        cap: u64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoPiles => f.write_str("a position needs at least one pile"),
            Error::TerminalPosition => {
                f.write_str("the all-zero position has no finite set of common divisors")
            }
            Error::IllegalMove(e) => write!(f, "illegal move: {e}"),
            Error::TargetUnreachable { target, current } => write!(
                f,
                "no move to Grundy value {target} is guaranteed from a position of value {current}"
            ),
            Error::Inconsistent { target, reached } => write!(
                f,
                "internal inconsistency: constructed move reaches value {reached}, expected {target}"
            ),
            Error::ResourceCap { positions: Some(n), cap } => {
                write!(f, "grid has {n} positions, above the cap of {cap}")
            }
            Error::ResourceCap { positions: None, cap } => {
                write!(f, "grid size overflows u64, above the cap of {cap}")
            }
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::IllegalMove(e) => Some(e),
            _ => None,
        }
    }
}

impl From<MoveError> for Error {
    fn from(e: MoveError) -> Self {
        Error::IllegalMove(e)
    }
}
