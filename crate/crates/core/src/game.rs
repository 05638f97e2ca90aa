use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use crate::divisors::{divisors_of, position_gcd};
use crate::{Error, MoveError};

/// A position: a fixed-length tuple of pile sizes, at least one pile.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Position(Vec<u64>);

impl Position {
    pub fn new(piles: impl Into<Vec<u64>>) -> Result<Self, Error> {
        let piles = piles.into();
        if piles.is_empty() {
            return Err(Error::NoPiles);
        }
        Ok(Position(piles))
    }

    /// The end position on `m` piles. Panics if `m == 0`.
    pub fn zeros(m: usize) -> Self {
        assert!(m > 0, "a position needs at least one pile");
        Position(alloc::vec![0; m])
    }

    pub fn piles(&self) -> &[u64] {
        &self.0
    }

    pub fn into_piles(self) -> Vec<u64> {
        self.0
    }

    /// Number of piles, `m`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True for the all-zero end position.
    pub fn is_terminal(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    pub fn nonzero_piles(&self) -> usize {
        self.0.iter().filter(|&&n| n != 0).count()
    }

    pub fn pile_sum(&self) -> u128 {
        self.0.iter().map(|&n| n as u128).sum()
    }
}

impl Index<usize> for Position {
    type Output = u64;

    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl AsRef<[u64]> for Position {
    fn as_ref(&self) -> &[u64] {
        &self.0
    }
}

impl TryFrom<Vec<u64>> for Position {
    type Error = Error;

    fn try_from(piles: Vec<u64>) -> Result<Self, Error> {
        Position::new(piles)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Position {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let piles = Vec::<u64>::deserialize(d)?;
        Position::new(piles).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str(")")
    }
}

/// Subtract `amount` from pile `index` (zero-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub index: usize,
    pub amount: u64,
}

impl Move {
    pub fn new(index: usize, amount: u64) -> Self {
        Move { index, amount }
    }
}

/// All legal moves, sorted by `(index, amount)`.
///
/// A zero pile admits no move. The all-zero position yields an empty list.
pub fn legal_moves(position: &Position) -> Vec<Move> {
    let Some(g) = position_gcd(position.piles()) else {
        return Vec::new();
    };
    let divisors = divisors_of(g);
    let mut moves = Vec::new();
    for (index, &pile) in position.piles().iter().enumerate() {
        moves.extend(
            divisors
                .iter()
                .take_while(|&&d| d <= pile)
                .map(|&amount| Move { index, amount }),
        );
    }
    moves
}

pub fn apply_move(position: &Position, mv: Move) -> Result<Position, Error> {
    let len = position.len();
    let pile = *position
        .piles()
        .get(mv.index)
        .ok_or(MoveError::IndexOutOfRange {
            index: mv.index,
            len,
        })?;
    if mv.amount == 0 {
        return Err(MoveError::ZeroAmount.into());
    }
    if mv.amount > pile {
        return Err(MoveError::ExceedsPile {
            amount: mv.amount,
            pile,
        }
        .into());
    }
    // pile > 0 here, so the gcd exists.
    let g = position_gcd(position.piles()).unwrap_or(0);
    if !g.is_multiple_of(mv.amount) {
        return Err(MoveError::NotCommonDivisor {
            amount: mv.amount,
            gcd: g,
        }
        .into());
    }
    let mut piles = position.0.clone();
    piles[mv.index] -= mv.amount;
    Ok(Position(piles))
}

/// The set of next positions, in the order of [`legal_moves`].
pub fn next_positions(position: &Position) -> Vec<Position> {
    legal_moves(position)
        .into_iter()
        .map(|mv| {
            let mut piles = position.0.clone();
            piles[mv.index] -= mv.amount;
            Position(piles)
        })
        .collect()
}
