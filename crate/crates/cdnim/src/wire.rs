//! JSON shapes shared by the machine output format and the HTTP service.
//!
//! Pile indices on the wire are 1-based.

use cdnim_core::strategy::{Outcome, StrategyAdvice};
use cdnim_core::{apply_move, legal_moves, Grundy, Move, MoveError, Position};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireMove {
    pub index: usize,
    pub amount: u64,
}

impl WireMove {
    pub fn from_core(mv: Move) -> Self {
        WireMove {
            index: mv.index + 1,
            amount: mv.amount,
        }
    }

    /// Converts to a zero-based move, rejecting indices outside `1..=piles`.
    pub fn to_core(self, piles: usize) -> Result<Move, MoveError> {
        if self.index == 0 || self.index > piles {
            return Err(MoveError::IndexOutOfRange {
                index: self.index,
                len: piles,
            });
        }
        Ok(Move::new(self.index - 1, self.amount))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub index: usize,
    pub amount: u64,
    pub successor: Vec<u64>,
}

impl MoveRecord {
    pub fn new(position: &Position, mv: Move) -> Self {
        let successor = apply_move(position, mv).expect("legal move").into_piles();
        MoveRecord {
            index: mv.index + 1,
            amount: mv.amount,
            successor,
        }
    }
}

pub fn move_records(position: &Position) -> Vec<MoveRecord> {
    legal_moves(position)
        .into_iter()
        .map(|mv| MoveRecord::new(position, mv))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdviceRecord {
    pub status: Outcome,
    pub sg: Grundy,
    #[serde(rename = "move")]
    pub recommended: Option<MoveRecord>,
    pub fallback: Option<MoveRecord>,
    pub target_sg: Option<Grundy>,
}

impl AdviceRecord {
    pub fn new(position: &Position, advice: &StrategyAdvice) -> Self {
        AdviceRecord {
            status: advice.status,
            sg: advice.sg,
            recommended: advice.recommended.map(|mv| MoveRecord::new(position, mv)),
            fallback: advice.fallback.map(|mv| MoveRecord::new(position, mv)),
            target_sg: advice.target_sg,
        }
    }
}
