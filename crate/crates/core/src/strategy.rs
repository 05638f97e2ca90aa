//! Perfect play: explicit moves to any smaller Grundy value.

use core::fmt;

use crate::{apply_move, legal_moves, ord2, sg_formula, valuation, Error, Grundy, Move, Position};

/// Game-theoretic status of a position for the player to move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Outcome {
    Winning,
    Losing,
    Terminal,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Winning => "winning",
            Outcome::Losing => "losing",
            Outcome::Terminal => "terminal",
        })
    }
}

pub fn classify(position: &Position) -> Outcome {
    if position.is_terminal() {
        Outcome::Terminal
    } else if sg_formula(position) == 0 {
        Outcome::Losing
    } else {
        Outcome::Winning
    }
}

/// A legal move from `position` to a successor of Grundy value `target`.
///
/// Requires `target < sg_formula(position)`. The move is chosen as follows,
/// always taking the lowest qualifying pile index:
///
/// * `target > 0`: subtract `2^(target - 1)` from a pile of minimal valuation;
/// * `target == 0` with one nonzero pile: empty that pile;
/// * `target == 0` with three or more piles of minimal valuation `lambda`:
///   subtract `2^lambda` from one of them;
/// * `target == 0` with a unique pile of minimal valuation: subtract
///   `2^lambda` from a pile of the next-smallest valuation.
///
/// The result is checked against the closed form before returning.
pub fn move_to_value(position: &Position, target: Grundy) -> Result<Move, Error> {
    let current = sg_formula(position);
    if target >= current {
        return Err(Error::TargetUnreachable { target, current });
    }
    // current > 0, so the position is nonzero, iota is odd and lambda finite.
    let v = valuation(position);
    let lambda = v.lambda.finite().expect("nonzero position");
    let s = v.lambda_index;
    let mv = if target > 0 {
        Move::new(s, 1 << (target - 1))
    } else if position.nonzero_piles() == 1 {
        Move::new(s, position[s])
    } else if v.iota >= 3 {
        Move::new(s, 1 << lambda)
    } else {
        let t = position
            .piles()
            .iter()
            .position(|&n| ord2(n) == v.mu)
            .expect("mu is attained");
        Move::new(t, 1 << lambda)
    };
    let reached = sg_formula(&apply_move(position, mv)?);
    if reached != target {
        return Err(Error::Inconsistent { target, reached });
    }
    Ok(mv)
}

/// Recommendation for the player to move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategyAdvice {
    pub status: Outcome,
    /// Grundy value of the current position.
    pub sg: Grundy,
    /// A move to a zero-valued successor; present iff `status` is winning.
    pub recommended: Option<Move>,
    /// First legal move, offered from losing positions where no move is recommended.
    pub fallback: Option<Move>,
    /// Grundy value of the successor reached by `recommended`, or by `fallback`.
    pub target_sg: Option<Grundy>,
}

impl StrategyAdvice {
    /// The move an engine should play: the recommendation, else the fallback.
    pub fn engine_move(&self) -> Option<Move> {
        self.recommended.or(self.fallback)
    }
}

pub fn best_move(position: &Position) -> StrategyAdvice {
    let sg = sg_formula(position);
    match classify(position) {
        Outcome::Terminal => StrategyAdvice {
            status: Outcome::Terminal,
            sg,
            recommended: None,
            fallback: None,
            target_sg: None,
        },
        Outcome::Losing => {
            let fallback = legal_moves(position).first().copied();
            let target_sg = fallback
                .and_then(|mv| apply_move(position, mv).ok())
                .map(|p| sg_formula(&p));
            StrategyAdvice {
                status: Outcome::Losing,
                sg,
                recommended: None,
                fallback,
                target_sg,
            }
        }
        Outcome::Winning => {
            let mv = move_to_value(position, 0).expect("winning position has a move to value 0");
            StrategyAdvice {
                status: Outcome::Winning,
                sg,
                recommended: Some(mv),
                fallback: None,
                target_sg: Some(0),
            }
        }
    }
}
