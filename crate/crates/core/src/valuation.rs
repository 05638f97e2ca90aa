use crate::{ord2, Ord2Value, Position};

/// Summary of the 2-adic valuations of a position's piles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Valuation {
    /// Minimum valuation over all piles.
    pub lambda: Ord2Value,
    /// Number of piles attaining `lambda`.
    pub iota: usize,
    /// Lowest index of a pile attaining `lambda`.
    pub lambda_index: usize,
    /// Minimum valuation over every pile except `lambda_index`; `Infinity` for one pile.
    /// Only used when `iota == 1`.
    pub mu: Ord2Value,
}

pub fn valuation(position: &Position) -> Valuation {
    let mut lambda = Ord2Value::Infinity;
    let mut iota = 0;
    let mut lambda_index = 0;
    for (i, &n) in position.piles().iter().enumerate() {
        let v = ord2(n);
        if v < lambda || i == 0 {
            lambda = v;
            iota = 1;
            lambda_index = i;
        } else if v == lambda {
            iota += 1;
        }
    }
    let mu = position
        .piles()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != lambda_index)
        .map(|(_, &n)| ord2(n))
        .min()
        .unwrap_or(Ord2Value::Infinity);
    Valuation {
        lambda,
        iota,
        lambda_index,
        mu,
    }
}
