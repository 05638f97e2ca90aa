use crate::{valuation, Grundy, Ord2Value, Position};

/// Closed-form Grundy value.
///
/// Zero for the end position or when an even number of piles attain the
/// minimum 2-adic valuation `lambda`; otherwise `lambda + 1`.
pub fn sg_formula(position: &Position) -> Grundy {
    let v = valuation(position);
    match v.lambda {
        Ord2Value::Finite(lambda) if v.iota % 2 == 1 => lambda + 1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn sg(p: &[u64]) -> Grundy {
        sg_formula(&Position::new(p.to_vec()).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(sg(&[0, 0, 0]), 0);
        assert_eq!(sg(&[0]), 0);
        assert_eq!(sg(&[6, 3, 2]), 1);
        assert_eq!(sg(&[4, 0]), 3);
        assert_eq!(sg(&[2, 2]), 0);
        assert_eq!(sg(&[1 << 63]), 64);
    }

    proptest! {
        #[test]
        fn permutation_invariant(mut piles in prop::collection::vec(0u64..1000, 1..6), seed in any::<u64>()) {
            let before = sg(&piles);
            // Deterministic shuffle from the seed.
            let mut s = seed;
            for i in (1..piles.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (s >> 33) as usize % (i + 1);
                piles.swap(i, j);
            }
            prop_assert_eq!(sg(&piles), before);
        }

        #[test]
        fn doubling(piles in prop::collection::vec(0u64..(1 << 40), 1..6)) {
            prop_assume!(piles.iter().any(|&n| n != 0));
            let doubled: Vec<u64> = piles.iter().map(|n| n * 2).collect();
            let v = valuation(&Position::new(piles.clone()).unwrap());
            let expected = if v.iota % 2 == 1 { sg(&piles) + 1 } else { 0 };
            prop_assert_eq!(sg(&doubled), expected);
        }
    }

    #[test]
    fn doubling_even_iota_stays_zero() {
        assert_eq!(sg(&[3, 5]), 0);
        assert_eq!(sg(&[6, 10]), 0);
    }
}
