use alloc::vec::Vec;

use crate::Error;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Greatest common divisor of all piles, with 0 as the identity.
///
/// Returns `None` for the all-zero position.
pub fn position_gcd(piles: &[u64]) -> Option<u64> {
    match piles.iter().fold(0, |g, &n| gcd(g, n)) {
        0 => None,
        g => Some(g),
    }
}

/// All positive divisors of `n > 0` in ascending order, by trial division up to `sqrt(n)`.
pub fn divisors_of(n: u64) -> Vec<u64> {
    debug_assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The positive integers dividing every pile, ascending.
pub fn common_divisors(piles: &[u64]) -> Result<Vec<u64>, Error> {
    position_gcd(piles)
        .map(divisors_of)
        .ok_or(Error::TerminalPosition)
}
