//! Brute-force Grundy values by mex recursion over next positions.
//!
//! Nothing here consults the 2-adic valuations; the only shared code with the
//! closed form is move generation itself.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::{next_positions, Error, Grundy, Position};

/// Default refusal threshold for [`verify_grid`].
pub const DEFAULT_GRID_CAP: u64 = 10_000_000;

/// Smallest nonnegative integer not in `values`.
pub fn mex<I: IntoIterator<Item = Grundy>>(values: I) -> Grundy {
    let mut seen: Vec<bool> = Vec::new();
    for v in values {
        let v = v as usize;
        if v >= seen.len() {
            seen.resize(v + 1, false);
        }
        seen[v] = true;
    }
    seen.iter().position(|&s| !s).unwrap_or(seen.len()) as Grundy
}

/// Storage for computed Grundy values. Entries are write-once.
pub trait SgStore {
    fn get(&self, piles: &[u64]) -> Option<Grundy>;
    fn insert(&mut self, piles: &[u64], value: Grundy);
}

/// Memo table keyed by pile tuples.
///
/// With `symmetric` set, keys are sorted before lookup so permuted positions
/// share one entry.
#[derive(Debug, Clone, Default)]
pub struct MemoTable {
    entries: BTreeMap<Vec<u64>, Grundy>,
    symmetric: bool,
}

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn symmetric() -> Self {
        MemoTable {
            entries: BTreeMap::new(),
            symmetric: true,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn key(&self, piles: &[u64]) -> Vec<u64> {
        let mut key = piles.to_vec();
        if self.symmetric {
            key.sort_unstable();
        }
        key
    }
}

impl SgStore for MemoTable {
    fn get(&self, piles: &[u64]) -> Option<Grundy> {
        if self.symmetric {
            self.entries.get(&self.key(piles)).copied()
        } else {
            self.entries.get(piles).copied()
        }
    }

    fn insert(&mut self, piles: &[u64], value: Grundy) {
        let key = self.key(piles);
        let prev = *self.entries.entry(key).or_insert(value);
        debug_assert_eq!(prev, value, "memo entry changed");
    }
}

/// Dense table over the grid `{0..=bound}^dims`, indexed in lexicographic order.
#[derive(Debug, Clone)]
pub struct GridTable {
    dims: usize,
    bound: u64,
    values: Vec<Grundy>,
}

const ABSENT: Grundy = Grundy::MAX;

impl GridTable {
    pub fn new(dims: usize, bound: u64, cap: u64) -> Result<Self, Error> {
        let size = check_grid(dims, bound, cap)?;
        Ok(GridTable {
            dims,
            bound,
            values: vec![ABSENT; size as usize],
        })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Lexicographic index of `piles`, or `None` outside the grid.
    pub fn index_of(&self, piles: &[u64]) -> Option<usize> {
        if piles.len() != self.dims {
            return None;
        }
        let radix = self.bound as usize + 1;
        piles.iter().try_fold(0usize, |acc, &n| {
            (n <= self.bound).then(|| acc * radix + n as usize)
        })
    }
}

impl SgStore for GridTable {
    fn get(&self, piles: &[u64]) -> Option<Grundy> {
        self.index_of(piles)
            .map(|i| self.values[i])
            .filter(|&v| v != ABSENT)
    }

    fn insert(&mut self, piles: &[u64], value: Grundy) {
        let i = self.index_of(piles).expect("position outside grid");
        debug_assert!(self.values[i] == ABSENT || self.values[i] == value);
        self.values[i] = value;
    }
}

/// Mex over the stored values of all next positions, or `None` if some
/// successor has not been stored yet.
pub fn mex_of_successors<S: SgStore + ?Sized>(position: &Position, store: &S) -> Option<Grundy> {
    let values: Option<Vec<Grundy>> = next_positions(position)
        .iter()
        .map(|p| store.get(p.piles()))
        .collect();
    values.map(mex)
}

/// Grundy value by mex recursion, memoized in `store`.
///
/// Uses an explicit stack, so the depth is bounded by memory rather than the
/// call stack.
pub fn sg_oracle<S: SgStore + ?Sized>(position: &Position, store: &mut S) -> Grundy {
    if let Some(v) = store.get(position.piles()) {
        return v;
    }
    let mut stack = vec![position.clone()];
    while let Some(top) = stack.last() {
        if store.get(top.piles()).is_some() {
            stack.pop();
            continue;
        }
        let next = next_positions(top);
        let missing: Vec<Position> = next
            .iter()
            .filter(|p| store.get(p.piles()).is_none())
            .cloned()
            .collect();
        if missing.is_empty() {
            let value = mex(next.iter().filter_map(|p| store.get(p.piles())));
            store.insert(top.piles(), value);
            stack.pop();
        } else {
            stack.extend(missing);
        }
    }
    store.get(position.piles()).expect("value stored")
}

/// Number of grid positions `(bound + 1)^dims`, or `None` on overflow.
pub fn grid_size(dims: usize, bound: u64) -> Option<u64> {
    let radix = bound.checked_add(1)?;
    (0..dims).try_fold(1u64, |acc, _| acc.checked_mul(radix))
}

/// Validates grid dimensions against `cap` and returns the grid size.
pub fn check_grid(dims: usize, bound: u64, cap: u64) -> Result<u64, Error> {
    if dims == 0 {
        return Err(Error::NoPiles);
    }
    match grid_size(dims, bound) {
        Some(n) if n <= cap && usize::try_from(n).is_ok() => Ok(n),
        positions => Err(Error::ResourceCap { positions, cap }),
    }
}

/// Positions of `{0..=bound}^dims` with pile sum `sum`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct SumLayer {
    bound: u64,
    current: Option<Vec<u64>>,
}

impl SumLayer {
    pub fn new(dims: usize, bound: u64, sum: u64) -> Self {
        assert!(dims > 0);
        let max = bound as u128 * dims as u128;
        let current = (sum as u128 <= max).then(|| {
            let mut piles = vec![0; dims];
            fill_from_right(&mut piles, bound, sum);
            piles
        });
        SumLayer { bound, current }
    }
}

// Lexicographically smallest bounded composition: pack the tail first.
fn fill_from_right(piles: &mut [u64], bound: u64, mut rest: u64) {
    for p in piles.iter_mut().rev() {
        *p = rest.min(bound);
        rest -= *p;
    }
}

impl Iterator for SumLayer {
    type Item = Position;

    fn next(&mut self) -> Option<Position> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut tail = 0u64;
        let mut advanced = false;
        for i in (0..cur.len()).rev() {
            if tail > 0 && cur[i] < self.bound {
                cur[i] += 1;
                fill_from_right(&mut cur[i + 1..], self.bound, tail - 1);
                advanced = true;
                break;
            }
            tail += cur[i];
        }
        if !advanced {
            self.current = None;
        }
        Some(Position::new(out).expect("dims > 0"))
    }
}

/// Every position of `{0..=bound}^dims`, by ascending pile sum then lexicographically.
///
/// All successors of a position come strictly earlier.
pub fn grid_in_sum_order(dims: usize, bound: u64) -> impl Iterator<Item = Position> {
    let max_sum = bound.saturating_mul(dims as u64);
    (0..=max_sum).flat_map(move |s| SumLayer::new(dims, bound, s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub cap: u64,
    /// Reuse the value of the sorted permutation instead of recomputing.
    pub symmetric: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: DEFAULT_GRID_CAP,
            symmetric: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub position: Position,
    pub formula: Grundy,
    pub oracle: Grundy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub dims: usize,
    pub bound: u64,
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
    /// Filled in by callers that have a clock.
    pub elapsed: Option<Duration>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `formula` against the oracle on every position of `{0..=bound}^dims`.
///
/// `formula` is a parameter so that a deliberately wrong evaluator can be
/// checked to produce mismatches.
pub fn verify_grid<F>(
    dims: usize,
    bound: u64,
    options: VerifyOptions,
    formula: F,
) -> Result<VerifyReport, Error>
where
    F: Fn(&Position) -> Grundy,
{
    let mut table = GridTable::new(dims, bound, options.cap)?;
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    let mut sorted = Vec::with_capacity(dims);
    for position in grid_in_sum_order(dims, bound) {
        let piles = position.piles();
        let oracle = if options.symmetric && !piles.is_sorted() {
            sorted.clear();
            sorted.extend_from_slice(piles);
            sorted.sort_unstable();
            // The sorted permutation is lexicographically smallest in its layer.
            let v = table
                .get(&sorted)
                .expect("sorted permutation visited first");
            table.insert(piles, v);
            v
        } else {
            sg_oracle(&position, &mut table)
        };
        let expected = formula(&position);
        if expected != oracle {
            mismatches.push(Mismatch {
                position,
                formula: expected,
                oracle,
            });
        }
        checked += 1;
    }
    Ok(VerifyReport {
        dims,
        bound,
        checked,
        mismatches,
        elapsed: None,
    })
}
