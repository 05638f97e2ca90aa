//! Timed grid verification, optionally spread over a thread pool.

use std::time::Instant;

use cdnim_core::oracle::{
    mex_of_successors, verify_grid, GridTable, Mismatch, SgStore, SumLayer, VerifyOptions,
    VerifyReport, DEFAULT_GRID_CAP,
};
use cdnim_core::{Error, Grundy, Position};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub cap: u64,
    pub symmetric: bool,
    /// Worker threads; 1 runs the plain sequential sweep, 0 uses all cores.
    pub threads: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            cap: DEFAULT_GRID_CAP,
            symmetric: false,
            threads: 1,
        }
    }
}

/// Compares `formula` with the oracle on `{0..=bound}^dims` and records the wall time.
pub fn verify<F>(
    dims: usize,
    bound: u64,
    config: VerifyConfig,
    formula: F,
) -> Result<VerifyReport, Error>
where
    F: Fn(&Position) -> Grundy + Sync,
{
    let start = Instant::now();
    let options = VerifyOptions {
        cap: config.cap,
        symmetric: config.symmetric,
    };
    let mut report = if config.threads == 1 {
        verify_grid(dims, bound, options, formula)?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .expect("thread pool");
        pool.install(|| verify_layered(dims, bound, options, &formula))?
    };
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

// Positions of equal pile sum never reach each other, so each layer is
// evaluated in parallel against the finished lower layers.
fn verify_layered<F>(
    dims: usize,
    bound: u64,
    options: VerifyOptions,
    formula: &F,
) -> Result<VerifyReport, Error>
where
    F: Fn(&Position) -> Grundy + Sync,
{
    let mut table = GridTable::new(dims, bound, options.cap)?;
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    let max_sum = bound.saturating_mul(dims as u64);
    for sum in 0..=max_sum {
        let layer: Vec<Position> = SumLayer::new(dims, bound, sum).collect();
        let computed: Vec<Option<Grundy>> = layer
            .par_iter()
            .map(|p| {
                if options.symmetric && !p.piles().is_sorted() {
                    None
                } else {
                    Some(mex_of_successors(p, &table).expect("lower layers complete"))
                }
            })
            .collect();
        for (p, v) in layer.iter().zip(&computed) {
            if let Some(v) = v {
                table.insert(p.piles(), *v);
            }
        }
        for (p, v) in layer.into_iter().zip(computed) {
            let oracle = match v {
                Some(v) => v,
                None => {
                    let mut sorted = p.piles().to_vec();
                    sorted.sort_unstable();
                    let v = table.get(&sorted).expect("sorted permutation computed");
                    table.insert(p.piles(), v);
                    v
                }
            };
            let expected = formula(&p);
            if expected != oracle {
                mismatches.push(Mismatch {
                    position: p,
                    formula: expected,
                    oracle,
                });
            }
            checked += 1;
        }
    }
    Ok(VerifyReport {
        dims,
        bound,
        checked,
        mismatches,
        elapsed: None,
    })
}
