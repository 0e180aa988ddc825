//! Support counting against the full database, instrumented with scan counters.
//!
//! A *database scan* is one pass over every transaction. [`support_batch`]
//! counts any number of candidates in a single scan, which is what lets the
//! top-down miner stay at a handful of scans.

use std::collections::HashMap;
use std::time::Duration;

use crate::db::TransactionDb;
use crate::error::Result;
use crate::itemset::ItemSet;

/// Counters collected while mining.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunMetrics {
    /// Full passes over all transactions.
    pub db_scans: u64,
    /// Per-itemset support evaluations.
    pub support_calls: u64,
    pub candidates_generated: u64,
    pub wall_time: Duration,
}

/// Wall-clock timer. `wasm32-unknown-unknown` has no clock, so there it
/// always reads zero.
pub(crate) struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    pub(crate) fn elapsed(&self) -> Duration {
        #[cfg(not(target_arch = "wasm32"))]
        return self.start.elapsed();
        #[cfg(target_arch = "wasm32")]
        return Duration::ZERO;
    }
}

impl RunMetrics {
    pub fn record_scan(&mut self) {
        self.db_scans += 1;
    }
}

/// `σ(x)`: number of transactions containing `x`.
pub fn support(x: &ItemSet, db: &TransactionDb) -> Result<usize> {
    db.check(x)?;
    Ok(db
        .transactions()
        .iter()
        .filter(|t| x.is_subset_unchecked(t))
        .count())
}

/// Counts every candidate in one pass over `db`, returning counts aligned
/// with `candidates`. Adds one scan and `candidates.len()` support calls.
pub fn count_candidates(
    candidates: &[ItemSet],
    db: &TransactionDb,
    metrics: &mut RunMetrics,
) -> Result<Vec<usize>> {
    for c in candidates {
        db.check(c)?;
    }
    metrics.record_scan();
    metrics.support_calls += candidates.len() as u64;
    Ok(count_pass(candidates, db.transactions()))
}

#[cfg(feature = "parallel")]
fn count_pass(candidates: &[ItemSet], transactions: &[ItemSet]) -> Vec<usize> {
    use rayon::prelude::*;

    // Below this the thread hand-off costs more than the pass itself.
    const PARALLEL_WORK: usize = 1 << 16;
    if candidates.len() * transactions.len() < PARALLEL_WORK {
        return count_serial(candidates, transactions);
    }
    let chunk = candidates.len().div_ceil(rayon::current_num_threads()).max(1);
    candidates
        .par_chunks(chunk)
        .flat_map_iter(|part| count_serial(part, transactions))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn count_pass(candidates: &[ItemSet], transactions: &[ItemSet]) -> Vec<usize> {
    count_serial(candidates, transactions)
}

fn count_serial(candidates: &[ItemSet], transactions: &[ItemSet]) -> Vec<usize> {
    let mut counts = vec![0usize; candidates.len()];
    for t in transactions {
        for (count, c) in counts.iter_mut().zip(candidates) {
            if c.is_subset_unchecked(t) {
                *count += 1;
            }
        }
    }
    counts
}

/// Map form of [`count_candidates`]. Duplicate candidates collapse to one key
/// but still count as separate support calls.
pub fn support_batch(
    candidates: &[ItemSet],
    db: &TransactionDb,
    metrics: &mut RunMetrics,
) -> Result<HashMap<ItemSet, usize>> {
    let counts = count_candidates(candidates, db, metrics)?;
    Ok(candidates.iter().cloned().zip(counts).collect())
}
