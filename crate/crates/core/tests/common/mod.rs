#![allow(dead_code)]

use mfif::{ItemSet, ItemUniverse, SupportThreshold, TransactionDb};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn twelve() -> ItemSet {
    ItemSet::from_items(20, [1, 2, 3, 4, 5, 11, 12, 13, 14, 15, 16, 19]).unwrap()
}

/// A random small database: up to `max_items` items, up to `max_rows`
/// transactions, each with its own cell density.
pub fn random_db(rng: &mut ChaCha8Rng, max_items: usize, max_rows: usize) -> TransactionDb {
    let n = rng.random_range(1..=max_items);
    let m = rng.random_range(1..=max_rows);
    let density = rng.random_range(0.2..0.8);
    let rows = (0..m)
        .map(|_| {
            let flags: Vec<bool> = (0..n).map(|_| rng.random_bool(density)).collect();
            ItemSet::from_flags(&flags)
        })
        .collect();
    TransactionDb::new(ItemUniverse::new(n), rows).unwrap()
}

/// Instances for the equivalence suites: `count` databases with a random
/// threshold in 10–60%.
pub fn instances(seed: u64, count: usize) -> Vec<(TransactionDb, SupportThreshold)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let db = random_db(&mut rng, 12, 30);
            let pct = rng.random_range(10..=60) as f64;
            let t = SupportThreshold::from_percent(pct, db.len()).unwrap();
            (db, t)
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
