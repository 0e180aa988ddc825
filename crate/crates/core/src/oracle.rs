//! Brute-force ground truth over the whole powerset of a small universe.
//!
//! Deliberately shares nothing with the miners: transactions are packed
//! into plain `u64` masks and every one of the `2^n` itemsets is counted
//! directly.

use std::collections::BTreeMap;

use crate::db::TransactionDb;
use crate::error::{MiningError, Result};
use crate::itemset::ItemSet;
use crate::threshold::SupportThreshold;

pub const DEFAULT_LIMIT: usize = 20;

fn masks(db: &TransactionDb, limit: usize) -> Result<Vec<u64>> {
    let n = db.item_count();
    if n > limit.min(63) {
        return Err(MiningError::UniverseTooLarge {
            size: n,
            limit: limit.min(63),
        });
    }
    Ok(db
        .transactions()
        .iter()
        .map(|t| t.to_flags().iter().enumerate().fold(0u64, |m, (i, f)| m | (u64::from(*f) << i)))
        .collect())
}

fn unpack(mask: u64, n: usize) -> ItemSet {
    let flags: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
    ItemSet::from_flags(&flags)
}

/// Every itemset with support at least `min_sup`, including `∅`.
pub fn oracle_frequent(db: &TransactionDb, min_sup: SupportThreshold) -> Result<BTreeMap<ItemSet, usize>> {
    oracle_frequent_with_limit(db, min_sup, DEFAULT_LIMIT)
}

pub fn oracle_frequent_with_limit(
    db: &TransactionDb,
    min_sup: SupportThreshold,
    limit: usize,
) -> Result<BTreeMap<ItemSet, usize>> {
    let rows = masks(db, limit)?;
    let n = db.item_count();
    let mut out = BTreeMap::new();
    for mask in 0..(1u64 << n) {
        let count = rows.iter().filter(|&&t| mask & !t == 0).count();
        if count >= min_sup.absolute() {
            out.insert(unpack(mask, n), count);
        }
    }
    Ok(out)
}

/// Frequent itemsets with no frequent strict superset. `∅` appears only
/// when it is the sole frequent itemset.
pub fn oracle_maximal(db: &TransactionDb, min_sup: SupportThreshold) -> Result<Vec<(ItemSet, usize)>> {
    let rows = masks(db, DEFAULT_LIMIT)?;
    let n = db.item_count();
    let support = |m: u64| rows.iter().filter(|&&t| m & !t == 0).count();
    let counts: Vec<usize> = (0..(1u64 << n)).map(support).collect();
    let frequent = |m: u64| counts[m as usize] >= min_sup.absolute();
    // Support only shrinks as items are added, so a frequent strict superset
    // exists iff some one-item extension is frequent.
    let mut out: Vec<(ItemSet, usize)> = (0..(1u64 << n))
        .filter(|&m| frequent(m))
        .filter(|&m| (0..n).all(|i| m >> i & 1 == 1 || !frequent(m | 1 << i)))
        .map(|m| (unpack(m, n), counts[m as usize]))
        .collect();
    out.sort_by(|(a, _), (b, _)| b.cardinality().cmp(&a.cardinality()).then(a.cmp(b)));
    Ok(out)
}
