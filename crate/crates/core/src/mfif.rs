//! Top-down maximal frequent itemset search.
//!
//! The search starts at the length of the longest transaction. At each level
//! `k` the candidate pool is the set of distinct transactions with exactly
//! `k` items, merged with the drop-one-item subsets of every candidate that
//! failed at level `k + 1`. All candidates of a level are counted together
//! in one database scan. Frequent candidates are accepted as maximal; the
//! rest are split into their `(k-1)`-subsets for the next level. Candidates
//! contained in an already accepted set are pruned, since they cannot be
//! maximal.
//!
//! In [`MfifMode::FirstOnly`] the search stops at the first level that
//! yields a frequent candidate. [`MfifMode::AllMaximal`] keeps descending to
//! `floor_k` and returns the whole maximal border.

use std::collections::{BTreeMap, HashSet};

use crate::db::TransactionDb;
use crate::error::{MiningError, Result};
use crate::itemset::ItemSet;
use crate::support::{count_candidates, RunMetrics, Stopwatch};
use crate::threshold::SupportThreshold;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MfifMode {
    #[default]
    AllMaximal,
    FirstOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MfifConfig {
    pub mode: MfifMode,
    /// Smallest candidate cardinality the search descends to.
    pub floor_k: usize,
}

impl Default for MfifConfig {
    fn default() -> Self {
        MfifConfig {
            mode: MfifMode::AllMaximal,
            floor_k: 1,
        }
    }
}

impl MfifConfig {
    pub fn first_only() -> Self {
        MfifConfig {
            mode: MfifMode::FirstOnly,
            ..Self::default()
        }
    }

    pub fn validate(&self, universe_size: usize) -> Result<()> {
        if self.floor_k == 0 || self.floor_k > universe_size.max(1) {
            return Err(MiningError::InvalidConfig(format!(
                "floor_k {} must lie in [1, {}]",
                self.floor_k,
                universe_size.max(1)
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MiningWarning {
    /// The threshold exceeds `|D|`.
    ThresholdUnattainable,
    /// The search reached its floor without accepting any itemset.
    NothingFound,
}

/// Itemsets with their supports, sorted by descending cardinality and then
/// lexicographically, plus run metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct MiningResult {
    pub itemsets: Vec<(ItemSet, usize)>,
    pub metrics: RunMetrics,
    pub warning: Option<MiningWarning>,
}

impl MiningResult {
    pub fn sets(&self) -> Vec<ItemSet> {
        self.itemsets.iter().map(|(s, _)| s.clone()).collect()
    }
}

pub(crate) fn sort_border(itemsets: &mut [(ItemSet, usize)]) {
    itemsets.sort_by(|(a, _), (b, _)| b.cardinality().cmp(&a.cardinality()).then(a.cmp(b)));
}

/// Search state at one level.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelState {
    pub k: usize,
    /// Sorted, distinct, all of cardinality `k`.
    pub candidates: Vec<ItemSet>,
    /// Accepted maximal sets with their supports.
    pub found: Vec<(ItemSet, usize)>,
}

impl LevelState {
    /// Top level of a search: the longest transactions.
    pub fn initial(db: &TransactionDb) -> Self {
        let k = db
            .transactions()
            .iter()
            .map(ItemSet::cardinality)
            .max()
            .unwrap_or(0);
        LevelState {
            k,
            candidates: seed_candidates(db, k).into_iter().collect(),
            found: Vec::new(),
        }
    }

    fn covered(&self, set: &ItemSet) -> bool {
        self.found.iter().any(|(f, _)| set.is_subset_unchecked(f))
    }
}

/// Cardinality of every transaction, in order. One database scan.
pub fn transaction_lengths(db: &TransactionDb, metrics: &mut RunMetrics) -> Vec<usize> {
    metrics.record_scan();
    db.transactions().iter().map(ItemSet::cardinality).collect()
}

/// Distinct transactions with exactly `k` items.
pub fn seed_candidates(db: &TransactionDb, k: usize) -> std::collections::BTreeSet<ItemSet> {
    db.transactions()
        .iter()
        .filter(|t| t.cardinality() == k)
        .cloned()
        .collect()
}

/// All `k` subsets obtained by dropping one item from a k-itemset.
pub fn subsets_one_smaller(x: &ItemSet) -> Vec<ItemSet> {
    x.items().map(|i| x.without_item(i)).collect()
}

/// Moves to level `k - 1`: subsets of the surviving (infrequent) candidates
/// merged with the transactions of length `k - 1`, minus anything covered
/// by an accepted set.
pub fn descend(state: &LevelState, db: &TransactionDb) -> LevelState {
    let seeds = seed_candidates(db, state.k.saturating_sub(1));
    next_level(state, seeds.into_iter())
}

fn next_level(state: &LevelState, seeds: impl Iterator<Item = ItemSet>) -> LevelState {
    let mut pool: HashSet<ItemSet> = HashSet::new();
    for c in &state.candidates {
        for sub in subsets_one_smaller(c) {
            pool.insert(sub);
        }
    }
    pool.extend(seeds);
    let mut candidates: Vec<ItemSet> = pool.into_iter().filter(|c| !state.covered(c)).collect();
    candidates.sort();
    LevelState {
        k: state.k.saturating_sub(1),
        candidates,
        found: state.found.clone(),
    }
}

/// Finds maximal frequent itemsets top-down. See the module docs.
///
/// The empty set is reported only when it is the sole frequent itemset and
/// the search was allowed down to `floor_k = 1`.
pub fn mine_maximal(
    db: &TransactionDb,
    min_sup: SupportThreshold,
    config: MfifConfig,
) -> Result<MiningResult> {
    config.validate(db.item_count())?;
    let start = Stopwatch::start();
    let mut metrics = RunMetrics::default();

    if !min_sup.is_attainable(db.len()) {
        metrics.wall_time = start.elapsed();
        return Ok(MiningResult {
            itemsets: Vec::new(),
            metrics,
            warning: Some(MiningWarning::ThresholdUnattainable),
        });
    }

    let lengths = transaction_lengths(db, &mut metrics);
    let mut by_length: BTreeMap<usize, Vec<ItemSet>> = BTreeMap::new();
    for (t, &len) in db.transactions().iter().zip(&lengths) {
        by_length.entry(len).or_default().push(t.clone());
    }
    let mut seeds_at = |k: usize| -> Vec<ItemSet> {
        let mut v = by_length.remove(&k).unwrap_or_default();
        v.sort();
        v.dedup();
        v
    };

    let top = lengths.iter().copied().max().unwrap_or(0);
    let mut state = LevelState {
        k: top,
        candidates: seeds_at(top),
        found: Vec::new(),
    };

    while state.k >= config.floor_k {
        let mut accepted_here = false;
        if !state.candidates.is_empty() {
            metrics.candidates_generated += state.candidates.len() as u64;
            let counts = count_candidates(&state.candidates, db, &mut metrics)?;
            let mut survivors = Vec::with_capacity(state.candidates.len());
            for (c, n) in std::mem::take(&mut state.candidates).into_iter().zip(counts) {
                if min_sup.is_met_by(n) {
                    state.found.push((c, n));
                    accepted_here = true;
                } else {
                    survivors.push(c);
                }
            }
            state.candidates = survivors;
        }
        if accepted_here && config.mode == MfifMode::FirstOnly {
            break;
        }
        if state.k == config.floor_k {
            break;
        }
        let seeds = seeds_at(state.k - 1);
        state = next_level(&state, seeds.into_iter());
    }

    let mut itemsets = state.found;
    if itemsets.is_empty() && config.floor_k == 1 {
        // ∅ is contained in every transaction and the threshold is attainable.
        itemsets.push((ItemSet::empty(db.item_count()), db.len()));
    }
    let warning = itemsets.is_empty().then_some(MiningWarning::NothingFound);
    sort_border(&mut itemsets);
    metrics.wall_time = start.elapsed();
    Ok(MiningResult {
        itemsets,
        metrics,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_matrix, EXAMPLE_MATRIX};
    use crate::itemset::ItemUniverse;

    fn example() -> TransactionDb {
        parse_matrix(EXAMPLE_MATRIX).unwrap()
    }

    fn twelve() -> ItemSet {
        ItemSet::from_items(20, [1, 2, 3, 4, 5, 11, 12, 13, 14, 15, 16, 19]).unwrap()
    }

    fn set(w: usize, items: &[usize]) -> ItemSet {
        ItemSet::from_items(w, items.iter().copied()).unwrap()
    }

    #[test]
    fn lengths() {
        let mut m = RunMetrics::default();
        let empty = TransactionDb::new(ItemUniverse::new(3), vec![]).unwrap();
        assert!(transaction_lengths(&empty, &mut m).is_empty());
        let one = TransactionDb::new(ItemUniverse::new(3), vec![ItemSet::empty(3)]).unwrap();
        assert_eq!(transaction_lengths(&one, &mut m), vec![0]);
        let lens = transaction_lengths(&example(), &mut m);
        assert_eq!(*lens.iter().max().unwrap(), 12);
        assert_eq!(lens.iter().filter(|l| **l == 12).count(), 2);
        assert_eq!(m.db_scans, 3);
    }

    #[test]
    fn seeds() {
        let db = example();
        let s12 = seed_candidates(&db, 12);
        assert_eq!(s12.len(), 1);
        assert_eq!(s12.first(), Some(&twelve()));
        assert!(seed_candidates(&db, 13).is_empty());
        assert!(seed_candidates(&db, 0).is_empty());
        let with_empty = TransactionDb::from_item_lists(3, &[&[0], &[]]).unwrap();
        assert_eq!(seed_candidates(&with_empty, 0).len(), 1);
    }

    #[test]
    fn drop_one_subsets() {
        let mut subs = subsets_one_smaller(&set(5, &[0, 1, 2]));
        subs.sort();
        assert_eq!(subs, vec![set(5, &[0, 1]), set(5, &[0, 2]), set(5, &[1, 2])]);
        assert_eq!(subsets_one_smaller(&set(5, &[4])), vec![ItemSet::empty(5)]);
        assert!(subsets_one_smaller(&ItemSet::empty(5)).is_empty());

        let thirteen = twelve().with_item(0);
        let subs: HashSet<_> = subsets_one_smaller(&thirteen).into_iter().collect();
        assert_eq!(subs.len(), 13);
        assert!(subs.iter().all(|s| s.cardinality() == 12 && s.is_subset_unchecked(&thirteen)));
    }

    #[test]
    fn descend_merges_subsets_with_shorter_transactions() {
        // One infrequent 13-row, and a 12-row elsewhere.
        let thirteen = twelve().with_item(0);
        let other12 = set(20, &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]);
        let db = TransactionDb::new(
            ItemUniverse::new(20),
            vec![thirteen.clone(), other12.clone()],
        )
        .unwrap();
        let state = LevelState::initial(&db);
        assert_eq!(state.k, 13);
        let next = descend(&state, &db);
        assert_eq!(next.k, 12);
        assert_eq!(next.candidates.len(), 14);
        assert!(next.candidates.contains(&other12));
        assert!(next.candidates.contains(&twelve()));
    }

    #[test]
    fn descend_with_no_candidates_takes_transactions() {
        let db = TransactionDb::from_item_lists(4, &[&[0, 1], &[2, 3], &[0, 1]]).unwrap();
        let state = LevelState {
            k: 3,
            candidates: vec![],
            found: vec![],
        };
        let next = descend(&state, &db);
        assert_eq!(next.candidates, vec![set(4, &[0, 1]), set(4, &[2, 3])]);
    }

    #[test]
    fn descend_prunes_covered_candidates() {
        let db = TransactionDb::from_item_lists(4, &[&[0, 1], &[0, 2]]).unwrap();
        let state = LevelState {
            k: 3,
            candidates: vec![set(4, &[0, 1, 3])],
            found: vec![(set(4, &[0, 1, 2]), 2)],
        };
        let next = descend(&state, &db);
        assert_eq!(next.candidates, vec![set(4, &[0, 3]), set(4, &[1, 3])]);
    }

    #[test]
    fn example_first_only() {
        let db = example();
        let min_sup = SupportThreshold::from_percent(20.0, db.len()).unwrap();
        let res = mine_maximal(&db, min_sup, MfifConfig::first_only()).unwrap();
        assert_eq!(res.itemsets, vec![(twelve(), 2)]);
        assert_eq!(res.metrics.db_scans, 2);
        assert_eq!(res.warning, None);
    }

    #[test]
    fn identical_rows() {
        let x = set(6, &[1, 3, 4]);
        let db = TransactionDb::new(ItemUniverse::new(6), vec![x.clone(); 4]).unwrap();
        let min_sup = SupportThreshold::from_percent(100.0, 4).unwrap();
        let res = mine_maximal(&db, min_sup, MfifConfig::default()).unwrap();
        assert_eq!(res.itemsets, vec![(x, 4)]);
    }

    #[test]
    fn unattainable_threshold() {
        let db = example();
        let res = mine_maximal(&db, SupportThreshold::from_count(11, 10), MfifConfig::default()).unwrap();
        assert!(res.itemsets.is_empty());
        assert_eq!(res.warning, Some(MiningWarning::ThresholdUnattainable));
        assert_eq!(res.metrics.db_scans, 0);
    }

    #[test]
    fn only_empty_set_frequent() {
        let db = TransactionDb::from_item_lists(3, &[&[0], &[1], &[2]]).unwrap();
        let res = mine_maximal(&db, SupportThreshold::from_count(2, 3), MfifConfig::default()).unwrap();
        assert_eq!(res.itemsets, vec![(ItemSet::empty(3), 3)]);
    }

    #[test]
    fn floor_above_answer_warns() {
        let db = TransactionDb::from_item_lists(5, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]).unwrap();
        let cfg = MfifConfig {
            mode: MfifMode::AllMaximal,
            floor_k: 3,
        };
        let res = mine_maximal(&db, SupportThreshold::from_count(2, 3), cfg).unwrap();
        assert!(res.itemsets.is_empty());
        assert_eq!(res.warning, Some(MiningWarning::NothingFound));
    }

    #[test]
    fn bad_floor_rejected() {
        let db = example();
        let cfg = MfifConfig {
            mode: MfifMode::AllMaximal,
            floor_k: 0,
        };
        assert!(mine_maximal(&db, SupportThreshold::from_count(2, 10), cfg).is_err());
        let cfg = MfifConfig {
            mode: MfifMode::AllMaximal,
            floor_k: 21,
        };
        assert!(mine_maximal(&db, SupportThreshold::from_count(2, 10), cfg).is_err());
    }

    #[test]
    fn empty_database() {
        let db = TransactionDb::new(ItemUniverse::new(4), vec![]).unwrap();
        let res = mine_maximal(&db, SupportThreshold::from_percent(50.0, 0).unwrap(), MfifConfig::default())
            .unwrap();
        assert!(res.itemsets.is_empty());
        assert_eq!(res.warning, Some(MiningWarning::ThresholdUnattainable));
    }
}
