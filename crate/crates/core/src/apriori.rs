//! Level-wise Apriori baseline: join frequent (k-1)-itemsets into
//! k-candidates, prune candidates with an infrequent (k-1)-subset, count the
//! survivors in one scan, repeat until no candidates remain.

use std::collections::{BTreeMap, HashSet};

use crate::db::TransactionDb;
use crate::error::Result;
use crate::itemset::ItemSet;
use crate::mfif::sort_border;
use crate::support::{count_candidates, RunMetrics, Stopwatch};
use crate::threshold::SupportThreshold;

/// `levels[k]` holds every frequent k-itemset with its support.
///
/// `levels[0]` is `{∅: |D|}` whenever the threshold is attainable; it costs
/// no scan. An unattainable threshold yields no levels at all.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrequentLevels {
    pub levels: Vec<BTreeMap<ItemSet, usize>>,
}

impl FrequentLevels {
    /// All frequent itemsets of every size in one map.
    pub fn family(&self) -> BTreeMap<ItemSet, usize> {
        self.levels
            .iter()
            .flat_map(|l| l.iter().map(|(s, n)| (s.clone(), *n)))
            .collect()
    }

    pub fn max_level(&self) -> Option<usize> {
        self.levels.iter().rposition(|l| !l.is_empty())
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Prefix join: two sorted (k-1)-itemsets sharing their first k-2 items
/// combine into one k-itemset.
pub fn apriori_join(l_prev: &[ItemSet]) -> Vec<ItemSet> {
    let mut sorted: Vec<Vec<usize>> = l_prev.iter().map(|s| s.items().collect()).collect();
    sorted.sort();
    sorted.dedup();
    let Some(width) = l_prev.first().map(ItemSet::width) else {
        return Vec::new();
    };

    let mut out = Vec::new();
    let mut start = 0;
    while start < sorted.len() {
        let prefix_len = sorted[start].len().saturating_sub(1);
        let prefix = &sorted[start][..prefix_len];
        let end = start
            + sorted[start..]
                .iter()
                .take_while(|s| s.len() == prefix_len + 1 && &s[..prefix_len] == prefix)
                .count();
        for i in start..end {
            for j in i + 1..end {
                let mut items = sorted[i].clone();
                items.push(sorted[j][prefix_len]);
                out.push(ItemSet::from_items(width, items).expect("items share a width"));
            }
        }
        start = end.max(start + 1);
    }
    out.sort();
    out.dedup();
    out
}

/// Keeps the candidates whose every (k-1)-subset is in `l_prev`.
pub fn apriori_prune(candidates: &[ItemSet], l_prev: &[ItemSet]) -> Vec<ItemSet> {
    let frequent: HashSet<&ItemSet> = l_prev.iter().collect();
    candidates
        .iter()
        .filter(|c| c.items().all(|i| frequent.contains(&c.without_item(i))))
        .cloned()
        .collect()
}

/// All frequent itemsets, one database scan per non-empty candidate level.
pub fn mine_apriori(
    db: &TransactionDb,
    min_sup: SupportThreshold,
) -> Result<(FrequentLevels, RunMetrics)> {
    let start = Stopwatch::start();
    let mut metrics = RunMetrics::default();
    let mut levels = FrequentLevels::default();
    if !min_sup.is_attainable(db.len()) {
        metrics.wall_time = start.elapsed();
        return Ok((levels, metrics));
    }
    let n = db.item_count();
    levels
        .levels
        .push(BTreeMap::from([(ItemSet::empty(n), db.len())]));

    let mut candidates: Vec<ItemSet> = (0..n)
        .map(|i| ItemSet::from_items(n, [i]))
        .collect::<Result<_>>()?;
    while !candidates.is_empty() {
        metrics.candidates_generated += candidates.len() as u64;
        let counts = count_candidates(&candidates, db, &mut metrics)?;
        let level: BTreeMap<ItemSet, usize> = candidates
            .into_iter()
            .zip(counts)
            .filter(|(_, c)| min_sup.is_met_by(*c))
            .collect();
        if level.is_empty() {
            break;
        }
        let prev: Vec<ItemSet> = level.keys().cloned().collect();
        levels.levels.push(level);
        candidates = apriori_prune(&apriori_join(&prev), &prev);
    }
    metrics.wall_time = start.elapsed();
    Ok((levels, metrics))
}

/// Frequent itemsets with no frequent strict superset. The empty set is
/// returned only when nothing else is frequent.
pub fn maximal_from_levels(levels: &FrequentLevels) -> Vec<(ItemSet, usize)> {
    let mut out = Vec::new();
    for (k, level) in levels.levels.iter().enumerate() {
        let above = levels.levels.get(k + 1);
        for (set, &n) in level {
            // Downward closure: a frequent strict superset implies a frequent
            // superset exactly one item larger.
            let extended = above.is_some_and(|next| {
                next.keys().any(|sup| set.is_subset_unchecked(sup))
            });
            if !extended {
                out.push((set.clone(), n));
            }
        }
    }
    sort_border(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{parse_matrix, EXAMPLE_MATRIX};
    use crate::itemset::ItemUniverse;

    fn set(w: usize, items: &[usize]) -> ItemSet {
        ItemSet::from_items(w, items.iter().copied()).unwrap()
    }

    #[test]
    fn join_examples() {
        let l2 = [set(5, &[0, 1]), set(5, &[0, 2]), set(5, &[1, 2])];
        assert_eq!(apriori_join(&l2), vec![set(5, &[0, 1, 2])]);
        assert_eq!(apriori_join(&[set(5, &[0]), set(5, &[1])]), vec![set(5, &[0, 1])]);
        assert!(apriori_join(&[set(5, &[0, 1]), set(5, &[2, 3])]).is_empty());
        assert!(apriori_join(&[]).is_empty());
    }

    #[test]
    fn prune_examples() {
        let cand = [set(5, &[0, 1, 2])];
        let missing = [set(5, &[0, 1]), set(5, &[0, 2])];
        assert!(apriori_prune(&cand, &missing).is_empty());
        let full = [set(5, &[0, 1]), set(5, &[0, 2]), set(5, &[1, 2])];
        assert_eq!(apriori_prune(&cand, &full), cand.to_vec());
        assert!(apriori_prune(&[], &full).is_empty());
    }

    #[test]
    fn example_twelve_levels() {
        let db = parse_matrix(EXAMPLE_MATRIX).unwrap();
        let (levels, metrics) = mine_apriori(&db, SupportThreshold::from_count(2, 10)).unwrap();
        let twelve = set(20, &[1, 2, 3, 4, 5, 11, 12, 13, 14, 15, 16, 19]);
        assert_eq!(levels.max_level(), Some(12));
        assert_eq!(levels.levels[12].len(), 1);
        assert_eq!(levels.levels[12][&twelve], 2);
        assert_eq!(metrics.db_scans, 12);
        assert!(maximal_from_levels(&levels).contains(&(twelve, 2)));
    }

    #[test]
    fn single_transaction_powerset() {
        let db = TransactionDb::from_item_lists(5, &[&[0, 2, 3]]).unwrap();
        let (levels, _) = mine_apriori(&db, SupportThreshold::from_percent(100.0, 1).unwrap()).unwrap();
        let sizes: Vec<usize> = levels.levels.iter().map(BTreeMap::len).collect();
        assert_eq!(sizes, vec![1, 3, 3, 1]);
    }

    #[test]
    fn unattainable_gives_no_levels() {
        let db = TransactionDb::from_item_lists(2, &[&[0]]).unwrap();
        let (levels, m) = mine_apriori(&db, SupportThreshold::from_count(2, 1)).unwrap();
        assert!(levels.levels.is_empty());
        assert_eq!(m.db_scans, 0);
    }

    #[test]
    fn maximal_of_trivial_levels() {
        let levels = FrequentLevels {
            levels: vec![
                BTreeMap::from([(ItemSet::empty(2), 3)]),
                BTreeMap::from([(set(2, &[0]), 2)]),
            ],
        };
        assert_eq!(maximal_from_levels(&levels), vec![(set(2, &[0]), 2)]);
        let only_empty = FrequentLevels {
            levels: vec![BTreeMap::from([(ItemSet::empty(2), 3)])],
        };
        assert_eq!(maximal_from_levels(&only_empty), vec![(ItemSet::empty(2), 3)]);
    }

    #[test]
    fn downward_closed_output() {
        let db = TransactionDb::new(
            ItemUniverse::new(6),
            vec![set(6, &[0, 1, 2]), set(6, &[0, 1, 3]), set(6, &[1, 2, 3]), set(6, &[0, 1, 2, 3])],
        )
        .unwrap();
        let (levels, _) = mine_apriori(&db, SupportThreshold::from_count(2, 4)).unwrap();
        for k in 1..levels.levels.len() {
            for s in levels.levels[k].keys() {
                for i in s.items() {
                    assert!(levels.levels[k - 1].contains_key(&s.without_item(i)));
                }
            }
        }
    }
}
