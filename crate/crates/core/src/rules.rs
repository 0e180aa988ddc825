//! Strong association rules `X => Y` from a downward-closed frequent family.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::db::TransactionDb;
use crate::error::{MiningError, Result};
use crate::itemset::{ItemSet, ItemUniverse};
use crate::support::{count_candidates, RunMetrics};

/// `antecedent => consequent` with `support = σ(X ∪ Y)` and
/// `confidence = σ(X ∪ Y) / σ(X)`, kept as the exact ratio of two counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociationRule {
    pub antecedent: ItemSet,
    pub consequent: ItemSet,
    pub support: usize,
    pub antecedent_support: usize,
}

impl AssociationRule {
    pub fn confidence(&self) -> f64 {
        self.support as f64 / self.antecedent_support as f64
    }

    fn cmp_confidence(&self, other: &Self) -> Ordering {
        let lhs = self.support as u128 * other.antecedent_support as u128;
        let rhs = other.support as u128 * self.antecedent_support as u128;
        lhs.cmp(&rhs)
    }

    /// `X1 X2 => Y (sup=s, conf=c)`.
    pub fn display(&self, universe: &ItemUniverse) -> String {
        format!(
            "{} => {} (sup={}, conf={:.4})",
            universe.label_line(&self.antecedent),
            universe.label_line(&self.consequent),
            self.support,
            self.confidence()
        )
    }
}

// min_conf is a float; compare in counts so that 2/4 >= 0.5 holds exactly.
fn meets_confidence(union: usize, antecedent: usize, min_conf: f64) -> bool {
    union as f64 >= min_conf * antecedent as f64 - 1e-12 * antecedent as f64
}

/// Every rule `X => Y` where `X ∪ Y` is in `frequents`, `X` and `Y` are
/// non-empty and disjoint, and confidence is at least `min_conf`.
///
/// Sorted by confidence, then support (both descending), then antecedent
/// and consequent.
pub fn generate_rules(
    frequents: &BTreeMap<ItemSet, usize>,
    min_conf: f64,
) -> Result<Vec<AssociationRule>> {
    if !(0.0..=1.0).contains(&min_conf) {
        return Err(MiningError::InvalidConfidence(min_conf));
    }
    let mut rules = Vec::new();
    for (whole, &support) in frequents {
        let items: Vec<usize> = whole.items().collect();
        if items.len() < 2 || items.len() >= usize::BITS as usize {
            continue;
        }
        let width = whole.width();
        // Every proper non-empty subset as the antecedent.
        for mask in 1..(1usize << items.len()) - 1 {
            let antecedent = ItemSet::from_items(
                width,
                items.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, i)| *i),
            )?;
            let antecedent_support = *frequents
                .get(&antecedent)
                .ok_or_else(|| MiningError::ClosureViolation(format!("{antecedent:?}")))?;
            if !meets_confidence(support, antecedent_support, min_conf) {
                continue;
            }
            let consequent = whole.difference(&antecedent)?;
            rules.push(AssociationRule {
                antecedent,
                consequent,
                support,
                antecedent_support,
            });
        }
    }
    rules.sort_by(|a, b| {
        b.cmp_confidence(a)
            .then(b.support.cmp(&a.support))
            .then_with(|| a.antecedent.cmp(&b.antecedent))
            .then_with(|| a.consequent.cmp(&b.consequent))
    });
    Ok(rules)
}

/// Expands a maximal border into its full downward closure and recounts
/// every member in one extra scan, since the border alone lacks subset
/// supports.
pub fn expand_border(
    border: &[ItemSet],
    db: &TransactionDb,
    metrics: &mut RunMetrics,
) -> Result<BTreeMap<ItemSet, usize>> {
    let mut family: BTreeSet<ItemSet> = BTreeSet::new();
    for top in border {
        let items: Vec<usize> = top.items().collect();
        if items.len() >= usize::BITS as usize - 1 {
            return Err(MiningError::InvalidConfig(format!(
                "cannot expand a {}-itemset into its subsets",
                items.len()
            )));
        }
        for mask in 0..(1usize << items.len()) {
            family.insert(ItemSet::from_items(
                top.width(),
                items.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, i)| *i),
            )?);
        }
    }
    let family: Vec<ItemSet> = family.into_iter().collect();
    let counts = count_candidates(&family, db, metrics)?;
    Ok(family.into_iter().zip(counts).collect())
}
