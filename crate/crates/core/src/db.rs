use crate::error::{MiningError, Result};
use crate::itemset::{ItemSet, ItemUniverse};

/// An ordered, immutable list of transactions over a shared universe.
///
/// Duplicate and empty transactions are allowed; each occurrence counts
/// once towards support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransactionDb {
    universe: ItemUniverse,
    transactions: Vec<ItemSet>,
}

impl TransactionDb {
    pub fn new(universe: ItemUniverse, transactions: Vec<ItemSet>) -> Result<Self> {
        for t in &transactions {
            if t.width() != universe.size() {
                return Err(MiningError::UniverseMismatch {
                    left: t.width(),
                    right: universe.size(),
                });
            }
        }
        Ok(TransactionDb {
            universe,
            transactions,
        })
    }

    /// Convenience constructor from 0-based item lists over `I1..In`.
    pub fn from_item_lists(size: usize, rows: &[&[usize]]) -> Result<Self> {
        let universe = ItemUniverse::new(size);
        let transactions = rows
            .iter()
            .map(|r| ItemSet::from_items(size, r.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe, transactions)
    }

    pub fn universe(&self) -> &ItemUniverse {
        &self.universe
    }

    pub fn transactions(&self) -> &[ItemSet] {
        &self.transactions
    }

    /// `|D|`.
    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn item_count(&self) -> usize {
        self.universe.size()
    }

    pub(crate) fn check(&self, set: &ItemSet) -> Result<()> {
        if set.width() != self.universe.size() {
            return Err(MiningError::UniverseMismatch {
                left: set.width(),
                right: self.universe.size(),
            });
        }
        Ok(())
    }
}
