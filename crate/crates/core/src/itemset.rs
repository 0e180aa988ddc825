//! Fixed-width bitset itemsets and the item universe they index into.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{MiningError, Result};

const WORD_BITS: usize = 64;

fn words_for(width: usize) -> usize {
    width.div_ceil(WORD_BITS)
}

/// A set of items drawn from a universe of `width` items.
///
/// Items are 0-indexed internally. Two itemsets are only comparable with
/// the subset operations when they share a width; the checked methods
/// return [`MiningError::UniverseMismatch`] otherwise.
///
/// The total order is lexicographic over the ascending item indices, so
/// `{0, 1} < {0, 2} < {1}`, with the empty set first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ItemSet {
    width: usize,
    words: Box<[u64]>,
}

impl ItemSet {
    pub fn empty(width: usize) -> Self {
        ItemSet {
            width,
            words: vec![0; words_for(width)].into_boxed_slice(),
        }
    }

    pub fn full(width: usize) -> Self {
        let mut set = Self::empty(width);
        for item in 0..width {
            set.insert(item);
        }
        set
    }

    /// Builds an itemset from 0-based item indices. Duplicates collapse.
    pub fn from_items<I>(width: usize, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(width);
        for item in items {
            if item >= width {
                return Err(MiningError::ItemOutOfRange {
                    index: item,
                    size: width,
                });
            }
            set.insert(item);
        }
        Ok(set)
    }

    /// Builds an itemset from a 0/1 slice, one flag per item.
    pub fn from_flags(flags: &[bool]) -> Self {
        let mut set = Self::empty(flags.len());
        for (item, _) in flags.iter().enumerate().filter(|(_, f)| **f) {
            set.insert(item);
        }
        set
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of items in the set (the `k` of a k-itemset).
    pub fn cardinality(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn contains(&self, item: usize) -> bool {
        item < self.width && self.words[item / WORD_BITS] & (1 << (item % WORD_BITS)) != 0
    }

    /// Panics if `item` is outside the universe.
    pub fn insert(&mut self, item: usize) {
        assert!(item < self.width, "item {item} outside width {}", self.width);
        self.words[item / WORD_BITS] |= 1 << (item % WORD_BITS);
    }

    pub fn remove(&mut self, item: usize) {
        if item < self.width {
            self.words[item / WORD_BITS] &= !(1 << (item % WORD_BITS));
        }
    }

    pub fn with_item(&self, item: usize) -> Self {
        let mut out = self.clone();
        out.insert(item);
        out
    }

    pub fn without_item(&self, item: usize) -> Self {
        let mut out = self.clone();
        out.remove(item);
        out
    }

    fn check_width(&self, other: &ItemSet) -> Result<()> {
        if self.width != other.width {
            return Err(MiningError::UniverseMismatch {
                left: self.width,
                right: other.width,
            });
        }
        Ok(())
    }

    /// True iff every item of `self` is in `other`.
    pub fn is_subset(&self, other: &ItemSet) -> Result<bool> {
        self.check_width(other)?;
        Ok(self.is_subset_unchecked(other))
    }

    /// Subset test for callers that already validated the widths.
    #[inline]
    pub fn is_subset_unchecked(&self, other: &ItemSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset_unchecked(&self, other: &ItemSet) -> bool {
        self != other && self.is_subset_unchecked(other)
    }

    pub fn is_disjoint(&self, other: &ItemSet) -> Result<bool> {
        self.check_width(other)?;
        Ok(self
            .words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0))
    }

    pub fn union(&self, other: &ItemSet) -> Result<ItemSet> {
        self.check_width(other)?;
        Ok(self.zip_words(other, |a, b| a | b))
    }

    pub fn intersection(&self, other: &ItemSet) -> Result<ItemSet> {
        self.check_width(other)?;
        Ok(self.zip_words(other, |a, b| a & b))
    }

    pub fn difference(&self, other: &ItemSet) -> Result<ItemSet> {
        self.check_width(other)?;
        Ok(self.zip_words(other, |a, b| a & !b))
    }

    fn zip_words(&self, other: &ItemSet, op: impl Fn(u64, u64) -> u64) -> ItemSet {
        ItemSet {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| op(*a, *b))
                .collect(),
        }
    }

    /// Ascending item indices.
    pub fn items(&self) -> Items<'_> {
        Items {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// One flag per item, in universe order.
    pub fn to_flags(&self) -> Vec<bool> {
        (0..self.width).map(|i| self.contains(i)).collect()
    }
}

pub struct Items<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Items<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_index * WORD_BITS + bit);
            }
            self.word_index += 1;
            if self.word_index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_index];
        }
    }
}

impl Ord for ItemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.items()
            .cmp(other.items())
            .then(self.width.cmp(&other.width))
    }
}

impl PartialOrd for ItemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, item) in self.items().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "I{}", item + 1)?;
        }
        f.write_str("}")
    }
}

/// The set of items `I` a database draws from, with optional display labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemUniverse {
    size: usize,
    labels: Option<Vec<String>>,
}

impl ItemUniverse {
    /// Universe whose items display as `I1..In`.
    pub fn new(size: usize) -> Self {
        ItemUniverse { size, labels: None }
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for label in &labels {
            if label.is_empty() {
                return Err(MiningError::InvalidLabels("empty label".into()));
            }
            if !seen.insert(label.as_str()) {
                return Err(MiningError::InvalidLabels(format!(
                    "duplicate label {label:?}"
                )));
            }
        }
        Ok(ItemUniverse {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn label(&self, item: usize) -> String {
        match &self.labels {
            Some(labels) => labels[item].clone(),
            None => format!("I{}", item + 1),
        }
    }

    /// Space-separated labels of the items in `set`, e.g. `I2 I3 I20`.
    pub fn label_line(&self, set: &ItemSet) -> String {
        set.items()
            .map(|i| self.label(i))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn empty_set(&self) -> ItemSet {
        ItemSet::empty(self.size)
    }

    pub fn itemset<I: IntoIterator<Item = usize>>(&self, items: I) -> Result<ItemSet> {
        ItemSet::from_items(self.size, items)
    }
}
