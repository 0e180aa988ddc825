//! Dataset formats and the planted-pattern generator.
//!
//! Two text formats are supported:
//!
//! * **matrix**: one transaction per line, space-separated `0`/`1` cells,
//!   column `j` is item `I(j+1)`. Blank lines are ignored.
//! * **basket**: one transaction per line, comma-separated item names. A
//!   blank line is an empty transaction. The universe is the sorted set of
//!   distinct names.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::db::TransactionDb;
use crate::error::{MiningError, Result};
use crate::itemset::{ItemSet, ItemUniverse};

/// Ten transactions over twenty items; rows 1 and 6 are the same 12-itemset.
pub const EXAMPLE_MATRIX: &str = "\
0 1 1 1 1 1 0 0 0 0 0 1 1 1 1 1 1 0 0 1
1 1 0 1 0 0 0 0 1 1 0 1 0 1 0 1 0 0 0 1
0 1 0 0 0 0 1 1 0 0 1 0 0 1 0 1 0 0 1 0
0 1 1 0 0 0 1 1 0 1 0 1 0 1 0 1 0 1 0 0
1 1 1 0 1 0 1 1 0 0 1 1 0 0 0 0 1 0 0 0
0 1 1 1 1 1 0 0 0 0 0 1 1 1 1 1 1 0 0 1
0 1 1 0 1 0 1 1 0 0 1 0 1 0 1 0 1 0 0 1
1 1 1 0 0 1 0 0 1 0 1 1 0 0 1 0 1 0 0 1
0 1 0 1 1 0 0 1 0 1 0 0 1 0 1 0 1 0 0 1
1 1 1 0 1 0 0 1 0 1 0 0 1 1 0 1 0 0 0 0
";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DatasetFormat {
    #[default]
    Matrix,
    Basket,
}

impl DatasetFormat {
    pub fn parse(self, text: &str) -> Result<TransactionDb> {
        match self {
            DatasetFormat::Matrix => parse_matrix(text),
            DatasetFormat::Basket => parse_basket(text),
        }
    }

    pub fn write(self, db: &TransactionDb) -> String {
        match self {
            DatasetFormat::Matrix => write_matrix(db),
            DatasetFormat::Basket => write_basket(db),
        }
    }
}

impl FromStr for DatasetFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "matrix" => Ok(DatasetFormat::Matrix),
            "basket" => Ok(DatasetFormat::Basket),
            other => Err(format!("unknown format {other:?} (expected matrix or basket)")),
        }
    }
}

impl fmt::Display for DatasetFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DatasetFormat::Matrix => "matrix",
            DatasetFormat::Basket => "basket",
        })
    }
}

pub fn parse_matrix(text: &str) -> Result<TransactionDb> {
    let mut width: Option<usize> = None;
    let mut rows = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut flags = Vec::new();
        for (col, token) in line.split_whitespace().enumerate() {
            match token {
                "0" => flags.push(false),
                "1" => flags.push(true),
                other => {
                    return Err(MiningError::Parse {
                        line: line_no,
                        column: col + 1,
                        message: format!("expected 0 or 1, found {other:?}"),
                    })
                }
            }
        }
        match width {
            None => width = Some(flags.len()),
            Some(w) if w != flags.len() => {
                return Err(MiningError::Parse {
                    line: line_no,
                    column: flags.len().min(w) + 1,
                    message: format!("row has {} cells, expected {w}", flags.len()),
                })
            }
            Some(_) => {}
        }
        rows.push(ItemSet::from_flags(&flags));
    }
    TransactionDb::new(ItemUniverse::new(width.unwrap_or(0)), rows)
}

pub fn write_matrix(db: &TransactionDb) -> String {
    let mut out = String::new();
    for t in db.transactions() {
        out.push_str(&matrix_row(t));
        out.push('\n');
    }
    out
}

/// `0 1 1 0 ...` for one itemset.
pub fn matrix_row(set: &ItemSet) -> String {
    set.to_flags()
        .iter()
        .map(|f| if *f { "1" } else { "0" })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_basket(text: &str) -> Result<TransactionDb> {
    let lines: Vec<Vec<&str>> = text
        .lines()
        .map(|line| {
            line.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .collect()
        })
        .collect();
    let names: BTreeSet<&str> = lines.iter().flatten().copied().collect();
    let names: Vec<String> = names.into_iter().map(String::from).collect();
    let universe = ItemUniverse::with_labels(names.clone())?;
    let rows = lines
        .iter()
        .map(|tokens| {
            universe.itemset(
                tokens
                    .iter()
                    .map(|t| names.binary_search_by(|n| n.as_str().cmp(t)).unwrap()),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    TransactionDb::new(universe, rows)
}

/// Items are written by label, so only databases whose labels are sorted and
/// all used round-trip exactly.
pub fn write_basket(db: &TransactionDb) -> String {
    let universe = db.universe();
    let mut out = String::new();
    for t in db.transactions() {
        let labels: Vec<String> = t.items().map(|i| universe.label(i)).collect();
        out.push_str(&labels.join(","));
        out.push('\n');
    }
    out
}

/// An itemset to embed in a generated database a fixed number of times.
#[derive(Clone, Debug, PartialEq)]
pub struct Plant {
    /// 0-based item indices.
    pub items: Vec<usize>,
    pub occurrences: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub transactions: usize,
    pub items: usize,
    pub planted: Option<Plant>,
    /// Probability that any non-planted cell is 1.
    pub noise_density: f64,
    pub seed: u64,
}

const MAX_ATTEMPTS: usize = 32;

impl GeneratorSpec {
    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.noise_density) {
            return Err(MiningError::InvalidConfig(format!(
                "noise density {} is outside [0, 1]",
                self.noise_density
            )));
        }
        if let Some(plant) = &self.planted {
            if plant.items.is_empty() {
                return Err(MiningError::InvalidConfig("planted itemset is empty".into()));
            }
            if let Some(&bad) = plant.items.iter().find(|i| **i >= self.items) {
                return Err(MiningError::ItemOutOfRange {
                    index: bad,
                    size: self.items,
                });
            }
            if plant.occurrences > self.transactions {
                return Err(MiningError::InvalidConfig(format!(
                    "plant occurrences {} exceed {} transactions",
                    plant.occurrences, self.transactions
                )));
            }
            if plant.occurrences == 0 {
                return Err(MiningError::InvalidConfig("plant occurrences must be at least 1".into()));
            }
        }
        Ok(())
    }
}

/// Generates a database deterministically from `spec.seed`.
///
/// With a plant, exactly `occurrences` rows contain the planted itemset and
/// every item outside it occurs in fewer than `occurrences` rows, so the
/// plant is the unique maximal frequent itemset at that threshold. Noisy
/// rows that happen to cover the whole plant lose one planted item. Draws
/// that violate the bound are retried a fixed number of times before
/// giving up.
pub fn generate(spec: &GeneratorSpec) -> Result<TransactionDb> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let universe = ItemUniverse::new(spec.items);
    let Some(plant) = &spec.planted else {
        let rows = (0..spec.transactions)
            .map(|_| noise_row(&mut rng, spec.items, spec.noise_density))
            .collect();
        return TransactionDb::new(universe, rows);
    };
    let plant_set = universe.itemset(plant.items.iter().copied())?;
    let plant_items: Vec<usize> = plant_set.items().collect();

    for _ in 0..MAX_ATTEMPTS {
        let mut is_plant_row = vec![false; spec.transactions];
        for i in index::sample(&mut rng, spec.transactions, plant.occurrences) {
            is_plant_row[i] = true;
        }
        let rows: Vec<ItemSet> = is_plant_row
            .iter()
            .map(|&planted| {
                let mut row = noise_row(&mut rng, spec.items, spec.noise_density);
                if planted {
                    for &i in &plant_items {
                        row.insert(i);
                    }
                } else if plant_set.is_subset_unchecked(&row) {
                    let drop = plant_items[rng.random_range(0..plant_items.len())];
                    row.remove(drop);
                }
                row
            })
            .collect();
        if plant_dominates(&rows, &plant_set, plant.occurrences, spec.items) {
            return TransactionDb::new(universe, rows);
        }
    }
    Err(MiningError::Generation(format!(
        "no draw in {MAX_ATTEMPTS} attempts kept every non-planted item below {} occurrences \
         (noise density {} is too high)",
        plant.occurrences, spec.noise_density
    )))
}

fn noise_row(rng: &mut ChaCha8Rng, items: usize, density: f64) -> ItemSet {
    let mut row = ItemSet::empty(items);
    for i in 0..items {
        if rng.random_bool(density) {
            row.insert(i);
        }
    }
    row
}

// Any frequent set outside the plant would contain a frequent non-planted item.
fn plant_dominates(rows: &[ItemSet], plant: &ItemSet, occurrences: usize, items: usize) -> bool {
    let mut item_counts = vec![0usize; items];
    let mut plant_count = 0;
    for row in rows {
        for i in row.items() {
            item_counts[i] += 1;
        }
        if plant.is_subset_unchecked(row) {
            plant_count += 1;
        }
    }
    plant_count == occurrences
        && item_counts
            .iter()
            .enumerate()
            .all(|(i, &c)| plant.contains(i) || c < occurrences)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_matrix() {
        let db = parse_matrix("0 1\n1 0").unwrap();
        assert_eq!(db.len(), 2);
        assert_eq!(db.transactions()[0], ItemSet::from_items(2, [1]).unwrap());
        assert_eq!(db.transactions()[1], ItemSet::from_items(2, [0]).unwrap());
    }

    #[test]
    fn example_matrix_shape() {
        let db = parse_matrix(EXAMPLE_MATRIX).unwrap();
        assert_eq!(db.len(), 10);
        assert_eq!(db.item_count(), 20);
        let t = db.transactions();
        assert_eq!(t[0], t[5]);
        assert_eq!(t[0].cardinality(), 12);
    }

    #[test]
    fn empty_matrix() {
        let db = parse_matrix("").unwrap();
        assert!(db.is_empty());
        assert_eq!(db.item_count(), 0);
    }

    #[test]
    fn ragged_rows_report_line() {
        let err = parse_matrix("0 1 1\n1 0\n").unwrap_err();
        assert!(matches!(err, MiningError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn bad_token_reports_position() {
        let err = parse_matrix("0 1\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            MiningError::Parse {
                line: 2,
                column: 2,
                message: "expected 0 or 1, found \"x\"".into()
            }
        );
    }

    #[test]
    fn basket_examples() {
        let db = parse_basket("milk,bread\nbread").unwrap();
        assert_eq!(db.len(), 2);
        assert_eq!(db.universe().label(0), "bread");
        assert_eq!(db.universe().label(1), "milk");
        assert_eq!(db.transactions()[0].cardinality(), 2);
        assert_eq!(db.transactions()[1], ItemSet::from_items(2, [0]).unwrap());

        let dup = parse_basket("a,a,b").unwrap();
        assert_eq!(dup.transactions()[0].cardinality(), 2);

        let blank = parse_basket("a\n\nb\n").unwrap();
        assert_eq!(blank.len(), 3);
        assert!(blank.transactions()[1].is_empty());
        assert_eq!(write_basket(&blank), "a\n\nb\n");
    }

    fn planted_spec(seed: u64) -> GeneratorSpec {
        GeneratorSpec {
            transactions: 10,
            items: 20,
            planted: Some(Plant {
                items: vec![1, 2, 3, 4, 5, 11, 12, 13, 14, 15, 16, 19],
                occurrences: 2,
            }),
            noise_density: 0.05,
            seed,
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(&planted_spec(7)).unwrap();
        let b = generate(&planted_spec(7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(write_matrix(&a), write_matrix(&b));
    }

    #[test]
    fn saturated_plant_without_noise() {
        let spec = GeneratorSpec {
            transactions: 5,
            items: 6,
            planted: Some(Plant {
                items: vec![0, 2, 4],
                occurrences: 5,
            }),
            noise_density: 0.0,
            seed: 3,
        };
        let db = generate(&spec).unwrap();
        let plant = ItemSet::from_items(6, [0, 2, 4]).unwrap();
        assert!(db.transactions().iter().all(|t| *t == plant));
    }

    #[test]
    fn dense_noise_fails_explicitly() {
        let mut spec = planted_spec(1);
        spec.noise_density = 1.0;
        assert!(matches!(generate(&spec), Err(MiningError::Generation(_))));
    }

    #[test]
    fn plant_validation() {
        let mut spec = planted_spec(1);
        spec.planted.as_mut().unwrap().occurrences = 11;
        assert!(matches!(generate(&spec), Err(MiningError::InvalidConfig(_))));
        let mut spec = planted_spec(1);
        spec.planted.as_mut().unwrap().items.push(20);
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn planted_rows_contain_plant_exactly() {
        for seed in 0..20 {
            let spec = planted_spec(seed);
            let db = generate(&spec).unwrap();
            let plant = ItemSet::from_items(20, spec.planted.unwrap().items).unwrap();
            let hits = db
                .transactions()
                .iter()
                .filter(|t| plant.is_subset_unchecked(t))
                .count();
            assert_eq!(hits, 2);
        }
    }
}
