//! Browser bindings for the miner. Every export takes and returns plain
//! strings (matrix text in, JSON out) so the page needs no bundler.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use mfif::apriori::{maximal_from_levels, mine_apriori};
use mfif::io::{generate, parse_matrix, write_matrix, GeneratorSpec, Plant, EXAMPLE_MATRIX};
use mfif::mfif::{mine_maximal, MfifConfig, MfifMode};
use mfif::{RunMetrics, SupportThreshold, TransactionDb};

#[derive(Debug, Serialize)]
struct BorderSet {
    labels: String,
    flags: Vec<u8>,
    size: usize,
    support: usize,
}

#[derive(Debug, Serialize)]
struct Cost {
    db_scans: u64,
    support_calls: u64,
}

impl From<&RunMetrics> for Cost {
    fn from(m: &RunMetrics) -> Self {
        Cost {
            db_scans: m.db_scans,
            support_calls: m.support_calls,
        }
    }
}

#[derive(Debug, Serialize)]
struct MineReport {
    transactions: usize,
    items: usize,
    threshold: usize,
    border: Vec<BorderSet>,
    mfif: Cost,
    apriori: Cost,
    agree: bool,
}

#[derive(Debug, Serialize)]
struct SweepPoint {
    percent: f64,
    threshold: usize,
    border_size: usize,
    largest: usize,
    mfif: Cost,
    apriori: Cost,
}

fn parse(matrix: &str) -> Result<TransactionDb, String> {
    let db = parse_matrix(matrix).map_err(|e| e.to_string())?;
    if db.is_empty() || db.item_count() == 0 {
        return Err("the matrix has no transactions".into());
    }
    Ok(db)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// Mines `matrix` at `percent` and reports the border plus both miners' costs.
pub fn mine_report(matrix: &str, percent: f64, all_maximal: bool) -> Result<String, String> {
    let db = parse(matrix)?;
    let min_sup = SupportThreshold::from_percent(percent, db.len()).map_err(|e| e.to_string())?;
    let mode = if all_maximal {
        MfifMode::AllMaximal
    } else {
        MfifMode::FirstOnly
    };
    let config = MfifConfig {
        mode,
        ..MfifConfig::default()
    };
    let top_down = mine_maximal(&db, min_sup, config).map_err(|e| e.to_string())?;
    let (levels, apriori_metrics) = mine_apriori(&db, min_sup).map_err(|e| e.to_string())?;

    let mut bottom_up = maximal_from_levels(&levels);
    if !all_maximal {
        let top = bottom_up.iter().map(|(s, _)| s.cardinality()).max().unwrap_or(0);
        bottom_up.retain(|(s, _)| s.cardinality() == top);
    }
    let border = top_down
        .itemsets
        .iter()
        .filter(|(s, _)| !s.is_empty())
        .map(|(s, n)| BorderSet {
            labels: db.universe().label_line(s),
            flags: s.to_flags().into_iter().map(u8::from).collect(),
            size: s.cardinality(),
            support: *n,
        })
        .collect();
    to_json(&MineReport {
        transactions: db.len(),
        items: db.item_count(),
        threshold: min_sup.absolute(),
        border,
        mfif: Cost::from(&top_down.metrics),
        apriori: Cost::from(&apriori_metrics),
        agree: top_down.itemsets == bottom_up,
    })
}

/// Generates a planted dataset and returns it as matrix text.
pub fn generate_text(
    transactions: usize,
    items: usize,
    plant: &str,
    occurrences: usize,
    noise: f64,
    seed: u64,
) -> Result<String, String> {
    let plant_items = plant
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n - 1),
            _ => Err(format!("invalid item {t:?}")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let planted = (!plant_items.is_empty()).then_some(Plant {
        items: plant_items,
        occurrences,
    });
    let spec = GeneratorSpec {
        transactions,
        items,
        planted,
        noise_density: noise,
        seed,
    };
    generate(&spec)
        .map(|db| write_matrix(&db))
        .map_err(|e| e.to_string())
}

const MAX_SWEEP_POINTS: usize = 200;

/// First-maximal cost of both miners over a range of thresholds.
pub fn sweep_report(matrix: &str, from: f64, to: f64, step: f64) -> Result<String, String> {
    let db = parse(matrix)?;
    if step.is_nan() || step <= 0.0 || from > to {
        return Err("need from <= to and a positive step".into());
    }
    if (to - from) / step > MAX_SWEEP_POINTS as f64 {
        return Err(format!("at most {MAX_SWEEP_POINTS} thresholds per sweep"));
    }
    let mut points = Vec::new();
    let mut percent = from;
    while percent <= to + 1e-9 {
        let min_sup =
            SupportThreshold::from_percent(percent, db.len()).map_err(|e| e.to_string())?;
        let top_down =
            mine_maximal(&db, min_sup, MfifConfig::first_only()).map_err(|e| e.to_string())?;
        let (_, apriori_metrics) = mine_apriori(&db, min_sup).map_err(|e| e.to_string())?;
        points.push(SweepPoint {
            percent,
            threshold: min_sup.absolute(),
            border_size: top_down.itemsets.iter().filter(|(s, _)| !s.is_empty()).count(),
            largest: top_down.itemsets.first().map_or(0, |(s, _)| s.cardinality()),
            mfif: Cost::from(&top_down.metrics),
            apriori: Cost::from(&apriori_metrics),
        });
        percent += step;
    }
    to_json(&points)
}

#[wasm_bindgen]
pub fn example_matrix() -> String {
    EXAMPLE_MATRIX.to_string()
}

#[wasm_bindgen]
pub fn mine(matrix: &str, percent: f64, all_maximal: bool) -> Result<String, JsValue> {
    mine_report(matrix, percent, all_maximal).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate_matrix(
    transactions: usize,
    items: usize,
    plant: &str,
    occurrences: usize,
    noise: f64,
    seed: u64,
) -> Result<String, JsValue> {
    generate_text(transactions, items, plant, occurrences, noise, seed)
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn threshold_sweep(matrix: &str, from: f64, to: f64, step: f64) -> Result<String, JsValue> {
    sweep_report(matrix, from, to, step).map_err(|e| JsValue::from_str(&e))
}
