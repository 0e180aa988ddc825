//! The `mfif` command line.
//!
//! Exit codes: `0` success, `1` usage/parse/validation error, `2` no
//! non-empty frequent itemset at the requested threshold.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::apriori::{maximal_from_levels, mine_apriori};
use crate::db::TransactionDb;
use crate::error::MiningError;
use crate::io::{generate, matrix_row, DatasetFormat, GeneratorSpec, Plant};
use crate::itemset::ItemSet;
use crate::mfif::{mine_maximal, MfifConfig, MfifMode, MiningWarning};
use crate::oracle::oracle_maximal;
use crate::rules::{expand_border, generate_rules};
use crate::support::RunMetrics;
use crate::threshold::{MinSupport, SupportThreshold};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOTHING_FREQUENT: i32 = 2;

/// The planted itemset of the reference example, 1-based.
const DEFAULT_PLANT: &str = "2,3,4,5,6,12,13,14,15,16,17,20";

#[derive(Debug, Parser)]
#[command(name = "mfif", version, about = "Maximal frequent itemset mining")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine maximal frequent itemsets from a dataset file.
    Mine(MineArgs),
    /// Print strong association rules.
    Rules(RulesArgs),
    /// Write a synthetic dataset with an optional planted itemset.
    Gen(GenArgs),
    /// Compare MFIF and Apriori on generated datasets and write a CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Mfif,
    Apriori,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Stop at the first level with a frequent itemset.
    First,
    /// Return the whole maximal border.
    All,
}

impl From<ModeArg> for MfifMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::First => MfifMode::FirstOnly,
            ModeArg::All => MfifMode::AllMaximal,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct MineArgs {
    pub input: PathBuf,
    #[arg(long, default_value = "matrix")]
    pub format: DatasetFormat,
    #[arg(long, value_enum, default_value = "mfif")]
    pub algo: Algo,
    /// `20%` or an absolute transaction count such as `2`.
    #[arg(long, default_value = "20%")]
    pub min_sup: MinSupport,
    #[arg(long, value_enum, default_value = "all")]
    pub mode: ModeArg,
    /// Smallest itemset size the top-down search descends to.
    #[arg(long, default_value_t = 1)]
    pub min_k: usize,
}

#[derive(Debug, clap::Args)]
pub struct RulesArgs {
    pub input: PathBuf,
    #[arg(long, default_value = "matrix")]
    pub format: DatasetFormat,
    #[arg(long, default_value = "20%")]
    pub min_sup: MinSupport,
    #[arg(long, default_value_t = 0.8)]
    pub min_conf: f64,
    /// Print at most this many rules.
    #[arg(long)]
    pub max_rules: Option<usize>,
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 10)]
    pub transactions: usize,
    #[arg(long, default_value_t = 20)]
    pub items: usize,
    /// Comma-separated 1-based item numbers of the planted itemset.
    #[arg(long)]
    pub plant: Option<String>,
    /// Rows that contain the planted itemset.
    #[arg(long, default_value_t = 2)]
    pub occurrences: usize,
    #[arg(long, default_value_t = 0.05)]
    pub noise: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "matrix")]
    pub format: DatasetFormat,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct BenchArgs {
    /// Comma-separated transaction counts. Empty for a header-only CSV.
    #[arg(long, default_value = "100,500,5000,10000")]
    pub sizes: String,
    #[arg(long, default_value_t = 20)]
    pub items: usize,
    #[arg(long, default_value = DEFAULT_PLANT)]
    pub plant: String,
    /// Percent of transactions containing the plant; also the mining threshold.
    #[arg(long, default_value_t = 20.0)]
    pub plant_support: f64,
    /// Kept low: noisy rows far longer than the plant make top-down subset
    /// creation more expensive than Apriori.
    #[arg(long, default_value_t = 0.02)]
    pub noise: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub repetitions: usize,
    #[arg(long, value_enum, default_value = "first")]
    pub mode: ModeArg,
    #[arg(long, short, default_value = "bench.csv")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchAlgo {
    Mfif,
    Apriori,
}

/// One CSV row: `transactions,algo,seconds,db_scans,candidates`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub transactions: usize,
    pub algo: BenchAlgo,
    pub seconds: f64,
    pub db_scans: u64,
    pub candidates: u64,
    #[serde(skip)]
    pub support_calls: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Mining(#[from] MiningError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("size {size}: {source}")]
    Bench { size: usize, source: MiningError },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Write(#[from] std::io::Error),
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Mine(a) => cmd_mine(&a, out, err),
        Command::Rules(a) => cmd_rules(&a, out),
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Bench(a) => cmd_bench(&a, out).map(|_| EXIT_OK),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn read_db(path: &Path, format: DatasetFormat) -> Result<TransactionDb, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    format.parse(&text).map_err(|e| match e {
        MiningError::Parse { .. } => CliError::Usage(format!("{}: {e}", path.display())),
        other => other.into(),
    })
}

fn parse_plant(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n - 1),
            _ => Err(CliError::Usage(format!(
                "invalid plant item {t:?}: expected 1-based item numbers"
            ))),
        })
        .collect()
}

fn parse_sizes(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Usage(format!("invalid size {t:?}")))
        })
        .collect()
}

fn threshold_line(min_sup: MinSupport, t: SupportThreshold) -> String {
    match min_sup {
        MinSupport::Percent(p) => format!("minimum support: {p}% = {} transactions", t.absolute()),
        MinSupport::Count(_) => format!("minimum support: {} transactions", t.absolute()),
    }
}

pub fn cmd_mine(args: &MineArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let db = read_db(&args.input, args.format)?;
    let min_sup = args.min_sup.resolve(db.len())?;
    let mode = MfifMode::from(args.mode);

    let (mut border, metrics, warning) = match args.algo {
        Algo::Mfif => {
            let config = MfifConfig {
                mode,
                floor_k: args.min_k,
            };
            let res = mine_maximal(&db, min_sup, config)?;
            (res.itemsets, res.metrics, res.warning)
        }
        Algo::Apriori => {
            let (levels, metrics) = mine_apriori(&db, min_sup)?;
            (maximal_from_levels(&levels), metrics, None)
        }
        Algo::Oracle => {
            let start = Instant::now();
            let border = oracle_maximal(&db, min_sup)?;
            let metrics = RunMetrics {
                wall_time: start.elapsed(),
                ..RunMetrics::default()
            };
            (border, metrics, None)
        }
    };
    if mode == MfifMode::FirstOnly {
        let top = border.iter().map(|(s, _)| s.cardinality()).max().unwrap_or(0);
        border.retain(|(s, _)| s.cardinality() == top);
    }
    border.retain(|(s, _)| !s.is_empty());

    writeln!(out, "{}", threshold_line(args.min_sup, min_sup))?;
    writeln!(out)?;
    match warning {
        Some(MiningWarning::ThresholdUnattainable) => writeln!(
            err,
            "warning: threshold of {} exceeds the {} transactions",
            min_sup.absolute(),
            db.len()
        )?,
        Some(MiningWarning::NothingFound) => writeln!(
            err,
            "warning: nothing frequent at or above {} items",
            args.min_k
        )?,
        None => {}
    }
    if border.is_empty() {
        writeln!(out, "NO FREQUENT ITEM SET FOUND")?;
    } else {
        writeln!(out, "THE FREQUENT ITEM SET IS:")?;
        for (n, (set, support)) in border.iter().enumerate() {
            if n > 0 {
                writeln!(out)?;
            }
            if args.format == DatasetFormat::Matrix {
                writeln!(out, "{}", matrix_row(set))?;
            }
            writeln!(out, "{}", db.universe().label_line(set))?;
            writeln!(out, "support: {support}")?;
        }
    }
    writeln!(out)?;
    let algo = match args.algo {
        Algo::Mfif => "mfif",
        Algo::Apriori => "apriori",
        Algo::Oracle => "oracle",
    };
    writeln!(
        out,
        "algo={algo} db_scans={} support_calls={} candidates={}",
        metrics.db_scans, metrics.support_calls, metrics.candidates_generated
    )?;
    writeln!(err, "time: {:.6} s", metrics.wall_time.as_secs_f64())?;
    Ok(if border.is_empty() {
        EXIT_NOTHING_FREQUENT
    } else {
        EXIT_OK
    })
}

pub fn cmd_rules(args: &RulesArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if !(0.0..=1.0).contains(&args.min_conf) {
        return Err(MiningError::InvalidConfidence(args.min_conf).into());
    }
    let db = read_db(&args.input, args.format)?;
    let min_sup = args.min_sup.resolve(db.len())?;
    let res = mine_maximal(&db, min_sup, MfifConfig::default())?;
    let border: Vec<ItemSet> = res.sets().into_iter().filter(|s| !s.is_empty()).collect();
    if border.is_empty() {
        writeln!(out, "NO FREQUENT ITEM SET FOUND")?;
        return Ok(EXIT_NOTHING_FREQUENT);
    }
    let mut metrics = res.metrics;
    let family = expand_border(&border, &db, &mut metrics)?;
    let rules = generate_rules(&family, args.min_conf)?;
    let limit = args.max_rules.unwrap_or(usize::MAX);
    for rule in rules.iter().take(limit) {
        writeln!(out, "{}", rule.display(db.universe()))?;
    }
    writeln!(out, "{} rules", rules.len())?;
    Ok(EXIT_OK)
}

pub fn gen_spec(args: &GenArgs) -> Result<GeneratorSpec, CliError> {
    let planted = match &args.plant {
        Some(p) => Some(Plant {
            items: parse_plant(p)?,
            occurrences: args.occurrences,
        }),
        None => None,
    };
    Ok(GeneratorSpec {
        transactions: args.transactions,
        items: args.items,
        planted,
        noise_density: args.noise,
        seed: args.seed,
    })
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let db = generate(&gen_spec(args)?)?;
    let text = args.format.write(&db);
    match &args.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    if xs.len().is_multiple_of(2) {
        (xs[mid - 1] + xs[mid]) / 2.0
    } else {
        xs[mid]
    }
}

/// Runs the benchmark and returns the rows written to `args.output`.
pub fn run_bench(args: &BenchArgs) -> Result<Vec<BenchRow>, CliError> {
    let sizes = parse_sizes(&args.sizes)?;
    let plant_items = parse_plant(&args.plant)?;
    let reps = args.repetitions.max(1);
    let mut rows = Vec::new();
    for &size in &sizes {
        let occurrences = SupportThreshold::from_percent(args.plant_support, size)?.absolute();
        let spec = GeneratorSpec {
            transactions: size,
            items: args.items,
            planted: Some(Plant {
                items: plant_items.clone(),
                occurrences,
            }),
            noise_density: args.noise,
            seed: args.seed,
        };
        let db = generate(&spec).map_err(|source| CliError::Bench { size, source })?;
        let min_sup = SupportThreshold::from_count(occurrences, size);
        let config = MfifConfig {
            mode: args.mode.into(),
            floor_k: 1,
        };

        let mut times = Vec::with_capacity(reps);
        let mut last = RunMetrics::default();
        for _ in 0..reps {
            let res = mine_maximal(&db, min_sup, config)?;
            times.push(res.metrics.wall_time.as_secs_f64());
            last = res.metrics;
        }
        rows.push(bench_row(size, BenchAlgo::Mfif, median(times), &last));

        let mut times = Vec::with_capacity(reps);
        for _ in 0..reps {
            let (_, metrics) = mine_apriori(&db, min_sup)?;
            times.push(metrics.wall_time.as_secs_f64());
            last = metrics;
        }
        rows.push(bench_row(size, BenchAlgo::Apriori, median(times), &last));
    }
    Ok(rows)
}

fn bench_row(size: usize, algo: BenchAlgo, seconds: f64, m: &RunMetrics) -> BenchRow {
    BenchRow {
        transactions: size,
        algo,
        seconds,
        db_scans: m.db_scans,
        candidates: m.candidates_generated,
        support_calls: m.support_calls,
    }
}

/// CSV text for `rows`, header always present.
pub fn bench_csv(rows: &[BenchRow]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        writer.write_record(["transactions", "algo", "seconds", "db_scans", "candidates"])?;
    }
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<Vec<BenchRow>, CliError> {
    let rows = run_bench(args)?;
    let text = bench_csv(&rows)?;
    fs::write(&args.output, &text).map_err(|source| CliError::Io {
        path: args.output.display().to_string(),
        source,
    })?;
    writeln!(
        out,
        "{:>12} {:>8} {:>12} {:>9} {:>11}",
        "transactions", "algo", "seconds", "db_scans", "candidates"
    )?;
    for r in &rows {
        let algo = match r.algo {
            BenchAlgo::Mfif => "mfif",
            BenchAlgo::Apriori => "apriori",
        };
        writeln!(
            out,
            "{:>12} {:>8} {:>12.6} {:>9} {:>11}",
            r.transactions, algo, r.seconds, r.db_scans, r.candidates
        )?;
    }
    writeln!(out, "wrote {}", args.output.display())?;
    Ok(rows)
}
