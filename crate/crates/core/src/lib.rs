//! Maximal frequent itemset mining over transaction databases.
//!
//! The main entry point is [`mfif::mine_maximal`], a top-down search that
//! starts from the longest transactions and splits infrequent candidates
//! into their one-item-smaller subsets until frequent itemsets appear.
//! [`apriori::mine_apriori`] is the bottom-up baseline and
//! [`oracle`] enumerates the whole powerset for small universes.
//!
//! ```
//! use mfif::io::{parse_matrix, EXAMPLE_MATRIX};
//! use mfif::mfif::{mine_maximal, MfifConfig};
//! use mfif::SupportThreshold;
//!
//! let db = parse_matrix(EXAMPLE_MATRIX).unwrap();
//! let min_sup = SupportThreshold::from_percent(20.0, db.len()).unwrap();
//! let result = mine_maximal(&db, min_sup, MfifConfig::first_only()).unwrap();
//! let (set, support) = &result.itemsets[0];
//! assert_eq!(db.universe().label_line(set), "I2 I3 I4 I5 I6 I12 I13 I14 I15 I16 I17 I20");
//! assert_eq!(*support, 2);
//! assert_eq!(result.metrics.db_scans, 2);
//! ```

pub mod apriori;
#[cfg(feature = "cli")]
pub mod cli;
pub mod db;
pub mod error;
pub mod io;
pub mod itemset;
pub mod mfif;
pub mod oracle;
pub mod rules;
pub mod support;
pub mod threshold;

pub use db::TransactionDb;
pub use error::{MiningError, Result};
pub use itemset::{ItemSet, ItemUniverse};
pub use support::RunMetrics;
pub use threshold::{MinSupport, SupportThreshold};
