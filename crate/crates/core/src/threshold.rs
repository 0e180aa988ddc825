use std::fmt;
use std::str::FromStr;

use crate::error::{MiningError, Result};

/// Minimum support as the user gave it plus the transaction count it implies.
///
/// An itemset is frequent when its support is at least [`absolute`](Self::absolute).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportThreshold {
    percent: f64,
    absolute: usize,
}

impl SupportThreshold {
    /// `absolute = max(1, ceil(percent / 100 * db_size))`.
    pub fn from_percent(percent: f64, db_size: usize) -> Result<Self> {
        if !(0.0..=100.0).contains(&percent) {
            return Err(MiningError::InvalidPercent(percent));
        }
        let exact = percent * db_size as f64 / 100.0;
        // 20% of 10 must land on 2, not 3, after float noise.
        let rounded = exact.round();
        let count = if (exact - rounded).abs() < 1e-9 {
            rounded
        } else {
            exact.ceil()
        };
        Ok(SupportThreshold {
            percent,
            absolute: (count as usize).max(1),
        })
    }

    /// Threshold given directly as a transaction count; 0 is raised to 1.
    pub fn from_count(count: usize, db_size: usize) -> Self {
        let absolute = count.max(1);
        let percent = if db_size == 0 {
            100.0
        } else {
            absolute as f64 * 100.0 / db_size as f64
        };
        SupportThreshold { percent, absolute }
    }

    pub fn percent(&self) -> f64 {
        self.percent
    }

    pub fn absolute(&self) -> usize {
        self.absolute
    }

    pub fn is_met_by(&self, support: usize) -> bool {
        support >= self.absolute
    }

    /// No itemset can be frequent when the count exceeds `|D|`.
    pub fn is_attainable(&self, db_size: usize) -> bool {
        self.absolute <= db_size
    }
}

/// Minimum support as typed on a command line: `20%` or an absolute `2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MinSupport {
    Percent(f64),
    Count(usize),
}

impl MinSupport {
    pub fn resolve(self, db_size: usize) -> Result<SupportThreshold> {
        match self {
            MinSupport::Percent(p) => SupportThreshold::from_percent(p, db_size),
            MinSupport::Count(c) => Ok(SupportThreshold::from_count(c, db_size)),
        }
    }
}

impl FromStr for MinSupport {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Some(p) = s.strip_suffix('%') {
            let value: f64 = p
                .trim()
                .parse()
                .map_err(|_| format!("invalid percentage {s:?}"))?;
            if !(0.0..=100.0).contains(&value) {
                return Err(format!("minimum support {value}% is outside [0, 100]"));
            }
            Ok(MinSupport::Percent(value))
        } else {
            s.parse()
                .map(MinSupport::Count)
                .map_err(|_| format!("invalid support {s:?}: expected a count or a percentage like 20%"))
        }
    }
}

impl fmt::Display for MinSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinSupport::Percent(p) => write!(f, "{p}%"),
            MinSupport::Count(c) => write!(f, "{c}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn percent_examples() {
        assert_eq!(SupportThreshold::from_percent(20.0, 10).unwrap().absolute(), 2);
        assert_eq!(SupportThreshold::from_percent(0.0, 10).unwrap().absolute(), 1);
        assert_eq!(SupportThreshold::from_percent(33.0, 10).unwrap().absolute(), 4);
        assert_eq!(SupportThreshold::from_percent(100.0, 10).unwrap().absolute(), 10);
        assert_eq!(SupportThreshold::from_percent(100.0, 0).unwrap().absolute(), 1);
    }

    #[test]
    fn percent_out_of_range() {
        assert_eq!(
            SupportThreshold::from_percent(101.0, 10),
            Err(MiningError::InvalidPercent(101.0))
        );
        assert!(SupportThreshold::from_percent(-0.5, 10).is_err());
        assert!(SupportThreshold::from_percent(f64::NAN, 10).is_err());
    }

    #[test]
    fn count_floor() {
        assert_eq!(SupportThreshold::from_count(0, 10).absolute(), 1);
        assert_eq!(SupportThreshold::from_count(2, 10).percent(), 20.0);
    }

    #[test]
    fn parse_min_support() {
        assert_eq!("20%".parse::<MinSupport>(), Ok(MinSupport::Percent(20.0)));
        assert_eq!("2".parse::<MinSupport>(), Ok(MinSupport::Count(2)));
        assert!("101%".parse::<MinSupport>().is_err());
        assert!("abc".parse::<MinSupport>().is_err());
    }

    proptest! {
        #[test]
        fn bounded_and_monotone(a in 0.0f64..=100.0, b in 0.0f64..=100.0, n in 1usize..5000) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let tl = SupportThreshold::from_percent(lo, n).unwrap();
            let th = SupportThreshold::from_percent(hi, n).unwrap();
            prop_assert!(tl.absolute() >= 1 && th.absolute() <= n);
            prop_assert!(tl.absolute() <= th.absolute());
        }
    }
}
