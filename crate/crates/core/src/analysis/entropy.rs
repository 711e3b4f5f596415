use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::subshift::{ComplexityTable, Presentation};

/// Natural logarithm of an arbitrarily large natural number.
pub fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit prefix");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyEntry {
    pub n: usize,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub p: BigUint,
    pub log_p_over_n: f64,
}

/// Finite sequence `n ↦ log p(n) / n`; no limit is claimed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyProfile {
    pub presentation: String,
    pub entries: Vec<EntropyEntry>,
}

impl EntropyProfile {
    /// Value at the largest `n` of the window.
    pub fn headline(&self) -> Option<(usize, f64)> {
        self.entries.last().map(|e| (e.n, e.log_p_over_n))
    }

    pub fn value(&self, n: usize) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.n == n)
            .map(|e| e.log_p_over_n)
    }

    /// True when every entry is at most the one before it.
    pub fn is_non_increasing(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[1].log_p_over_n <= w[0].log_p_over_n)
    }

    /// True when `h(n + step) < h(n)` throughout, e.g. `step = 2` for
    /// profiles that alternate between odd and even `n`.
    pub fn decreases_with_step(&self, step: usize) -> bool {
        step > 0
            && self
                .entries
                .iter()
                .zip(self.entries.iter().skip(step))
                .all(|(a, b)| b.log_p_over_n < a.log_p_over_n)
    }

    /// CSV with header `n,p,log_p_over_n`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,p,log_p_over_n\n");
        for e in &self.entries {
            let _ = writeln!(s, "{},{},{:.12}", e.n, e.p, e.log_p_over_n);
        }
        s
    }
}

pub fn profile_from_table(
    table: &ComplexityTable,
    range: RangeInclusive<usize>,
) -> Result<EntropyProfile> {
    if *range.start() == 0 || range.is_empty() {
        return Err(Error::ZeroWindow);
    }
    let entries = range
        .map(|n| {
            let p = table.get(n).ok_or_else(|| {
                Error::InvalidArgument(format!("table stops at {}, need {n}", table.max_n()))
            })?;
            Ok(EntropyEntry {
                n,
                p: p.clone(),
                log_p_over_n: big_ln(p) / n as f64,
            })
        })
        .collect::<Result<_>>()?;
    Ok(EntropyProfile {
        presentation: table.presentation.clone(),
        entries,
    })
}

pub fn entropy_profile(x: &Presentation, range: RangeInclusive<usize>) -> Result<EntropyProfile> {
    if *range.start() == 0 || range.is_empty() {
        return Err(Error::ZeroWindow);
    }
    profile_from_table(&x.complexity_table(*range.end())?, range)
}

/// Entropy consequence of `p_Y(n) ≤ C·p_X(D·n)`: for each `n`,
/// `log p_Y(n)/n ≤ D·log p_X(D·n)/(D·n) + log C / n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyTransfer {
    pub upper_factor: usize,
    pub stretch: usize,
    /// `(n, h_Y(n), bound)` for every `n` the tables reach.
    pub rows: Vec<(usize, f64, f64)>,
    pub holds: bool,
}

pub fn entropy_transfer(
    x_table: &ComplexityTable,
    y_table: &ComplexityTable,
    upper_factor: usize,
    stretch: usize,
    max_n: usize,
) -> EntropyTransfer {
    let log_c = (upper_factor as f64).ln();
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let (Some(py), Some(px)) = (y_table.get(n), x_table.get(stretch * n)) else {
            continue;
        };
        let hy = big_ln(py) / n as f64;
        let bound = stretch as f64 * big_ln(px) / (stretch * n) as f64 + log_c / n as f64;
        rows.push((n, hy, bound));
    }
    let holds = !rows.is_empty() && rows.iter().all(|&(_, hy, b)| hy <= b + 1e-12);
    EntropyTransfer {
        upper_factor,
        stretch,
        rows,
        holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn big_ln_matches_small_and_large() {
        assert!((big_ln(&BigUint::from(1000u32)) - 1000f64.ln()).abs() < 1e-12);
        let big = BigUint::from(3u32) << 2000usize;
        let expected = 3f64.ln() + 2000.0 * std::f64::consts::LN_2;
        assert!((big_ln(&big) - expected).abs() < 1e-9);
    }

    #[test]
    fn full_shift_is_exactly_log_k() {
        let abc = crate::words::Alphabet::new(["a", "b", "c"]).unwrap();
        let prof = entropy_profile(&Presentation::full_shift(&abc), 1..=40).unwrap();
        for e in &prof.entries {
            assert!((e.log_p_over_n - 3f64.ln()).abs() < 1e-12, "n = {}", e.n);
        }
        assert_eq!(prof.headline().unwrap().0, 40);
    }

    #[test]
    fn fibonacci_profile_decays() {
        let prof = entropy_profile(&catalog::fibonacci_subshift(), 1..=30).unwrap();
        for e in &prof.entries {
            let expected = ((e.n + 1) as f64).ln() / e.n as f64;
            assert!((e.log_p_over_n - expected).abs() < 1e-12);
        }
        assert!(prof.is_non_increasing());
    }

    #[test]
    fn csv_header_and_rows() {
        let t = ComplexityTable::new("t", vec![BigUint::from(2u32), BigUint::from(4u32)]);
        let csv = profile_from_table(&t, 1..=2).unwrap().to_csv();
        assert!(csv.starts_with("n,p,log_p_over_n\n1,2,0.693147180560\n"));
        assert!(profile_from_table(&t, 1..=3).is_err());
        assert!(profile_from_table(&t, 0..=1).is_err());
    }
}
