//! The doubling morphism on a full shift, where the image complexity falls
//! out of the Θ-class of the source.

use num_bigint::BigUint;
use num_traits::pow::Pow;
use serde::Serialize;

use super::entropy::{profile_from_table, EntropyProfile};
use super::BoundReport;
use crate::catalog;
use crate::error::{Error, Result};
use crate::subshift::{ComplexityTable, Presentation};
use crate::words::Alphabet;

/// Largest entropy window used by the suite.
pub const MAX_ENTROPY_WINDOW: usize = 30;

/// Largest image language the entropy profile may enumerate.
const ENTROPY_BUDGET_LOG2: u32 = 17;

#[derive(Clone, Debug, Serialize)]
pub struct EntropyComparison {
    pub window: usize,
    pub h_x: f64,
    pub h_y: f64,
    pub half_h_x: f64,
    pub y_profile: EntropyProfile,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleBundle {
    pub alphabet_size: usize,
    pub window: usize,
    pub doubling: BoundReport,
    pub ratio: BoundReport,
    pub entropy: EntropyComparison,
}

impl CounterexampleBundle {
    pub fn passed(&self) -> bool {
        self.doubling.passed() && self.ratio.passed() && self.entropy.h_y < self.entropy.h_x
    }

    pub fn to_text(&self) -> String {
        let e = &self.entropy;
        format!(
            "{}{}entropy-drop                 {}  (window {})\n  h_X = {:.6}  h_Y = {:.6}  h_X/2 = {:.6}\n",
            self.doubling.to_text(),
            self.ratio.to_text(),
            if e.h_y < e.h_x { "PASS" } else { "FAIL" },
            e.window,
            e.h_x,
            e.h_y,
            e.half_h_x
        )
    }
}

/// Largest even `W ≤ 30` whose σ_II-image language stays within budget.
pub fn entropy_window(k: usize) -> usize {
    let mut w = MAX_ENTROPY_WINDOW;
    while w > 2 {
        let size = BigUint::from(k).pow(w / 2 + 1);
        if size <= BigUint::from(1u32) << ENTROPY_BUDGET_LOG2 {
            break;
        }
        w -= 2;
    }
    w
}

fn alphabet_of_size(k: usize) -> Result<std::sync::Arc<Alphabet>> {
    Alphabet::new((1..=k).map(|i| format!("a{i}")))
}

/// Exact doubling identities and the growing ratio `p_X(2n)/p_Y(2n)` for
/// `Y = σ_II(X)`, `X` the full `k`-shift, over `n ≤ max_n`.
pub fn doubling_reports(
    x: &ComplexityTable,
    y: &ComplexityTable,
    k: usize,
    max_n: usize,
) -> (BoundReport, BoundReport) {
    let two = BigUint::from(2u32);
    let mut doubling = BoundReport::new("doubling", max_n)
        .constant("k", k)
        .table("p_X", x)
        .table("p_Y", y);
    doubling.run("doubling-odd", "p_Y(2n-1) = 2 * p_X(n)", 1..=max_n, |n| {
        let lhs = y.get(2 * n - 1)?.clone();
        let rhs = &two * x.get(n)?;
        let ok = lhs == rhs;
        Some((lhs, rhs, ok))
    });
    doubling.run(
        "doubling-even",
        "p_Y(2n) = p_X(n) + p_X(n+1)",
        1..=max_n,
        |n| {
            let lhs = y.get(2 * n)?.clone();
            let rhs = x.get(n)? + x.get(n + 1)?;
            let ok = lhs == rhs;
            Some((lhs, rhs, ok))
        },
    );

    let kb = BigUint::from(k);
    let mut ratio = BoundReport::new("ratio", max_n)
        .constant("k", k)
        .table("p_X", x)
        .table("p_Y", y);
    ratio.run(
        "ratio-closed-form",
        "p_X(2n) * (k^n + k^(n+1)) = k^(2n) * p_Y(2n)",
        1..=max_n,
        |n| {
            let kn: BigUint = kb.clone().pow(n);
            let lhs = x.get(2 * n)? * (&kn + &kn * &kb);
            let rhs = &kn * &kn * y.get(2 * n)?;
            let ok = lhs == rhs;
            Some((lhs, rhs, ok))
        },
    );
    ratio.run(
        "ratio-growth",
        "p_X(2n)/p_Y(2n) < p_X(2n+2)/p_Y(2n+2)",
        1..=max_n.saturating_sub(1),
        |n| {
            let lhs = x.get(2 * n)? * y.get(2 * n + 2)?;
            let rhs = x.get(2 * n + 2)? * y.get(2 * n)?;
            let ok = lhs < rhs;
            Some((lhs, rhs, ok))
        },
    );
    (doubling, ratio)
}

/// Runs the whole suite for the full `k`-shift and its σ_II image.
pub fn counterexample_suite(k: usize, max_n: usize) -> Result<CounterexampleBundle> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "alphabet size must be at least 2, got {k}"
        )));
    }
    if max_n == 0 {
        return Err(Error::ZeroWindow);
    }
    let alphabet = alphabet_of_size(k)?;
    let x = Presentation::full_shift(&alphabet);
    let y = Presentation::image(x.clone(), catalog::sigma_ii(&alphabet))?;
    let w = entropy_window(k);
    let x_table = x.complexity_table((2 * max_n + 2).max(w))?;
    let y_table = y.complexity_table((2 * max_n).max(w))?;
    let (doubling, ratio) = doubling_reports(&x_table, &y_table, k, max_n);

    let x_profile = profile_from_table(&x_table, 1..=w)?;
    let y_profile = profile_from_table(&y_table, 1..=w)?;
    let h_x = x_profile.headline().expect("non-empty window").1;
    let h_y = y_profile.headline().expect("non-empty window").1;
    Ok(CounterexampleBundle {
        alphabet_size: k,
        window: max_n,
        doubling,
        ratio,
        entropy: EntropyComparison {
            window: w,
            h_x,
            h_y,
            half_h_x: h_x / 2.0,
            y_profile,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_by_alphabet_size() {
        assert_eq!(entropy_window(2), 30);
        // 3^10 ≤ 2^17 < 3^11
        assert_eq!(entropy_window(3), 18);
    }

    #[test]
    fn small_suite_passes() {
        let b = counterexample_suite(2, 6).unwrap();
        assert!(b.passed(), "{}", b.to_text());
        assert_eq!(b.entropy.window, 30);
        assert!(b.entropy.h_y <= 0.40);
        assert!(counterexample_suite(1, 4).is_err());
    }

    #[test]
    fn three_letters() {
        let b = counterexample_suite(3, 4).unwrap();
        assert!(b.passed(), "{}", b.to_text());
    }

    #[test]
    fn broken_identity_is_reported() {
        let x = catalog::full_two_shift().complexity_table(8).unwrap();
        let y = x.clone();
        let (d, _) = doubling_reports(&x, &y, 2, 3);
        assert!(!d.passed());
        assert_eq!(d.first_failure().unwrap().1.n, 1);
    }
}
