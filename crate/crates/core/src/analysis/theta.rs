use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::subshift::ComplexityTable;

/// One value of `p_A(n)/p_B(n)`, kept as an exact fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub n: usize,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub numerator: BigUint,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub denominator: BigUint,
}

impl Ratio {
    fn cmp_value(&self, other: &Ratio) -> Ordering {
        (&self.numerator * &other.denominator).cmp(&(&other.numerator * &self.denominator))
    }

    pub fn to_f64(&self) -> f64 {
        let scale = self
            .numerator
            .bits()
            .max(self.denominator.bits())
            .saturating_sub(900);
        let num = (&self.numerator >> scale).to_f64().unwrap_or(f64::INFINITY);
        let den = (&self.denominator >> scale)
            .to_f64()
            .unwrap_or(f64::INFINITY);
        num / den
    }
}

/// Finite-window evidence about `p_A ∈ Θ(p_B)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaReport {
    pub window: usize,
    pub ratios: Vec<Ratio>,
    pub min: Ratio,
    pub max: Ratio,
    /// The ratio increases strictly over the second half of the window
    /// and at least doubles there. Evidence against `Θ`, never a proof.
    pub unbounded_growth_suspected: bool,
}

pub fn theta_diagnostic(a: &ComplexityTable, b: &ComplexityTable) -> Result<ThetaReport> {
    let window = a.max_n().min(b.max_n());
    if window == 0 {
        return Err(Error::ZeroWindow);
    }
    let ratios: Vec<Ratio> = (1..=window)
        .map(|n| Ratio {
            n,
            numerator: a.get(n).expect("within window").clone(),
            denominator: b.get(n).expect("within window").clone(),
        })
        .collect();
    if ratios.iter().any(|r| r.denominator == BigUint::default()) {
        return Err(Error::InvalidArgument("zero complexity value".into()));
    }
    let min = ratios
        .iter()
        .min_by(|x, y| x.cmp_value(y))
        .expect("non-empty")
        .clone();
    let max = ratios
        .iter()
        .max_by(|x, y| x.cmp_value(y).then(y.n.cmp(&x.n)))
        .expect("non-empty")
        .clone();
    let tail = &ratios[window / 2..];
    let increasing = tail.len() >= 3
        && tail
            .windows(2)
            .all(|w| w[0].cmp_value(&w[1]) == Ordering::Less);
    let first = &tail[0];
    let last = &tail[tail.len() - 1];
    let doubled =
        &last.numerator * &first.denominator >= &first.numerator * &last.denominator * 2u32;
    Ok(ThetaReport {
        window,
        min,
        max,
        unbounded_growth_suspected: increasing && doubled,
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::subshift::Presentation;

    #[test]
    fn same_table_is_constant_one() {
        let t = catalog::golden_mean_shift().complexity_table(12).unwrap();
        let r = theta_diagnostic(&t, &t).unwrap();
        assert_eq!(r.min.to_f64(), 1.0);
        assert_eq!(r.max.to_f64(), 1.0);
        assert!(!r.unbounded_growth_suspected);
    }

    #[test]
    fn doubling_image_is_flagged() {
        let x = catalog::full_two_shift();
        let y = Presentation::image(x.clone(), catalog::sigma_ii(x.alphabet())).unwrap();
        let r = theta_diagnostic(
            &x.complexity_table(16).unwrap(),
            &y.complexity_table(16).unwrap(),
        )
        .unwrap();
        assert!(r.unbounded_growth_suspected);
        // p_X(16)/p_Y(16) = 2^16 / (3·2^8)
        assert_eq!(r.max.n, 16);
        assert!((r.max.to_f64() - 256.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn linear_pair_is_not_flagged() {
        let a = catalog::fibonacci_subshift().complexity_table(20).unwrap();
        let b = ComplexityTable::new(
            "2n+1",
            (1..=20u32).map(|n| BigUint::from(2 * n + 1)).collect(),
        );
        let r = theta_diagnostic(&a, &b).unwrap();
        assert!(!r.unbounded_growth_suspected);
        assert!(r.max.to_f64() < 1.0);
    }
}
