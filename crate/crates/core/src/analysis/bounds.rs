//! Upper and lower complexity bounds for morphic images.

use num_bigint::BigUint;
use num_traits::pow::Pow;

use super::BoundReport;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::recognize::Certificate;
use crate::subshift::{ComplexityTable, Presentation};

fn certified_r(certificate: &Certificate) -> Result<usize> {
    certificate.repetition_bound().ok_or_else(|| {
        Error::InvalidArgument("lower bounds need a CertifiedUpTo certificate".into())
    })
}

/// `p_Y(n) ≤ ||σ||·p_X(n)` and `p_Y(⟨σ⟩·(n−1)+1) ≤ ||σ||·p_X(n)` for
/// `n ≤ max_n`.
pub fn verify_upper_bound_tables(
    x_table: &ComplexityTable,
    y_table: &ComplexityTable,
    sup_norm: usize,
    inf_norm: usize,
    max_n: usize,
) -> BoundReport {
    let c = BigUint::from(sup_norm);
    let mut report = BoundReport::new("upper-bound", max_n)
        .constant("||sigma||", sup_norm)
        .constant("<sigma>", inf_norm)
        .table("p_X", x_table)
        .table("p_Y", y_table);
    report.run(
        "upper-bound",
        "p_Y(n) <= ||sigma|| * p_X(n)",
        1..=max_n,
        |n| {
            let lhs = y_table.get(n)?.clone();
            let rhs = &c * x_table.get(n)?;
            let ok = lhs <= rhs;
            Some((lhs, rhs, ok))
        },
    );
    report.run(
        "upper-bound-chain",
        "p_Y(<sigma>*(n-1)+1) <= ||sigma|| * p_X(n)",
        1..=max_n,
        |n| {
            let lhs = y_table.get(inf_norm * (n - 1) + 1)?.clone();
            let rhs = &c * x_table.get(n)?;
            let ok = lhs <= rhs;
            Some((lhs, rhs, ok))
        },
    );
    report
}

pub fn verify_upper_bound(x: &Presentation, sigma: &Morphism, max_n: usize) -> Result<BoundReport> {
    if max_n == 0 {
        return Err(Error::ZeroWindow);
    }
    let y = Presentation::image(x.clone(), sigma.clone())?;
    let y_window = max_n.max(sigma.inf_norm() * (max_n - 1) + 1);
    Ok(verify_upper_bound_tables(
        &x.complexity_table(max_n)?,
        &y.complexity_table(y_window)?,
        sigma.sup_norm(),
        sigma.inf_norm(),
        max_n,
    ))
}

/// `p_X(m) ≤ card^{2r}·p_Y(m)`, i.e. `p_Y(m) ≥ c·p_X(m)` with
/// `c = 1/card^{2r}`.
pub fn verify_lower_bound_l2l_tables(
    x_table: &ComplexityTable,
    y_table: &ComplexityTable,
    card: usize,
    r: usize,
    max_n: usize,
) -> BoundReport {
    let inv_c: BigUint = BigUint::from(card).pow(2 * r);
    let mut report = BoundReport::new("l2l-lower-bound", max_n)
        .constant("card", card)
        .constant("r", r)
        .constant("1/c", &inv_c)
        .table("p_X", x_table)
        .table("p_Y", y_table);
    report.run(
        "l2l-lower-bound",
        "p_X(m) <= card^(2r) * p_Y(m)",
        1..=max_n,
        |m| {
            let lhs = x_table.get(m)?.clone();
            let rhs = &inv_c * y_table.get(m)?;
            let ok = lhs <= rhs;
            Some((lhs, rhs, ok))
        },
    );
    report
}

pub fn verify_lower_bound_l2l(
    x: &Presentation,
    alpha: &Morphism,
    certificate: &Certificate,
    max_n: usize,
) -> Result<BoundReport> {
    if !alpha.is_letter_to_letter() {
        return Err(Error::NotLetterToLetter);
    }
    if max_n == 0 {
        return Err(Error::ZeroWindow);
    }
    let r = certified_r(certificate)?;
    let y = Presentation::image(x.clone(), alpha.clone())?;
    Ok(verify_lower_bound_l2l_tables(
        &x.complexity_table(max_n)?,
        &y.complexity_table(max_n)?,
        x.alphabet().len(),
        r,
        max_n,
    ))
}

/// Tables for the general lower bound: `X`, the subdivided image `Z` and
/// the image `Y`.
pub struct LowerBoundTables<'a> {
    pub x: &'a ComplexityTable,
    pub z: &'a ComplexityTable,
    pub y: &'a ComplexityTable,
}

/// Smallest `m` with `m·(1/||σ|| − d) ≥ 1` for `d = 1/(||σ||+1)`.
pub fn general_lower_threshold(sup_norm: usize) -> usize {
    sup_norm * (sup_norm + 1)
}

/// The general lower bound `p_Y(m) ≥ c·p_X(⌊d·m⌋)` with
/// `d = 1/(||σ||+1)` and `c = 1/card(𝒜_σ)^{2r}`, together with the three
/// inequalities it is assembled from.
pub fn verify_lower_bound_general_tables(
    tables: LowerBoundTables<'_>,
    sup_norm: usize,
    subdivided_card: usize,
    r: usize,
    max_n: usize,
) -> BoundReport {
    let LowerBoundTables { x, z, y } = tables;
    let inv_c: BigUint = BigUint::from(subdivided_card).pow(2 * r);
    let threshold = general_lower_threshold(sup_norm);
    let divisor = sup_norm + 1;
    let mut report = BoundReport::new("general-lower-bound", max_n)
        .constant("||sigma||", sup_norm)
        .constant("card(A_sigma)", subdivided_card)
        .constant("r", r)
        .constant("1/c", &inv_c)
        .constant("1/d", divisor)
        .constant("threshold", threshold)
        .table("p_X", x)
        .table("p_Z", z)
        .table("p_Y", y);
    report.run("lift-count", "p_Z(n) <= p_Y(n+2r)", 1..=max_n, |n| {
        let lhs = z.get(n)?.clone();
        let rhs = y.get(n + 2 * r)?.clone();
        let ok = lhs <= rhs;
        Some((lhs, rhs, ok))
    });
    report.run(
        "extension-count",
        "p_Z(n+2r) <= card(A_sigma)^(2r) * p_Z(n)",
        1..=max_n,
        |n| {
            let lhs = z.get(n + 2 * r)?.clone();
            let rhs = &inv_c * z.get(n)?;
            let ok = lhs <= rhs;
            Some((lhs, rhs, ok))
        },
    );
    report.run(
        "subdivision-growth",
        "p_X(n) <= p_Z(||sigma||*n)",
        1..=max_n,
        |n| {
            let lhs = x.get(n)?.clone();
            let rhs = z.get(sup_norm * n)?.clone();
            let ok = lhs <= rhs;
            Some((lhs, rhs, ok))
        },
    );
    report.run(
        "general-lower-bound",
        "p_X(floor(m/(||sigma||+1))) <= card(A_sigma)^(2r) * p_Y(m)",
        1..=max_n,
        |m| {
            if m < threshold || m / divisor == 0 {
                return None;
            }
            let lhs = x.get(m / divisor)?.clone();
            let rhs = &inv_c * y.get(m)?;
            let ok = lhs <= rhs;
            Some((lhs, rhs, ok))
        },
    );
    report
}

pub fn verify_lower_bound_general(
    x: &Presentation,
    sigma: &Morphism,
    certificate: &Certificate,
    max_n: usize,
) -> Result<BoundReport> {
    if max_n == 0 {
        return Err(Error::ZeroWindow);
    }
    let r = certified_r(certificate)?;
    let d = sigma.canonical_decomposition();
    let card = d.subdivided_alphabet().len();
    let z = Presentation::image(x.clone(), d.subdivision)?;
    let y = Presentation::image(x.clone(), sigma.clone())?;
    let s = sigma.sup_norm();
    let x_table = x.complexity_table(max_n)?;
    let z_table = z.complexity_table((s * max_n).max(max_n + 2 * r))?;
    let y_table = y.complexity_table(max_n + 2 * r)?;
    Ok(verify_lower_bound_general_tables(
        LowerBoundTables {
            x: &x_table,
            z: &z_table,
            y: &y_table,
        },
        s,
        card,
        r,
        max_n,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::recognize::check_recognizability;

    #[test]
    fn sigma_ii_upper_bound_values() {
        let x = catalog::full_two_shift();
        let r = verify_upper_bound(&x, &catalog::sigma_ii(x.alphabet()), 10).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        // p_Y(4) = p_X(2) + p_X(3) = 12 ≤ 2·16
        let y = Presentation::image(x.clone(), catalog::sigma_ii(x.alphabet())).unwrap();
        assert_eq!(y.complexity(4).unwrap(), BigUint::from(12u32));
    }

    #[test]
    fn renaming_gives_equality() {
        let x = catalog::golden_mean_shift();
        let rho = catalog::renaming(x.alphabet(), &["p", "q"]);
        let r = verify_upper_bound(&x, &rho, 10).unwrap();
        assert!(r.passed());
        let cert = Certificate::CertifiedUpTo { r: 0, window: 10 };
        let l = verify_lower_bound_l2l(&x, &rho, &cert, 10).unwrap();
        assert!(l.passed());
        assert_eq!(l.constants["1/c"], "1");
    }

    #[test]
    fn corrupted_table_fails() {
        let x = catalog::full_two_shift().complexity_table(10).unwrap();
        let mut y = x.clone();
        y.set(6, BigUint::from(1000u32));
        let r = verify_upper_bound_tables(&x, &y, 1, 1, 10);
        let (c, v) = r.first_failure().unwrap();
        assert_eq!((c.name.as_str(), v.n), ("upper-bound", 6));
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("1000", "64"));
    }

    #[test]
    fn lower_bounds_need_a_certificate() {
        let x = catalog::full_two_shift();
        let rho = catalog::renaming(x.alphabet(), &["p", "q"]);
        let cert = Certificate::Inconclusive {
            r_max: 1,
            window: 4,
        };
        assert!(verify_lower_bound_l2l(&x, &rho, &cert, 5).is_err());
    }

    #[test]
    fn sigma_ii_general_pipeline() {
        let x = catalog::full_two_shift();
        let sigma = catalog::sigma_ii(x.alphabet());
        let cert = check_recognizability(&sigma, &x, 2, 8, 4).unwrap();
        let r = verify_lower_bound_general(&x, &sigma, &cert, 10).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        let last = r.check("general-lower-bound").unwrap();
        assert_eq!(last.skipped, (1..6).collect::<Vec<_>>());
        assert_eq!(r.constants["threshold"], "6");
    }
}
