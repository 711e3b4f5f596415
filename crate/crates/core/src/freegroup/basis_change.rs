//! Moving a doubled subshift from one free basis to another.

use num_bigint::BigUint;
use serde::Serialize;

use super::{compose_check_inverse, FreeGroupHom};
use crate::analysis::BoundReport;
use crate::error::{Error, Result};
use crate::subshift::{ComplexityTable, Presentation};
use crate::words::{chop_slice, FactorSet};

/// Number of consecutive preimage-window increments without change after
/// which the chopped-image language is considered complete.
pub const STABLE_INCREMENTS: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct BasisChangeLanguage {
    pub words: FactorSet,
    /// Largest preimage length enumerated.
    pub preimage_window: usize,
    /// Preimage length that the counting argument guarantees to suffice.
    pub proof_window: usize,
    /// Whether enumeration stopped on stabilization rather than by reaching
    /// `proof_window`.
    pub stabilized: bool,
}

/// `ℒ(Y±) ∩ ℬ±^n` from the chopped images `φ_BA(u)†C_BA`, `u ∈ ℒ(X±)`.
///
/// Every chopped image is a word of `ℒ(Y±)` once `C_BA` bounds the
/// cancellation of `φ_BA`. Preimages are taken over all lengths up to the
/// window `||φ_AB||·(n + 2h)`, `h = C_AB·||φ_BA|| + C_BA`, which is where
/// every length-`n` word is guaranteed to appear; enumeration stops earlier
/// once the set has not changed for [`STABLE_INCREMENTS`] lengths in a row.
pub fn basis_change_language(
    x_pm: &Presentation,
    forward: &FreeGroupHom,
    backward: &FreeGroupHom,
    forward_cancellation: usize,
    backward_cancellation: usize,
    n: usize,
) -> Result<BasisChangeLanguage> {
    if n == 0 {
        return Err(Error::ZeroWindow);
    }
    x_pm.alphabet().ensure_same(forward.source().full())?;
    if !compose_check_inverse(forward, backward) {
        return Err(Error::NotInverse);
    }
    let h = backward_cancellation * forward.sup_norm() + forward_cancellation;
    let proof_window = backward.sup_norm() * (n + 2 * h);

    let mut words = FactorSet::new(forward.target().full());
    let mut unchanged = 0;
    let mut stabilized = false;
    let mut reached = 0;
    for len in 1..=proof_window {
        reached = len;
        let before = words.len();
        for u in x_pm.language(len)?.raw() {
            let img = forward.apply_letters(u);
            words.extend_factors_of(chop_slice(&img, forward_cancellation), n);
        }
        if words.len() == before && !words.is_empty() {
            unchanged += 1;
            if unchanged >= STABLE_INCREMENTS {
                stabilized = true;
                break;
            }
        } else {
            unchanged = 0;
        }
    }
    if words.is_empty() {
        return Err(Error::InsufficientWindow(format!(
            "no chopped image reaches length {n} within preimage length {proof_window}"
        )));
    }
    Ok(BasisChangeLanguage {
        words,
        preimage_window: reached,
        proof_window,
        stabilized,
    })
}

/// Norms and cancellation bounds of a basis change `φ_BA` with inverse
/// `φ_AB`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BasisChangeConstants {
    /// `||φ_BA||`
    pub forward_norm: usize,
    /// `||φ_AB||`
    pub backward_norm: usize,
    /// `C(ℬ,𝒜)`, cancellation bound of `φ_BA`.
    pub forward_cancellation: usize,
    /// `C(𝒜,ℬ)`, cancellation bound of `φ_AB`.
    pub backward_cancellation: usize,
}

impl BasisChangeConstants {
    pub fn from_pair(
        forward: &FreeGroupHom,
        backward: &FreeGroupHom,
        forward_cancellation: usize,
        backward_cancellation: usize,
    ) -> Self {
        Self {
            forward_norm: forward.sup_norm(),
            backward_norm: backward.sup_norm(),
            forward_cancellation,
            backward_cancellation,
        }
    }

    /// `C = 4·C(𝒜,ℬ)·||φ_BA|| + 1`
    pub fn upper_factor(&self) -> usize {
        4 * self.backward_cancellation * self.forward_norm + 1
    }

    /// `D = ||φ_BA||·||φ_AB|| + 1`, also used (symmetrically) for `1/d`.
    pub fn stretch(&self) -> usize {
        self.forward_norm * self.backward_norm + 1
    }

    /// `1/c`: the upper factor of the reverse change.
    pub fn lower_divisor(&self) -> usize {
        4 * self.forward_cancellation * self.backward_norm + 1
    }
}

/// Checks `p_Y±(n) ≤ C·p_X±(D·n)` and `c·p_X±(⌊d·n⌋) ≤ p_Y±(n)` for
/// `n ≤ max_n`, with `(c, d) = (1/C′, 1/D)` from the reverse change.
/// `x_table` must reach `D·max_n`. Values of `n` with `⌊n/D⌋ = 0` are skipped
/// for the lower inequality.
pub fn verify_basis_change_inequality(
    x_table: &ComplexityTable,
    y_table: &ComplexityTable,
    constants: &BasisChangeConstants,
    max_n: usize,
) -> BoundReport {
    let upper = BigUint::from(constants.upper_factor());
    let stretch = constants.stretch();
    let lower = BigUint::from(constants.lower_divisor());
    let mut report = BoundReport::new("basis-change", max_n)
        .constant("C", constants.upper_factor())
        .constant("D", stretch)
        .constant("1/c", constants.lower_divisor())
        .constant("1/d", stretch)
        .constant("forward_cancellation", constants.forward_cancellation)
        .constant("backward_cancellation", constants.backward_cancellation)
        .table("p_X", x_table)
        .table("p_Y", y_table);
    report.run(
        "basis-change-upper",
        "p_Y(n) <= C * p_X(D*n)",
        1..=max_n,
        |n| {
            let py = y_table.get(n)?;
            let px = x_table.get(stretch * n)?;
            let rhs = &upper * px;
            Some((py.clone(), rhs.clone(), *py <= rhs))
        },
    );
    report.run(
        "basis-change-lower",
        "p_X(floor(n/D)) <= C' * p_Y(n)",
        1..=max_n,
        |n| {
            let px = x_table.get(n / stretch)?;
            let rhs = &lower * y_table.get(n)?;
            Some((px.clone(), rhs.clone(), *px <= rhs))
        },
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::freegroup::{cancellation_bound_estimate, DoubledAlphabet};

    #[test]
    fn identity_change_reproduces_language() {
        let d = DoubledAlphabet::from_symbols(["a1", "a2"]).unwrap();
        let id = FreeGroupHom::identity(&d);
        let x = Presentation::double(catalog::golden_mean_shift());
        for n in 1..=5 {
            let got = basis_change_language(&x, &id, &id, 0, 0, n).unwrap();
            assert!(got.words.same_words(&x.language(n).unwrap()), "n = {n}");
        }
    }

    #[test]
    fn identity_change_constants() {
        let d = DoubledAlphabet::from_symbols(["a1", "a2"]).unwrap();
        let id = FreeGroupHom::identity(&d);
        let k = BasisChangeConstants::from_pair(&id, &id, 0, 0);
        assert_eq!((k.upper_factor(), k.lower_divisor()), (1, 1));
        assert_eq!(k.stretch(), 2);
        let x = Presentation::double(catalog::golden_mean_shift());
        let t = x.complexity_table(20).unwrap();
        assert!(verify_basis_change_inequality(&t, &t, &k, 10).passed());
    }

    #[test]
    fn rejects_non_inverse_pair() {
        let (phi, _) = catalog::fibonacci_squared_pair();
        let x = Presentation::double(Presentation::full_shift(phi.source().positive()));
        assert_eq!(
            basis_change_language(&x, &phi, &phi, 2, 2, 3).unwrap_err(),
            Error::NotInverse
        );
    }

    #[test]
    fn letters_of_fibonacci_squared_image() {
        let (phi, psi) = catalog::fibonacci_squared_pair();
        let c_f = cancellation_bound_estimate(&phi, 5).bound;
        let c_b = cancellation_bound_estimate(&psi, 5).bound;
        let x = Presentation::double(Presentation::full_shift(phi.source().positive()));
        let got = basis_change_language(&x, &phi, &psi, c_f, c_b, 1).unwrap();
        let direct = Presentation::double(
            Presentation::image(
                Presentation::full_shift(phi.source().positive()),
                catalog::fibonacci_squared(),
            )
            .unwrap(),
        )
        .language(1)
        .unwrap();
        assert!(got.words.same_words(&direct));
        assert_eq!(got.words.len(), 4);
    }

    #[test]
    fn corrupted_table_fails_at_corruption() {
        let d = DoubledAlphabet::from_symbols(["a1", "a2"]).unwrap();
        let id = FreeGroupHom::identity(&d);
        let k = BasisChangeConstants::from_pair(&id, &id, 0, 0);
        let x = Presentation::double(Presentation::full_shift(d.positive()));
        let tx = x.complexity_table(20).unwrap();
        let mut ty = tx.clone();
        ty.set(7, BigUint::from(1_000_000_000u64));
        ty.set(8, BigUint::from(1_000_000_000u64));
        let r = verify_basis_change_inequality(&tx, &ty, &k, 10);
        assert!(!r.passed());
        let (c, v) = r.first_failure().unwrap();
        assert_eq!((c.name.as_str(), v.n), ("basis-change-upper", 7));
    }
}
