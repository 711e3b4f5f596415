//! Finite-window recognizability certificates.
//!
//! Recognizability quantifies over all biinfinite words, so nothing here
//! decides it. A certificate either records a repetition bound that held on
//! every window up to a stated length, or carries a concrete witness that
//! replays against the definitions, or says that the windows were not
//! enough to tell.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::subshift::Presentation;
use crate::words::{least_rotation, FactorSet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certificate {
    /// Every window up to `window` is consistent with repetition bound `r`.
    CertifiedUpTo {
        r: usize,
        window: usize,
    },
    CounterexampleFound {
        witness: Witness,
    },
    Inconclusive {
        r_max: usize,
        window: usize,
    },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::CertifiedUpTo { .. })
    }

    pub fn is_counterexample(&self) -> bool {
        matches!(self, Certificate::CounterexampleFound { .. })
    }

    pub fn repetition_bound(&self) -> Option<usize> {
        match self {
            Certificate::CertifiedUpTo { r, .. } => Some(*r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two words of the source language with the same letter-to-letter
    /// image that still differ after chopping `r_max` letters at each end.
    RepetitionPair {
        first: Word,
        second: Word,
        image: Word,
        position: usize,
        r_max: usize,
    },
    /// Periodic points `x = period^∞` and `x′ = other_period^∞` (with
    /// `x_1` the first letter of the period) and offsets `k = shift`,
    /// `ℓ = other_shift` within the first letter images such that
    /// `T^k σ(x) = T^ℓ σ(x′)` while `(x, k) ≠ (x′, ℓ)`.
    PeriodicPoint {
        period: Word,
        other_period: Word,
        shift: usize,
        other_shift: usize,
        reason: PeriodicViolation,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodicViolation {
    /// The image of a primitive period is a proper power.
    PeriodNotPreserved,
    /// Two distinct periodic orbits have the same image orbit.
    OrbitsMerged,
}

/// Smallest repetition bound `r ≤ r_max` of a letter-to-letter morphism on
/// the language of `z`, tested on every length `1..=window`.
pub fn find_repetition_bound(
    alpha: &Morphism,
    z: &Presentation,
    r_max: usize,
    window: usize,
) -> Result<Certificate> {
    if !alpha.is_letter_to_letter() {
        return Err(Error::NotLetterToLetter);
    }
    z.alphabet().ensure_same(alpha.source())?;
    if window == 0 {
        return Err(Error::ZeroWindow);
    }
    // Required r for a disagreement at position i of a length-ℓ window is
    // min(i, ℓ−1−i) + 1.
    let mut required = 0usize;
    let mut deepest: Option<(usize, Witness)> = None;
    for len in 1..=window {
        let lang = z.language(len)?;
        let mut groups: HashMap<Vec<Letter>, Vec<&Vec<Letter>>> = HashMap::new();
        for u in lang.raw() {
            groups.entry(alpha.apply_letters(u)).or_default().push(u);
        }
        let mut keys: Vec<&Vec<Letter>> = groups.keys().collect();
        keys.sort();
        for key in keys {
            let members = &groups[key];
            if members.len() < 2 {
                continue;
            }
            for i in 0..len {
                let Some(other) = members.iter().find(|m| m[i] != members[0][i]) else {
                    continue;
                };
                let depth = i.min(len - 1 - i);
                required = required.max(depth + 1);
                if deepest.as_ref().is_none_or(|(d, _)| depth > *d) {
                    deepest = Some((
                        depth,
                        Witness::RepetitionPair {
                            first: Word::from_raw(z.alphabet(), members[0].clone()),
                            second: Word::from_raw(z.alphabet(), (*other).clone()),
                            image: Word::from_raw(alpha.target(), key.clone()),
                            position: i,
                            r_max,
                        },
                    ));
                }
            }
        }
    }
    // a bound is only meaningful if some window survives chopping by it
    let testable = required == 0 || 2 * required < window;
    if required <= r_max && testable {
        return Ok(Certificate::CertifiedUpTo {
            r: required,
            window,
        });
    }
    match deepest {
        Some((depth, witness)) if depth > r_max => Ok(Certificate::CounterexampleFound { witness }),
        _ => Ok(Certificate::Inconclusive { r_max, window }),
    }
}

/// Length of the factors used to decide that `v^∞` lies in a subshift.
pub fn periodic_membership_window(period_max: usize) -> usize {
    2 * period_max + 2
}

fn cyclic_factors_in(lang: &FactorSet, period: &[Letter], len: usize) -> bool {
    let reps = len / period.len() + 2;
    let long = period.repeat(reps);
    (0..period.len()).all(|s| lang.contains_letters(&long[s..s + len]))
}

/// Letter `t` of the periodic sequence `σ(v)^∞` read from offset `shift`.
fn periodic_at(image: &[Letter], shift: usize, t: usize) -> Letter {
    image[(shift + t) % image.len()]
}

fn same_periodic(a: &[Letter], a_shift: usize, b: &[Letter], b_shift: usize) -> bool {
    (0..a.len() + b.len()).all(|t| periodic_at(a, a_shift, t) == periodic_at(b, b_shift, t))
}

/// Index `j` of the letter image of `v` containing position `t` of `σ(v)`,
/// and the offset inside it.
fn locate(sigma: &Morphism, v: &[Letter], t: usize) -> (usize, usize) {
    let mut start = 0;
    for (j, &a) in v.iter().enumerate() {
        let len = sigma.image(a).len();
        if t < start + len {
            return (j, t - start);
        }
        start += len;
    }
    unreachable!("position {t} beyond σ(v)")
}

/// Checks period preservation and orbit injectivity of `σ` on every
/// periodic point of `x` with primitive period at most `period_max`.
pub fn periodic_point_audit(
    sigma: &Morphism,
    x: &Presentation,
    period_max: usize,
) -> Result<Certificate> {
    x.alphabet().ensure_same(sigma.source())?;
    if period_max == 0 {
        return Err(Error::ZeroWindow);
    }
    let check_len = periodic_membership_window(period_max);
    let lang = x.language(check_len)?;
    let alphabet = x.alphabet();
    // orbit canonical form of σ(v)^∞ ↦ v
    let mut orbits: BTreeMap<Vec<Letter>, Vec<Letter>> = BTreeMap::new();
    for len in 1..=period_max {
        for v in x.language(len)?.raw() {
            if least_rotation(v) != *v || crate::words::primitive_period(v) != len {
                continue;
            }
            if !cyclic_factors_in(&lang, v, check_len) {
                continue;
            }
            for s in 0..len {
                let mut rho = v.clone();
                rho.rotate_left(s);
                let img = sigma.apply_letters(&rho);
                let p = crate::words::primitive_period(&img);
                if p < img.len() {
                    let (j, k) = locate(sigma, &rho, p);
                    let mut other = rho.clone();
                    other.rotate_left(j);
                    return Ok(Certificate::CounterexampleFound {
                        witness: Witness::PeriodicPoint {
                            period: Word::from_raw(alphabet, rho),
                            other_period: Word::from_raw(alphabet, other),
                            shift: 0,
                            other_shift: k,
                            reason: PeriodicViolation::PeriodNotPreserved,
                        },
                    });
                }
            }
            let img = sigma.apply_letters(v);
            let canon = least_rotation(&img);
            if let Some(prev) = orbits.get(&canon) {
                let prev_img = sigma.apply_letters(prev);
                let t = (0..prev_img.len())
                    .find(|&t| same_periodic(&prev_img, t, &img, 0))
                    .expect("equal canonical rotations give a matching shift");
                let (j, k) = locate(sigma, prev, t);
                let mut rotated = prev.clone();
                rotated.rotate_left(j);
                return Ok(Certificate::CounterexampleFound {
                    witness: Witness::PeriodicPoint {
                        period: Word::from_raw(alphabet, rotated),
                        other_period: Word::from_raw(alphabet, v.clone()),
                        shift: k,
                        other_shift: 0,
                        reason: PeriodicViolation::OrbitsMerged,
                    },
                });
            }
            orbits.insert(canon, v.clone());
        }
    }
    Ok(Certificate::CertifiedUpTo {
        r: 0,
        window: period_max,
    })
}

/// Combines the repetition-bound search for `α_σ` on `π_σ(X)` with the
/// periodic-point audit of `σ` on `X`.
pub fn check_recognizability(
    sigma: &Morphism,
    x: &Presentation,
    r_max: usize,
    window: usize,
    period_max: usize,
) -> Result<Certificate> {
    if window < 2 * r_max + 2 {
        return Err(Error::InvalidArgument(format!(
            "window {window} must be at least 2·r_max + 2 = {}",
            2 * r_max + 2
        )));
    }
    let d = sigma.canonical_decomposition();
    let z = Presentation::image(x.clone(), d.subdivision.clone())?;
    let repetition = find_repetition_bound(&d.residual, &z, r_max, window)?;
    let periodic = periodic_point_audit(sigma, x, period_max)?;
    Ok(match (repetition, periodic) {
        (c @ Certificate::CounterexampleFound { .. }, _)
        | (_, c @ Certificate::CounterexampleFound { .. }) => c,
        (Certificate::CertifiedUpTo { r, .. }, Certificate::CertifiedUpTo { .. }) => {
            Certificate::CertifiedUpTo { r, window }
        }
        _ => Certificate::Inconclusive { r_max, window },
    })
}

/// Re-checks a repetition-pair witness for `α` on `z` from scratch.
pub fn replay_repetition_pair(alpha: &Morphism, z: &Presentation, witness: &Witness) -> bool {
    let Witness::RepetitionPair {
        first,
        second,
        image,
        r_max,
        ..
    } = witness
    else {
        return false;
    };
    if first.len() != second.len() || first.is_empty() {
        return false;
    }
    let Ok(lang) = z.language(first.len()) else {
        return false;
    };
    let same_image = matches!(
        (alpha.apply(first), alpha.apply(second)),
        (Ok(a), Ok(b)) if a == b && a == *image
    );
    lang.contains(first)
        && lang.contains(second)
        && same_image
        && (0..=*r_max).all(|r| first.chop(r) != second.chop(r))
}

/// Re-checks a periodic-point witness against the recognizability
/// definition: both points lie in `x`, the offsets are admissible, the
/// shifted images coincide, and `(x, k) ≠ (x′, ℓ)`.
pub fn replay_periodic_point(sigma: &Morphism, x: &Presentation, witness: &Witness) -> bool {
    let Witness::PeriodicPoint {
        period,
        other_period,
        shift,
        other_shift,
        ..
    } = witness
    else {
        return false;
    };
    let (v, w) = (period.letters(), other_period.letters());
    if v.is_empty() || w.is_empty() {
        return false;
    }
    let check_len = periodic_membership_window(v.len().max(w.len()));
    let Ok(lang) = x.language(check_len) else {
        return false;
    };
    if !cyclic_factors_in(&lang, v, check_len) || !cyclic_factors_in(&lang, w, check_len) {
        return false;
    }
    if *shift >= sigma.image(v[0]).len() || *other_shift >= sigma.image(w[0]).len() {
        return false;
    }
    let (sv, sw) = (sigma.apply_letters(v), sigma.apply_letters(w));
    if !same_periodic(&sv, *shift, &sw, *other_shift) {
        return false;
    }
    let same_point = same_periodic(v, 0, w, 0);
    !same_point || shift != other_shift
}

/// Replays any witness produced by [`check_recognizability`].
pub fn replay_witness(sigma: &Morphism, x: &Presentation, witness: &Witness) -> bool {
    match witness {
        Witness::PeriodicPoint { .. } => replay_periodic_point(sigma, x, witness),
        Witness::RepetitionPair { .. } => {
            let d = sigma.canonical_decomposition();
            match Presentation::image(x.clone(), d.subdivision) {
                Ok(z) => replay_repetition_pair(&d.residual, &z, witness),
                Err(_) => false,
            }
        }
    }
}
