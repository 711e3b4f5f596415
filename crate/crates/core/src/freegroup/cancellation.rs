use rayon::prelude::*;
use serde::Serialize;

use super::{DoubledAlphabet, FreeGroupHom, ReducedWord};
use crate::words::Letter;

/// Empirical bounded-cancellation constant of a homomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct CancellationEstimate {
    /// Maximum over all pairs with `|u|, |v| ≤ window`.
    pub bound: usize,
    /// `by_length[ℓ − 1]` is the maximum over pairs with `|u|, |v| ≤ ℓ`.
    pub by_length: Vec<usize>,
    pub window: usize,
    /// A pair `(u, v)` attaining `bound`, when `bound > 0`.
    pub witness: Option<(ReducedWord, ReducedWord)>,
}

impl CancellationEstimate {
    /// True when the running maximum did not move over the last
    /// `increments` window increments.
    pub fn stable_over(&self, increments: usize) -> bool {
        if self.by_length.len() <= increments {
            return false;
        }
        let tail = &self.by_length[self.by_length.len() - 1 - increments..];
        tail.iter().all(|&v| v == tail[0])
    }
}

/// All non-empty reduced words of length at most `max_len`, shortest first.
pub(crate) fn reduced_words_up_to(alphabet: &DoubledAlphabet, max_len: usize) -> Vec<Vec<Letter>> {
    let size = 2 * alphabet.rank();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * size);
        for w in &layer {
            for l in 0..size {
                if w.last().is_some_and(|&t| t == alphabet.inverse(l)) {
                    continue;
                }
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Number of letter pairs cancelled when reducing `left · right`, both
/// already reduced.
fn cancelled_pairs(alphabet: &DoubledAlphabet, left: &[Letter], right: &[Letter]) -> usize {
    left.iter()
        .rev()
        .zip(right)
        .take_while(|(&a, &b)| b == alphabet.inverse(a))
        .count()
}

/// Maximum cancellation in `φ(u)·φ(v)` over reduced `u, v` with `u·v`
/// reduced as written and `|u|, |v| ≤ max_len`.
pub fn cancellation_bound_estimate(phi: &FreeGroupHom, max_len: usize) -> CancellationEstimate {
    let source = phi.source();
    let target = phi.target();
    let words = reduced_words_up_to(source, max_len);
    let images: Vec<Vec<Letter>> = words.iter().map(|w| phi.apply_letters(w)).collect();

    // best[ℓ − 1] = (cancellation, u index, v index) over pairs whose longer
    // member has length ℓ
    let best: Vec<(usize, usize, usize)> = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let mut local = vec![(0usize, usize::MAX, usize::MAX); max_len];
            let u = &words[i];
            let last = *u.last().expect("words are non-empty");
            for (j, v) in words.iter().enumerate() {
                if v[0] == source.inverse(last) {
                    continue;
                }
                let c = cancelled_pairs(target, &images[i], &images[j]);
                let slot = &mut local[u.len().max(v.len()) - 1];
                if c > slot.0 || (c == slot.0 && (i, j) < (slot.1, slot.2)) {
                    *slot = (c, i, j);
                }
            }
            local
        })
        .reduce(
            || vec![(0usize, usize::MAX, usize::MAX); max_len],
            |a, b| {
                a.into_iter()
                    .zip(b)
                    .map(|(x, y)| {
                        if y.0 > x.0 || (y.0 == x.0 && (y.1, y.2) < (x.1, x.2)) {
                            y
                        } else {
                            x
                        }
                    })
                    .collect()
            },
        );

    let mut by_length = Vec::with_capacity(max_len);
    let mut running = (0usize, usize::MAX, usize::MAX);
    for slot in best {
        if slot.0 > running.0 {
            running = slot;
        }
        by_length.push(running.0);
    }
    let witness = (running.0 > 0).then(|| {
        (
            ReducedWord::from_raw(source, words[running.1].clone()),
            ReducedWord::from_raw(source, words[running.2].clone()),
        )
    });
    CancellationEstimate {
        bound: running.0,
        by_length,
        window: max_len,
        witness,
    }
}
