//! Standard morphisms, subshifts and basis changes used throughout the
//! tests, the benches and the `verify` command.

use std::sync::Arc;

use crate::freegroup::{DoubledAlphabet, FreeGroupHom, ReducedWord};
use crate::morphism::Morphism;
use crate::subshift::Presentation;
use crate::words::{Alphabet, Word};

/// `{a1, a2}`, the alphabet of the Fibonacci examples.
pub fn fibonacci_alphabet() -> Arc<Alphabet> {
    Alphabet::new(["a1", "a2"]).expect("static alphabet")
}

/// The doubling morphism `a ↦ a- a+` into the alphabet
/// `{a-, a+, b-, b+, …}`.
pub fn sigma_ii(source: &Arc<Alphabet>) -> Morphism {
    let names = source
        .symbols()
        .iter()
        .flat_map(|s| [format!("{s}-"), format!("{s}+")]);
    let target = Alphabet::new(names).expect("split symbols are distinct");
    let images = source.letters().map(|a| vec![2 * a, 2 * a + 1]).collect();
    Morphism::new(source, &target, images).expect("non-erasing")
}

/// `a1 ↦ a2`, `a2 ↦ a2 a1`.
pub fn fibonacci() -> Morphism {
    let a = fibonacci_alphabet();
    Morphism::from_symbols(&a, &a, &[&["a2"], &["a2", "a1"]]).expect("static morphism")
}

/// `a1 ↦ a2 a1`, `a2 ↦ a2 a1 a2`.
pub fn fibonacci_squared() -> Morphism {
    let a = fibonacci_alphabet();
    Morphism::from_symbols(&a, &a, &[&["a2", "a1"], &["a2", "a1", "a2"]]).expect("static morphism")
}

/// Letter-to-letter bijection onto fresh symbol names.
pub fn renaming(source: &Arc<Alphabet>, names: &[&str]) -> Morphism {
    let target = Alphabet::new(names.iter().copied()).expect("distinct names");
    let images = source.letters().map(|a| vec![a]).collect();
    Morphism::new(source, &target, images).expect("one name per letter")
}

/// Letter-to-letter morphism sending every letter to the single symbol `x`.
pub fn constant(source: &Arc<Alphabet>) -> Morphism {
    let target = Alphabet::new(["x"]).expect("static alphabet");
    Morphism::new(source, &target, source.letters().map(|_| vec![0]).collect())
        .expect("non-erasing")
}

pub fn full_two_shift() -> Presentation {
    Presentation::full_shift(&fibonacci_alphabet())
}

/// Golden mean shift over `{a1, a2}`: `a2 a2` is forbidden.
pub fn golden_mean_shift() -> Presentation {
    let a = fibonacci_alphabet();
    let bb = Word::from_symbols(&a, &["a2", "a2"]).expect("static word");
    Presentation::sft(&a, vec![bb]).expect("valid SFT")
}

pub fn fibonacci_subshift() -> Presentation {
    Presentation::substitution(fibonacci()).expect("Fibonacci is primitive")
}

/// The positive subshifts exercised by the property tests.
pub fn corpus() -> Vec<Presentation> {
    let ab = fibonacci_alphabet();
    let abc = Alphabet::new(["a", "b", "c"]).expect("static alphabet");
    let thue_morse =
        Morphism::from_symbols(&ab, &ab, &[&["a1", "a2"], &["a2", "a1"]]).expect("static morphism");
    let even_shift_like = Presentation::sft(
        &abc,
        ["aa", "bc", "cb"]
            .iter()
            .map(|s| Word::parse(&abc, s).expect("static word"))
            .collect(),
    )
    .expect("valid SFT");
    vec![
        full_two_shift(),
        golden_mean_shift(),
        fibonacci_subshift(),
        Presentation::substitution(thue_morse).expect("Thue-Morse is primitive"),
        even_shift_like,
        Presentation::image(full_two_shift(), sigma_ii(&ab)).expect("matching alphabets"),
        Presentation::image(fibonacci_subshift(), fibonacci_squared()).expect("matching alphabets"),
    ]
}

/// The Fibonacci-squared automorphism of `F(a1, a2)` and its inverse
/// `a1 ↦ a2⁻¹ a1 a1`, `a2 ↦ a1⁻¹ a2`.
pub fn fibonacci_squared_pair() -> (FreeGroupHom, FreeGroupHom) {
    let d = DoubledAlphabet::new(&fibonacci_alphabet());
    let w = |s: &str| ReducedWord::parse(&d, s).expect("static reduced word");
    let phi = FreeGroupHom::new(&d, &d, vec![w("a2 a1"), w("a2 a1 a2")]).expect("rank 2");
    let psi = FreeGroupHom::new(&d, &d, vec![w("a2^-1 a1 a1"), w("a1^-1 a2")]).expect("rank 2");
    (phi, psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_well_formed() {
        for x in corpus() {
            x.complexity_table(6).unwrap().check_invariants().unwrap();
        }
    }

    #[test]
    fn sigma_ii_names() {
        let m = sigma_ii(&Alphabet::new(["a", "b"]).unwrap());
        assert_eq!(m.target().symbols(), ["a-", "a+", "b-", "b+"]);
    }
}
