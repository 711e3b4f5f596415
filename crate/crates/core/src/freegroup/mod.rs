//! Reduced words over doubled alphabets and free group homomorphisms.
//!
//! Inverse letters are named by appending [`INVERSE_SUFFIX`] to the positive
//! symbol, so `a1^-1` is the inverse of `a1`. In a doubled alphabet of rank
//! `k` the positive letters occupy indices `0..k` and the inverse of letter
//! `i` sits at `i + k`.

mod basis_change;
mod cancellation;

pub use basis_change::{
    basis_change_language, verify_basis_change_inequality, BasisChangeConstants,
    BasisChangeLanguage, STABLE_INCREMENTS,
};
pub use cancellation::{cancellation_bound_estimate, CancellationEstimate};

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub const INVERSE_SUFFIX: &str = "^-1";

/// `𝒜± = 𝒜 ∪ 𝒜⁻¹`.
#[derive(Clone, Debug)]
pub struct DoubledAlphabet {
    positive: Arc<Alphabet>,
    full: Arc<Alphabet>,
}

impl DoubledAlphabet {
    pub fn new(positive: &Arc<Alphabet>) -> Self {
        let symbols = positive.symbols().iter().cloned().chain(
            positive
                .symbols()
                .iter()
                .map(|s| format!("{s}{INVERSE_SUFFIX}")),
        );
        let full = Alphabet::new(symbols).unwrap_or_else(|e| {
            panic!("doubling {positive} collides with an existing symbol: {e}")
        });
        Self {
            positive: Arc::clone(positive),
            full,
        }
    }

    pub fn from_symbols<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let positive = Alphabet::new(symbols)?;
        if positive
            .symbols()
            .iter()
            .any(|s| s.ends_with(INVERSE_SUFFIX))
        {
            return Err(Error::InvalidArgument(format!(
                "positive symbols may not end in `{INVERSE_SUFFIX}`"
            )));
        }
        Ok(Self::new(&positive))
    }

    pub fn rank(&self) -> usize {
        self.positive.len()
    }

    pub fn positive(&self) -> &Arc<Alphabet> {
        &self.positive
    }

    pub fn full(&self) -> &Arc<Alphabet> {
        &self.full
    }

    pub fn inverse(&self, letter: Letter) -> Letter {
        let k = self.rank();
        (letter + k) % (2 * k)
    }

    pub fn is_positive(&self, letter: Letter) -> bool {
        letter < self.rank()
    }

    /// Inverse-reversal `x_1…x_n ↦ x_n⁻¹…x_1⁻¹`.
    pub fn inverse_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        letters.iter().rev().map(|&l| self.inverse(l)).collect()
    }

    /// Parses a signed symbol such as `a2` or `a2^-1`.
    pub fn letter(&self, symbol: &str) -> Result<Letter> {
        self.full.letter(symbol)
    }

    pub fn ensure_same(&self, other: &DoubledAlphabet) -> Result<()> {
        self.full.ensure_same(&other.full)
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn reduce(&self, letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if stack.last().is_some_and(|&t| t == self.inverse(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        stack
    }

    pub fn is_reduced(&self, letters: &[Letter]) -> bool {
        self.first_cancellation(letters).is_none()
    }

    fn first_cancellation(&self, letters: &[Letter]) -> Option<usize> {
        letters.windows(2).position(|p| p[1] == self.inverse(p[0]))
    }
}

impl PartialEq for DoubledAlphabet {
    fn eq(&self, other: &Self) -> bool {
        self.full == other.full
    }
}

impl Eq for DoubledAlphabet {}

/// A freely reduced word over a doubled alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    alphabet: DoubledAlphabet,
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn new(alphabet: &DoubledAlphabet, letters: Vec<Letter>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= 2 * alphabet.rank()) {
            return Err(Error::LetterOutOfRange {
                index: bad,
                size: 2 * alphabet.rank(),
            });
        }
        if let Some(i) = alphabet.first_cancellation(&letters) {
            return Err(Error::NotReduced(i));
        }
        Ok(Self {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    pub(crate) fn from_raw(alphabet: &DoubledAlphabet, letters: Vec<Letter>) -> Self {
        debug_assert!(alphabet.is_reduced(&letters));
        Self {
            alphabet: alphabet.clone(),
            letters,
        }
    }

    pub fn identity(alphabet: &DoubledAlphabet) -> Self {
        Self::from_raw(alphabet, Vec::new())
    }

    /// Parses whitespace-separated signed symbols, e.g. `"a1^-1 a2"`.
    pub fn parse(alphabet: &DoubledAlphabet, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|s| alphabet.letter(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, letters)
    }

    pub fn alphabet(&self) -> &DoubledAlphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self::from_raw(&self.alphabet, self.alphabet.inverse_letters(&self.letters))
    }

    /// Group product, reduced.
    pub fn mul(&self, other: &ReducedWord) -> Result<Self> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let letters = self
            .alphabet
            .reduce(self.letters.iter().chain(&other.letters).copied());
        Ok(Self::from_raw(&self.alphabet, letters))
    }

    pub fn to_word(&self) -> Word {
        Word::from_raw(self.alphabet.full(), self.letters.clone())
    }

    pub fn from_word(alphabet: &DoubledAlphabet, w: &Word) -> Result<Self> {
        alphabet.full().ensure_same(w.alphabet())?;
        Self::new(alphabet, w.letters().to_vec())
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<&str> = self
            .letters
            .iter()
            .map(|&l| self.alphabet.full().symbol(l))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_word().serialize(serializer)
    }
}

/// Free reduction of an arbitrary sequence of signed letters.
pub fn free_reduce(alphabet: &DoubledAlphabet, letters: &[Letter]) -> Result<ReducedWord> {
    if let Some(&bad) = letters.iter().find(|&&l| l >= 2 * alphabet.rank()) {
        return Err(Error::LetterOutOfRange {
            index: bad,
            size: 2 * alphabet.rank(),
        });
    }
    Ok(ReducedWord::from_raw(
        alphabet,
        alphabet.reduce(letters.iter().copied()),
    ))
}

/// A homomorphism `F(𝒜) → F(ℬ)` given by reduced images of the positive
/// letters; images of inverse letters are always derived.
#[derive(Clone, Debug)]
pub struct FreeGroupHom {
    source: DoubledAlphabet,
    target: DoubledAlphabet,
    images: Vec<Vec<Letter>>,
    inverse: Option<Box<FreeGroupHom>>,
}

impl FreeGroupHom {
    pub fn new(
        source: &DoubledAlphabet,
        target: &DoubledAlphabet,
        images: Vec<ReducedWord>,
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::ImageCount {
                expected: source.rank(),
                got: images.len(),
            });
        }
        let images = images
            .into_iter()
            .map(|w| {
                target.ensure_same(w.alphabet())?;
                Ok(w.letters)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            images,
            inverse: None,
        })
    }

    pub fn identity(alphabet: &DoubledAlphabet) -> Self {
        Self {
            source: alphabet.clone(),
            target: alphabet.clone(),
            images: (0..alphabet.rank()).map(|l| vec![l]).collect(),
            inverse: None,
        }
    }

    /// Declares `psi` as the inverse, after checking it really is one.
    pub fn with_inverse(mut self, psi: FreeGroupHom) -> Result<Self> {
        if !compose_check_inverse(&self, &psi) {
            return Err(Error::NotInverse);
        }
        self.inverse = Some(Box::new(psi));
        Ok(self)
    }

    pub fn inverse(&self) -> Option<&FreeGroupHom> {
        self.inverse.as_deref()
    }

    pub fn source(&self) -> &DoubledAlphabet {
        &self.source
    }

    pub fn target(&self) -> &DoubledAlphabet {
        &self.target
    }

    /// Image of any signed letter.
    pub fn letter_image(&self, letter: Letter) -> Vec<Letter> {
        if self.source.is_positive(letter) {
            self.images[letter].clone()
        } else {
            self.target
                .inverse_letters(&self.images[self.source.inverse(letter)])
        }
    }

    /// `||φ||`, the longest positive-letter image.
    pub fn sup_norm(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn apply(&self, w: &ReducedWord) -> Result<ReducedWord> {
        self.source.ensure_same(w.alphabet())?;
        Ok(ReducedWord::from_raw(
            &self.target,
            self.apply_letters(w.letters()),
        ))
    }

    pub(crate) fn apply_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let k = self.source.rank();
        let target = &self.target;
        let mut stack: Vec<Letter> = Vec::new();
        for &l in letters {
            let push = |stack: &mut Vec<Letter>, y: Letter| {
                if stack.last().is_some_and(|&t| t == target.inverse(y)) {
                    stack.pop();
                } else {
                    stack.push(y);
                }
            };
            if l < k {
                for &y in &self.images[l] {
                    push(&mut stack, y);
                }
            } else {
                for &y in self.images[l - k].iter().rev() {
                    push(&mut stack, target.inverse(y));
                }
            }
        }
        stack
    }

    /// Parses `{"a1": ["a2", "a1"], "a2": ["a2", "a1^-1"]}`. Source positive
    /// letters are the keys in file order; the target basis is the same when
    /// every image letter belongs to it, otherwise the positive symbols in
    /// order of first appearance.
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("homomorphism must be a JSON object".into()))?;
        let keys: Vec<String> = obj.keys().cloned().collect();
        let source = DoubledAlphabet::from_symbols(keys.clone())?;
        let mut raw = Vec::new();
        for (k, v) in obj {
            let syms: Vec<String> = serde_json::from_value(v.clone())
                .map_err(|e| Error::Parse(format!("image of `{k}`: {e}")))?;
            raw.push(syms);
        }
        let base = |s: &str| s.strip_suffix(INVERSE_SUFFIX).unwrap_or(s).to_string();
        let target = if raw.iter().flatten().all(|s| keys.contains(&base(s))) {
            source.clone()
        } else {
            let mut seen: Vec<String> = Vec::new();
            for s in raw.iter().flatten() {
                let b = base(s);
                if !seen.contains(&b) {
                    seen.push(b);
                }
            }
            DoubledAlphabet::from_symbols(seen)?
        };
        let images = raw
            .iter()
            .map(|syms| {
                let letters = syms
                    .iter()
                    .map(|s| target.letter(s))
                    .collect::<Result<Vec<_>>>()?;
                ReducedWord::new(&target, letters)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&source, &target, images)
    }

    /// Re-indexes the source (and, for automorphisms, the target) so that
    /// the positive basis matches `basis` symbol for symbol.
    pub fn realign(self, basis: &DoubledAlphabet) -> Result<Self> {
        if self.source.ensure_same(basis).is_ok() {
            return Ok(self);
        }
        let same_target = self.source == self.target;
        let target = if same_target {
            basis.clone()
        } else {
            self.target.clone()
        };
        let images = basis
            .positive()
            .symbols()
            .iter()
            .map(|s| {
                let l = self.source.positive().letter(s)?;
                let img = self.images[l]
                    .iter()
                    .map(|&y| target.letter(self.target.full().symbol(y)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ReducedWord::from_raw(&target, img))
            })
            .collect::<Result<Vec<_>>>()?;
        FreeGroupHom::new(basis, &target, images)
    }
}

impl Serialize for FreeGroupHom {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.images.len()))?;
        for (a, img) in self.images.iter().enumerate() {
            let syms: Vec<&str> = img.iter().map(|&l| self.target.full().symbol(l)).collect();
            map.serialize_entry(self.source.positive().symbol(a), &syms)?;
        }
        map.end()
    }
}

/// Free-function form of [`FreeGroupHom::apply`].
pub fn apply_hom(phi: &FreeGroupHom, w: &ReducedWord) -> Result<ReducedWord> {
    phi.apply(w)
}

/// True iff `ψ∘φ` and `φ∘ψ` fix every basis letter.
pub fn compose_check_inverse(phi: &FreeGroupHom, psi: &FreeGroupHom) -> bool {
    if phi.target.ensure_same(&psi.source).is_err() || psi.target.ensure_same(&phi.source).is_err()
    {
        return false;
    }
    let fixes = |outer: &FreeGroupHom, inner: &FreeGroupHom| {
        (0..inner.source.rank()).all(|a| outer.apply_letters(&inner.images[a]) == [a])
    };
    fixes(psi, phi) && fixes(phi, psi)
}
