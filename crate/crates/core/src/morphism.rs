//! Non-erasing monoid morphisms between free monoids.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::subshift::Presentation;
use crate::words::{Alphabet, FactorSet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    images: Vec<Vec<Letter>>,
}

impl Morphism {
    pub fn new(
        source: &Arc<Alphabet>,
        target: &Arc<Alphabet>,
        images: Vec<Vec<Letter>>,
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::ImageCount {
                expected: source.len(),
                got: images.len(),
            });
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::ErasingMorphism(source.symbol(a).to_string()));
            }
            if let Some(&bad) = img.iter().find(|&&l| l >= target.len()) {
                return Err(Error::LetterOutOfRange {
                    index: bad,
                    size: target.len(),
                });
            }
        }
        Ok(Self {
            source: Arc::clone(source),
            target: Arc::clone(target),
            images,
        })
    }

    /// Builds a morphism from `(source symbol, image symbols)` pairs given in
    /// source-alphabet order.
    pub fn from_symbols<S: AsRef<str>>(
        source: &Arc<Alphabet>,
        target: &Arc<Alphabet>,
        images: &[&[S]],
    ) -> Result<Self> {
        let images = images
            .iter()
            .map(|img| {
                img.iter()
                    .map(|s| target.letter(s.as_ref()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn image(&self, letter: Letter) -> &[Letter] {
        &self.images[letter]
    }

    pub fn image_word(&self, letter: Letter) -> Word {
        Word::from_raw(&self.target, self.images[letter].clone())
    }

    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    /// ||σ||, the longest letter image.
    pub fn sup_norm(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// ⟨σ⟩, the shortest letter image.
    pub fn inf_norm(&self) -> usize {
        self.images.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_letter_to_letter(&self) -> bool {
        self.sup_norm() == 1
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source.ensure_same(&self.target).is_ok()
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.source.ensure_same(w.alphabet())?;
        Ok(Word::from_raw(
            &self.target,
            self.apply_letters(w.letters()),
        ))
    }

    pub(crate) fn apply_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(letters.len() * self.sup_norm());
        for &l in letters {
            out.extend_from_slice(&self.images[l]);
        }
        out
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn after(&self, inner: &Morphism) -> Result<Morphism> {
        self.source.ensure_same(&inner.target)?;
        let images = inner
            .images
            .iter()
            .map(|img| self.apply_letters(img))
            .collect();
        Morphism::new(&inner.source, &self.target, images)
    }

    pub fn power(&self, k: usize) -> Result<Morphism> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        let mut acc = Morphism::identity(&self.source);
        for _ in 0..k {
            acc = self.after(&acc)?;
        }
        Ok(acc)
    }

    pub fn identity(alphabet: &Arc<Alphabet>) -> Morphism {
        Morphism {
            source: Arc::clone(alphabet),
            target: Arc::clone(alphabet),
            images: alphabet.letters().map(|l| vec![l]).collect(),
        }
    }

    /// Splits `self = residual ∘ subdivision` with `subdivision` sending each
    /// letter `a` to `a(1) … a(|σ(a)|)` and `residual` letter-to-letter.
    pub fn canonical_decomposition(&self) -> CanonicalDecomposition {
        let mut names = Vec::new();
        let mut subdivision_images = Vec::with_capacity(self.images.len());
        let mut residual_images = Vec::new();
        for (a, img) in self.images.iter().enumerate() {
            let mut piece = Vec::with_capacity(img.len());
            for (k, &y) in img.iter().enumerate() {
                piece.push(names.len());
                names.push(format!("{}({})", self.source.symbol(a), k + 1));
                residual_images.push(vec![y]);
            }
            subdivision_images.push(piece);
        }
        let subdivided =
            Alphabet::new(names).expect("subdivision symbols are distinct by construction");
        CanonicalDecomposition {
            subdivision: Morphism {
                source: Arc::clone(&self.source),
                target: Arc::clone(&subdivided),
                images: subdivision_images,
            },
            residual: Morphism {
                source: subdivided,
                target: Arc::clone(&self.target),
                images: residual_images,
            },
        }
    }

    /// Parses the JSON map form `{"a": ["a", "b"], "b": ["a"]}`, or the
    /// explicit form `{"source": [...], "target": [...], "images": ...}` with
    /// `images` keyed by source symbol or listed in source order.
    ///
    /// For the map form the source alphabet is the key order; the target
    /// alphabet is the source alphabet when every image symbol is a key,
    /// and the symbols in order of first appearance otherwise.
    pub fn from_json(value: &Value) -> Result<Morphism> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("morphism must be a JSON object".into()))?;
        if let Some(images) = obj.get("images") {
            let source = crate::words::alphabet_from_json(
                obj.get("source")
                    .ok_or_else(|| Error::Parse("missing `source`".into()))?,
            )?;
            let target = crate::words::alphabet_from_json(
                obj.get("target")
                    .ok_or_else(|| Error::Parse("missing `target`".into()))?,
            )?;
            let mut imgs = vec![None; source.len()];
            match images {
                Value::Object(map) => {
                    for (k, v) in map {
                        imgs[source.letter(k)?] = Some(Word::from_json(&target, v)?.into_letters());
                    }
                }
                Value::Array(list) if list.len() == source.len() => {
                    for (slot, v) in imgs.iter_mut().zip(list) {
                        *slot = Some(Word::from_json(&target, v)?.into_letters());
                    }
                }
                Value::Array(list) => {
                    return Err(Error::ImageCount {
                        expected: source.len(),
                        got: list.len(),
                    })
                }
                _ => {
                    return Err(Error::Parse(
                        "`images` must be an object or an array".into(),
                    ))
                }
            }
            let imgs = imgs
                .into_iter()
                .enumerate()
                .map(|(a, i)| {
                    i.ok_or_else(|| Error::Parse(format!("no image for `{}`", source.symbol(a))))
                })
                .collect::<Result<Vec<_>>>()?;
            return Morphism::new(&source, &target, imgs);
        }
        let mut keys = Vec::new();
        let mut raw: Vec<Vec<String>> = Vec::new();
        for (k, v) in obj {
            keys.push(k.clone());
            let syms: Vec<String> = serde_json::from_value(v.clone())
                .map_err(|e| Error::Parse(format!("image of `{k}`: {e}")))?;
            raw.push(syms);
        }
        let source = Alphabet::new(keys.clone())?;
        let all_keys = raw.iter().flatten().all(|s| keys.contains(s));
        let target = if all_keys {
            Arc::clone(&source)
        } else {
            let mut seen = Vec::new();
            for s in raw.iter().flatten() {
                if !seen.contains(s) {
                    seen.push(s.clone());
                }
            }
            Alphabet::new(seen)?
        };
        let images: Vec<&[String]> = raw.iter().map(Vec::as_slice).collect();
        Morphism::from_symbols(&source, &target, &images)
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.images.len()))?;
        for (a, img) in self.images.iter().enumerate() {
            let syms: Vec<&str> = img.iter().map(|&l| self.target.symbol(l)).collect();
            map.serialize_entry(self.source.symbol(a), &syms)?;
        }
        map.end()
    }
}

/// The pair `(π_σ, α_σ)` with `σ = α_σ ∘ π_σ`.
#[derive(Clone, Debug)]
pub struct CanonicalDecomposition {
    pub subdivision: Morphism,
    pub residual: Morphism,
}

impl CanonicalDecomposition {
    /// The subdivided alphabet `𝒜_σ`.
    pub fn subdivided_alphabet(&self) -> &Arc<Alphabet> {
        self.subdivision.target()
    }
}

/// Free-function form of [`Morphism::apply`].
pub fn apply_morphism(sigma: &Morphism, w: &Word) -> Result<Word> {
    sigma.apply(w)
}

/// Free-function form of [`Morphism::canonical_decomposition`].
pub fn canonical_decomposition(sigma: &Morphism) -> CanonicalDecomposition {
    sigma.canonical_decomposition()
}

/// Length-`n` words of the image subshift `σ(X)`.
///
/// A length-`n` factor of `σ(x)` meets at most `⌈(n−1)/⟨σ⟩⌉ + 1` consecutive
/// letter images, so every such factor already occurs in `σ(u)` for some
/// `u ∈ ℒ(X)` of length `⌈n/⟨σ⟩⌉ + 1`.
pub fn image_language(x: &Presentation, sigma: &Morphism, n: usize) -> Result<FactorSet> {
    let window = n.div_ceil(sigma.inf_norm()) + 1;
    image_language_with_window(x, sigma, n, window)
}

/// [`image_language`] with an explicit preimage window.
pub fn image_language_with_window(
    x: &Presentation,
    sigma: &Morphism,
    n: usize,
    window: usize,
) -> Result<FactorSet> {
    if n == 0 {
        return Err(Error::ZeroWindow);
    }
    x.alphabet().ensure_same(sigma.source())?;
    let preimages = x.language(window)?;
    let mut out = BTreeSet::new();
    for u in preimages.raw() {
        let img = sigma.apply_letters(u);
        for f in img.windows(n) {
            if !out.contains(f) {
                out.insert(f.to_vec());
            }
        }
    }
    Ok(FactorSet::from_raw(sigma.target(), out))
}
