//! Alphabets, finite words and the elementary word operations.
//!
//! Letters are dense indices into an [`Alphabet`]; symbol names only matter
//! at the serialization boundary. Every [`Word`] keeps a handle on its
//! alphabet so that mixing words over different alphabets is caught early.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense letter index.
pub type Letter = usize;

#[derive(Clone, Debug)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Arc::new(Self { symbols, index }))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter]
    }

    pub fn letter(&self, symbol: &str) -> Result<Letter> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.symbols.len()
    }

    /// Checks that `other` describes the same alphabet, cheaply when both
    /// handles point at the same allocation.
    pub fn ensure_same(self: &Arc<Self>, other: &Arc<Self>) -> Result<()> {
        if Arc::ptr_eq(self, other) || self.symbols == other.symbols {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }

    /// Renders letters as symbol names, concatenated when every symbol is a
    /// single character and space-separated otherwise.
    pub fn render(&self, letters: &[Letter]) -> String {
        let compact = self.symbols.iter().all(|s| s.chars().count() == 1);
        let sep = if compact { "" } else { " " };
        letters
            .iter()
            .map(|&l| self.symbols[l].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Lexicographic comparison of two letter sequences by symbol name.
    pub fn cmp_by_name(&self, a: &[Letter], b: &[Letter]) -> std::cmp::Ordering {
        a.iter()
            .map(|&l| self.symbols[l].as_str())
            .cmp(b.iter().map(|&l| self.symbols[l].as_str()))
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(","))
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.symbols.serialize(serializer)
    }
}

/// Parses an alphabet from its JSON form, an array of symbol strings.
pub fn alphabet_from_json(value: &serde_json::Value) -> Result<Arc<Alphabet>> {
    let symbols: Vec<String> =
        Vec::deserialize(value).map_err(|e| Error::Parse(format!("alphabet: {e}")))?;
    Alphabet::new(symbols)
}

#[derive(Clone, Debug)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(alphabet: &Arc<Alphabet>, letters: Vec<Letter>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= alphabet.len()) {
            return Err(Error::LetterOutOfRange {
                index: bad,
                size: alphabet.len(),
            });
        }
        Ok(Self {
            alphabet: Arc::clone(alphabet),
            letters,
        })
    }

    /// Internal constructor for letters already known to be in range.
    pub(crate) fn from_raw(alphabet: &Arc<Alphabet>, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&l| l < alphabet.len()));
        Self {
            alphabet: Arc::clone(alphabet),
            letters,
        }
    }

    pub fn empty(alphabet: &Arc<Alphabet>) -> Self {
        Self::from_raw(alphabet, Vec::new())
    }

    pub fn from_symbols<S: AsRef<str>>(alphabet: &Arc<Alphabet>, symbols: &[S]) -> Result<Self> {
        let letters = symbols
            .iter()
            .map(|s| alphabet.letter(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_raw(alphabet, letters))
    }

    /// Parses a word written with single-character symbols, e.g. `"abba"`.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Self> {
        let symbols: Vec<String> = text.chars().map(String::from).collect();
        Self::from_symbols(alphabet, &symbols)
    }

    pub fn from_json(alphabet: &Arc<Alphabet>, value: &serde_json::Value) -> Result<Self> {
        let symbols: Vec<String> =
            Vec::deserialize(value).map_err(|e| Error::Parse(format!("word: {e}")))?;
        Self::from_symbols(alphabet, &symbols)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn symbols(&self) -> Vec<&str> {
        self.letters
            .iter()
            .map(|&l| self.alphabet.symbol(l))
            .collect()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self::from_raw(&self.alphabet, letters))
    }

    pub fn power(&self, k: usize) -> Word {
        Self::from_raw(&self.alphabet, self.letters.repeat(k))
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(k % self.letters.len());
        }
        Self::from_raw(&self.alphabet, letters)
    }

    /// `self` chop `r`: deletes the length-`r` prefix and suffix.
    pub fn chop(&self, r: usize) -> Word {
        Self::from_raw(&self.alphabet, chop_slice(&self.letters, r).to_vec())
    }

    /// Returns `(v, k)` with `self = v^k` and `k` maximal.
    pub fn primitive_root(&self) -> Result<(Word, usize)> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let p = primitive_period(&self.letters);
        Ok((
            Self::from_raw(&self.alphabet, self.letters[..p].to_vec()),
            self.len() / p,
        ))
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_empty() && primitive_period(&self.letters) == self.len()
    }

    /// All distinct length-`n` factors; empty when `n > |self|`.
    pub fn factors(&self, n: usize) -> FactorSet {
        let mut set = FactorSet::new(&self.alphabet);
        set.extend_factors_of(&self.letters, n);
        set
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
            && (Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet)
    }
}

impl Eq for Word {}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters.cmp(&other.letters).then_with(|| {
            if Arc::ptr_eq(&self.alphabet, &other.alphabet) {
                std::cmp::Ordering::Equal
            } else {
                self.alphabet.symbols.cmp(&other.alphabet.symbols)
            }
        })
    }
}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        f.write_str(&self.alphabet.render(&self.letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.symbols().serialize(serializer)
    }
}

/// Free-function form of [`Word::chop`].
pub fn chop(w: &Word, r: usize) -> Word {
    w.chop(r)
}

/// Free-function form of [`Word::primitive_root`].
pub fn primitive_root(w: &Word) -> Result<(Word, usize)> {
    w.primitive_root()
}

/// Free-function form of [`Word::factors`].
pub fn factors_of_word(w: &Word, n: usize) -> FactorSet {
    w.factors(n)
}

pub(crate) fn chop_slice(letters: &[Letter], r: usize) -> &[Letter] {
    if 2 * r >= letters.len() {
        &letters[..0]
    } else {
        &letters[r..letters.len() - r]
    }
}

/// Length of the primitive root of a non-empty sequence (KMP border).
pub(crate) fn primitive_period(letters: &[Letter]) -> usize {
    let n = letters.len();
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && letters[i] != letters[k] {
            k = fail[k];
        }
        if letters[i] == letters[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    let p = n - fail[n];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

/// Lexicographically least rotation (Booth's algorithm), used as the
/// canonical representative of a cyclic word.
pub(crate) fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let s: Vec<Letter> = letters.iter().chain(letters.iter()).copied().collect();
    let mut f = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j];
        let mut i = f[j - k - 1];
        while i != usize::MAX && sj != s[k + i + 1] {
            if sj < s[k + i + 1] {
                k = j - i - 1;
            }
            i = f[i];
        }
        if i == usize::MAX && sj != s[k] {
            if sj < s[k] {
                k = j;
            }
            f[j - k] = usize::MAX;
        } else {
            f[j - k] = if i == usize::MAX { 0 } else { i + 1 };
        }
    }
    s[k..k + n].to_vec()
}

/// A finite set of words of one alphabet, kept in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    alphabet: Arc<Alphabet>,
    words: BTreeSet<Vec<Letter>>,
}

impl FactorSet {
    pub fn new(alphabet: &Arc<Alphabet>) -> Self {
        Self {
            alphabet: Arc::clone(alphabet),
            words: BTreeSet::new(),
        }
    }

    pub(crate) fn from_raw(alphabet: &Arc<Alphabet>, words: BTreeSet<Vec<Letter>>) -> Self {
        Self {
            alphabet: Arc::clone(alphabet),
            words,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.alphabet.ensure_same(w.alphabet()).is_ok() && self.words.contains(w.letters())
    }

    pub fn contains_letters(&self, letters: &[Letter]) -> bool {
        self.words.contains(letters)
    }

    pub fn insert(&mut self, w: Word) -> Result<bool> {
        self.alphabet.ensure_same(w.alphabet())?;
        Ok(self.words.insert(w.into_letters()))
    }

    pub(crate) fn extend_factors_of(&mut self, letters: &[Letter], n: usize) {
        if n > letters.len() {
            return;
        }
        for win in letters.windows(n.max(1)) {
            self.words.insert(win[..n].to_vec());
        }
        if n == 0 {
            self.words.insert(Vec::new());
        }
    }

    pub fn raw(&self) -> &BTreeSet<Vec<Letter>> {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = Word> + '_ {
        self.words
            .iter()
            .map(|l| Word::from_raw(&self.alphabet, l.clone()))
    }

    /// Words ordered lexicographically by symbol name.
    pub fn sorted_by_name(&self) -> Vec<Word> {
        let mut raw: Vec<&Vec<Letter>> = self.words.iter().collect();
        raw.sort_by(|a, b| self.alphabet.cmp_by_name(a, b));
        raw.into_iter()
            .map(|l| Word::from_raw(&self.alphabet, l.clone()))
            .collect()
    }

    /// Set equality that also accepts structurally equal alphabets.
    pub fn same_words(&self, other: &FactorSet) -> bool {
        self.alphabet.ensure_same(&other.alphabet).is_ok() && self.words == other.words
    }
}

impl Serialize for FactorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.sorted_by_name().serialize(serializer)
    }
}
