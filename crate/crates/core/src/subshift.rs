//! Finite presentations of subshifts and their exact factor languages.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::freegroup::DoubledAlphabet;
use crate::morphism::{image_language, Morphism};
use crate::words::{alphabet_from_json, Alphabet, FactorSet, Letter, Word};

/// Refuse to materialize languages larger than this many words.
pub const MAX_ENUMERATION: u128 = 1 << 24;

#[derive(Clone, Debug)]
pub enum Presentation {
    FullShift {
        alphabet: Arc<Alphabet>,
    },
    Sft {
        alphabet: Arc<Alphabet>,
        forbidden: Vec<Word>,
    },
    Substitution {
        morphism: Morphism,
    },
    Image {
        inner: Box<Presentation>,
        morphism: Morphism,
    },
    Double {
        inner: Box<Presentation>,
        doubled: DoubledAlphabet,
    },
}

impl Presentation {
    pub fn full_shift(alphabet: &Arc<Alphabet>) -> Self {
        Presentation::FullShift {
            alphabet: Arc::clone(alphabet),
        }
    }

    pub fn sft(alphabet: &Arc<Alphabet>, forbidden: Vec<Word>) -> Result<Self> {
        for w in &forbidden {
            alphabet.ensure_same(w.alphabet())?;
            if w.is_empty() {
                return Err(Error::EmptyForbiddenWord);
            }
        }
        Ok(Presentation::Sft {
            alphabet: Arc::clone(alphabet),
            forbidden,
        })
    }

    /// The subshift generated by a primitive, growing endomorphism.
    pub fn substitution(morphism: Morphism) -> Result<Self> {
        if !morphism.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        if !check_primitive(&morphism)?.primitive {
            return Err(Error::NotPrimitive);
        }
        if morphism.sup_norm() < 2 {
            return Err(Error::NotGrowing);
        }
        Ok(Presentation::Substitution { morphism })
    }

    pub fn image(inner: Presentation, morphism: Morphism) -> Result<Self> {
        inner.alphabet().ensure_same(morphism.source())?;
        Ok(Presentation::Image {
            inner: Box::new(inner),
            morphism,
        })
    }

    pub fn double(inner: Presentation) -> Self {
        let doubled = DoubledAlphabet::new(inner.alphabet());
        Presentation::Double {
            inner: Box::new(inner),
            doubled,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        match self {
            Presentation::FullShift { alphabet } | Presentation::Sft { alphabet, .. } => alphabet,
            Presentation::Substitution { morphism } => morphism.source(),
            Presentation::Image { morphism, .. } => morphism.target(),
            Presentation::Double { doubled, .. } => doubled.full(),
        }
    }

    /// `ℒ(X) ∩ 𝒜^n`.
    pub fn language(&self, n: usize) -> Result<FactorSet> {
        if n == 0 {
            return Err(Error::ZeroWindow);
        }
        match self {
            Presentation::FullShift { alphabet } => full_language(alphabet, n),
            Presentation::Sft {
                alphabet,
                forbidden,
            } => sft_language(alphabet, forbidden, n),
            Presentation::Substitution { morphism } => substitution_language(morphism, n),
            Presentation::Image { inner, morphism } => image_language(inner, morphism, n),
            Presentation::Double { inner, doubled } => {
                let base = inner.language(n)?;
                let mut out = BTreeSet::new();
                for w in base.raw() {
                    out.insert(w.clone());
                    out.insert(doubled.inverse_letters(w));
                }
                Ok(FactorSet::from_raw(doubled.full(), out))
            }
        }
    }

    /// `p_X(n)`. The full shift and the double are counted structurally:
    /// `k^n`, and twice the inner count since a positive word and an
    /// inverse word of positive length never coincide.
    pub fn complexity(&self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::ZeroWindow);
        }
        match self {
            Presentation::FullShift { alphabet } => Ok(BigUint::from(alphabet.len()).pow(n as u32)),
            Presentation::Double { inner, .. } => Ok(inner.complexity(n)? * 2u32),
            _ => Ok(BigUint::from(self.language(n)?.len())),
        }
    }

    pub fn complexity_table(&self, max_n: usize) -> Result<ComplexityTable> {
        if max_n == 0 {
            return Err(Error::ZeroWindow);
        }
        let values = (1..=max_n)
            .map(|n| self.complexity(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(ComplexityTable::new(self.id(), values))
    }

    /// Compact JSON rendering, used to label tables and reports.
    pub fn id(&self) -> String {
        self.to_json().to_string()
    }

    pub fn to_json(&self) -> Value {
        match self {
            Presentation::FullShift { alphabet } => json!({"type": "full", "alphabet": **alphabet}),
            Presentation::Sft {
                alphabet,
                forbidden,
            } => json!({"type": "sft", "alphabet": **alphabet, "forbidden": forbidden}),
            Presentation::Substitution { morphism } => {
                json!({"type": "substitution", "morphism": morphism})
            }
            Presentation::Image { inner, morphism } => {
                json!({"type": "image", "inner": inner.to_json(), "morphism": morphism})
            }
            Presentation::Double { inner, .. } => {
                json!({"type": "double", "inner": inner.to_json()})
            }
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let ty = value
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("presentation needs a string `type`".into()))?;
        let field = |name: &str| {
            value
                .get(name)
                .ok_or_else(|| Error::Parse(format!("`{ty}` presentation needs `{name}`")))
        };
        match ty {
            "full" => Ok(Presentation::full_shift(&alphabet_from_json(field(
                "alphabet",
            )?)?)),
            "sft" => {
                let alphabet = alphabet_from_json(field("alphabet")?)?;
                let forbidden = field("forbidden")?
                    .as_array()
                    .ok_or_else(|| Error::Parse("`forbidden` must be an array".into()))?
                    .iter()
                    .map(|w| Word::from_json(&alphabet, w))
                    .collect::<Result<Vec<_>>>()?;
                Presentation::sft(&alphabet, forbidden)
            }
            "substitution" => Presentation::substitution(Morphism::from_json(field("morphism")?)?),
            "image" => {
                let inner = Presentation::from_json(field("inner")?)?;
                let morphism = Morphism::from_json(field("morphism")?)?;
                // A map-form morphism carries its own source alphabet; align
                // it with the inner presentation when the symbols agree.
                let morphism = realign_source(morphism, inner.alphabet())?;
                Presentation::image(inner, morphism)
            }
            "double" => Ok(Presentation::double(Presentation::from_json(field(
                "inner",
            )?)?)),
            other => Err(Error::Parse(format!("unknown presentation type `{other}`"))),
        }
    }
}

/// Re-indexes a morphism so that its source alphabet is `alphabet`, when the
/// two contain the same symbols in possibly different orders.
pub fn realign_source(morphism: Morphism, alphabet: &Arc<Alphabet>) -> Result<Morphism> {
    if morphism.source().ensure_same(alphabet).is_ok() {
        return Ok(morphism);
    }
    if morphism.source().len() != alphabet.len() {
        return Err(Error::AlphabetMismatch {
            expected: alphabet.to_string(),
            found: morphism.source().to_string(),
        });
    }
    let images = alphabet
        .symbols()
        .iter()
        .map(|s| {
            morphism
                .source()
                .letter(s)
                .map(|l| morphism.image(l).to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    if !morphism.is_endomorphism() {
        return Morphism::new(alphabet, morphism.target(), images);
    }
    // keep endomorphisms closed over the realigned alphabet
    let images = images
        .into_iter()
        .map(|img| {
            img.into_iter()
                .map(|l| alphabet.letter(morphism.target().symbol(l)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(alphabet, alphabet, images)
}

fn check_enumeration_size(k: usize, n: usize) -> Result<()> {
    let size = (k as f64).powi(n as i32);
    if size > MAX_ENUMERATION as f64 {
        return Err(Error::InvalidArgument(format!(
            "refusing to enumerate {k}^{n} words"
        )));
    }
    Ok(())
}

fn full_language(alphabet: &Arc<Alphabet>, n: usize) -> Result<FactorSet> {
    let k = alphabet.len();
    check_enumeration_size(k, n)?;
    let mut out = BTreeSet::new();
    let mut cur = vec![0; n];
    loop {
        out.insert(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(FactorSet::from_raw(alphabet, out));
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < k {
                break;
            }
            cur[i] = 0;
        }
    }
}

pub(crate) fn avoids(letters: &[Letter], forbidden: &[Vec<Letter>]) -> bool {
    forbidden
        .iter()
        .all(|f| f.len() > letters.len() || !letters.windows(f.len()).any(|w| w == f.as_slice()))
}

/// SFT language via the graph of allowed blocks, trimmed to the vertices
/// that lie on a biinfinite path.
fn sft_language(alphabet: &Arc<Alphabet>, forbidden: &[Word], n: usize) -> Result<FactorSet> {
    let forb: Vec<Vec<Letter>> = forbidden.iter().map(|w| w.letters().to_vec()).collect();
    let max_len = forb.iter().map(Vec::len).max().unwrap_or(1);
    let block = max_len.saturating_sub(1).max(1);
    let vertices: Vec<Vec<Letter>> = full_language(alphabet, block)?
        .raw()
        .iter()
        .filter(|v| avoids(v, &forb))
        .cloned()
        .collect();
    let idx: std::collections::HashMap<&[Letter], usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let mut succ: Vec<Vec<(usize, Letter)>> = vec![Vec::new(); vertices.len()];
    let mut pred_count = vec![0usize; vertices.len()];
    for (i, v) in vertices.iter().enumerate() {
        for a in alphabet.letters() {
            let mut ext = v.clone();
            ext.push(a);
            if !avoids(&ext, &forb) {
                continue;
            }
            if let Some(&j) = idx.get(&ext[1..]) {
                succ[i].push((j, a));
                pred_count[j] += 1;
            }
        }
    }
    // Trim: repeatedly drop vertices without live successor or predecessor.
    let mut alive = vec![true; vertices.len()];
    let mut out_count: Vec<usize> = succ.iter().map(Vec::len).collect();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (i, s) in succ.iter().enumerate() {
        for &(j, _) in s {
            preds[j].push(i);
        }
    }
    let mut stack: Vec<usize> = (0..vertices.len())
        .filter(|&i| out_count[i] == 0 || pred_count[i] == 0)
        .collect();
    while let Some(i) = stack.pop() {
        if !alive[i] {
            continue;
        }
        alive[i] = false;
        for &(j, _) in &succ[i] {
            if alive[j] {
                pred_count[j] -= 1;
                if pred_count[j] == 0 {
                    stack.push(j);
                }
            }
        }
        for &p in &preds[i] {
            if alive[p] {
                out_count[p] -= 1;
                if out_count[p] == 0 {
                    stack.push(p);
                }
            }
        }
    }

    let mut out = BTreeSet::new();
    if n <= block {
        for (i, v) in vertices.iter().enumerate() {
            if alive[i] {
                out.insert(v[..n].to_vec());
            }
        }
        return Ok(FactorSet::from_raw(alphabet, out));
    }
    let mut path = Vec::with_capacity(n);
    for (i, v) in vertices.iter().enumerate() {
        if alive[i] {
            path.clear();
            path.extend_from_slice(v);
            walk(i, n, &succ, &alive, &mut path, &mut out);
        }
    }
    Ok(FactorSet::from_raw(alphabet, out))
}

fn walk(
    at: usize,
    n: usize,
    succ: &[Vec<(usize, Letter)>],
    alive: &[bool],
    path: &mut Vec<Letter>,
    out: &mut BTreeSet<Vec<Letter>>,
) {
    if path.len() == n {
        out.insert(path.clone());
        return;
    }
    for &(j, a) in &succ[at] {
        if alive[j] {
            path.push(a);
            walk(j, n, succ, alive, path, out);
            path.pop();
        }
    }
}

/// Length-2 words of the substitution language: the closure of the
/// two-letter factors of letter images under the substitution.
fn substitution_two_factors(sigma: &Morphism) -> BTreeSet<Vec<Letter>> {
    let mut set = BTreeSet::new();
    for a in sigma.source().letters() {
        for f in sigma.image(a).windows(2) {
            set.insert(f.to_vec());
        }
    }
    loop {
        let mut grown = set.clone();
        for w in &set {
            for f in sigma.apply_letters(w).windows(2) {
                grown.insert(f.to_vec());
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

/// Every length-`n` factor of the substitution subshift sits inside
/// `σ^j(ab)` for a two-letter factor `ab` once all `σ^j` letter images have
/// length at least `n − 1`.
fn substitution_language(sigma: &Morphism, n: usize) -> Result<FactorSet> {
    let two = substitution_two_factors(sigma);
    let mut iterate = Morphism::identity(sigma.source());
    while iterate.inf_norm() + 1 < n {
        iterate = sigma.after(&iterate)?;
    }
    let mut out = BTreeSet::new();
    for w in &two {
        let img = iterate.apply_letters(w);
        for f in img.windows(n) {
            out.insert(f.to_vec());
        }
    }
    Ok(FactorSet::from_raw(sigma.source(), out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitivityCheck {
    pub primitive: bool,
    /// Least `k` with a strictly positive `k`-th incidence matrix power.
    pub exponent: Option<usize>,
}

/// Primitivity of an endomorphism: some power `k ≤ card(𝒜)²` of its
/// incidence matrix is entrywise positive.
pub fn check_primitive(sigma: &Morphism) -> Result<PrimitivityCheck> {
    if !sigma.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    let d = sigma.source().len();
    // reach[i][j]: letter j occurs in σ^k(i)
    let step: Vec<Vec<bool>> = (0..d)
        .map(|i| {
            let mut row = vec![false; d];
            for &j in sigma.image(i) {
                row[j] = true;
            }
            row
        })
        .collect();
    let mut reach = step.clone();
    for k in 1..=d * d {
        if reach.iter().flatten().all(|&b| b) {
            return Ok(PrimitivityCheck {
                primitive: true,
                exponent: Some(k),
            });
        }
        reach = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).any(|m| reach[i][m] && step[m][j]))
                    .collect()
            })
            .collect();
    }
    Ok(PrimitivityCheck {
        primitive: false,
        exponent: None,
    })
}

/// Free-function form of [`Presentation::language`].
pub fn language(x: &Presentation, n: usize) -> Result<FactorSet> {
    x.language(n)
}

/// Free-function form of [`Presentation::complexity`].
pub fn complexity(x: &Presentation, n: usize) -> Result<BigUint> {
    x.complexity(n)
}

/// Free-function form of [`Presentation::complexity_table`].
pub fn complexity_table(x: &Presentation, max_n: usize) -> Result<ComplexityTable> {
    x.complexity_table(max_n)
}

/// Exact values `n ↦ p(n)` for `n = 1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityTable {
    pub presentation: String,
    #[serde(with = "crate::decimal::vec")]
    values: Vec<BigUint>,
}

impl ComplexityTable {
    pub fn new(presentation: impl Into<String>, values: Vec<BigUint>) -> Self {
        Self {
            presentation: presentation.into(),
            values,
        }
    }

    pub fn max_n(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        if n == 0 {
            None
        } else {
            self.values.get(n - 1)
        }
    }

    /// Overwrites one entry; only meant for building negative controls.
    pub fn set(&mut self, n: usize, value: BigUint) {
        assert!(n >= 1 && n <= self.values.len(), "entry {n} not in table");
        self.values[n - 1] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    /// Monotonicity, submultiplicativity and positivity, with the first
    /// violation described.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for (n, v) in self.iter() {
            if v.is_zero() {
                return Err(format!("p({n}) = 0"));
            }
        }
        for n in 2..=self.max_n() {
            if self.values[n - 1] < self.values[n - 2] {
                return Err(format!("p({n}) < p({})", n - 1));
            }
        }
        for m in 1..=self.max_n() {
            for n in 1..=self.max_n() - m {
                if self.values[m + n - 1] > &self.values[m - 1] * &self.values[n - 1] {
                    return Err(format!("p({}) > p({m})·p({n})", m + n));
                }
            }
        }
        Ok(())
    }

    /// CSV with header `n,p`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,p\n");
        for (n, v) in self.iter() {
            let _ = writeln!(s, "{n},{v}");
        }
        s
    }

    pub fn from_csv(presentation: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("n,p") {
            return Err(Error::Parse("complexity CSV must start with `n,p`".into()));
        }
        let mut values = Vec::new();
        for (i, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
            let (n, p) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad CSV row `{line}`")))?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad n in `{line}`")))?;
            if n != i + 1 {
                return Err(Error::Parse(format!("expected n = {}, got {n}", i + 1)));
            }
            let p: BigUint = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad p in `{line}`")))?;
            values.push(p);
        }
        Ok(Self::new(presentation, values))
    }

    /// SHA-256 of the CSV rendering.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_csv().as_bytes()))
    }

    pub fn ones(max_n: usize) -> Self {
        Self::new("ones", vec![BigUint::one(); max_n])
    }
}
