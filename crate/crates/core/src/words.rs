//! Words over a graded alphabet, the deconcatenation coalgebra, the cofree
//! lift of a projection and change-of-basis endomorphisms.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::exactlin::{LinComb, Scalar};

/// Index of a letter in its alphabet.
pub type Letter = u32;

/// A finite sequence of letters; the empty word is the unit.
///
/// Words are ordered by length first, then lexicographically by letter index.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

/// Element of the tensor algebra.
pub type TensorElem = LinComb<Word>;

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// The subword `w[i..j]`.
    pub fn slice(&self, i: usize, j: usize) -> Word {
        Word(self.0[i..j].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("#{l}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

pub fn concat(w: &Word, w2: &Word) -> Word {
    w.concat(w2)
}

/// Named letters with positive degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    degrees: Vec<u32>,
    index: HashMap<String, Letter>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut index = HashMap::new();
        for (name, deg) in letters {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(parse_err(format!("`{name}` is not a valid letter name")));
            }
            if deg == 0 {
                return Err(Error::Invalid(format!("letter `{name}` has degree 0")));
            }
            if index.insert(name.clone(), names.len() as Letter).is_some() {
                return Err(Error::Invalid(format!("duplicate letter `{name}`")));
            }
            names.push(name);
            degrees.push(deg);
        }
        Ok(Alphabet {
            names,
            degrees,
            index,
        })
    }

    /// Parses a declaration such as `a:1,b:2`. A bare name gets degree 1.
    pub fn parse(decl: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for item in decl.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, deg) = match item.split_once(':') {
                Some((n, d)) => {
                    let d = d
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| parse_err(format!("bad degree in `{item}`")))?;
                    (n.trim().to_string(), d)
                }
                None => (item.to_string(), 1),
            };
            letters.push((name, deg));
        }
        Alphabet::new(letters)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.names.len() as Letter
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l as usize]
    }

    pub fn degree(&self, l: Letter) -> u32 {
        self.degrees[l as usize]
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.0.iter().map(|&l| self.degree(l)).sum()
    }

    pub fn lookup(&self, name: &str) -> Result<Letter> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| parse_err(format!("unknown letter `{name}`")))
    }

    /// Declaration text, inverse of [`Alphabet::parse`].
    pub fn declaration(&self) -> String {
        self.names
            .iter()
            .zip(&self.degrees)
            .map(|(n, d)| format!("{n}:{d}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses `a.b.c`; `1` is the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(parse_err("empty word text (use `1` for the unit)"));
        }
        s.split('.')
            .map(|part| self.lookup(part.trim()))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Parses `3/2*a.b + -1*c`. A term without `*` has coefficient 1, and a
    /// leading `-` on such a term negates it.
    pub fn parse_elem(&self, s: &str) -> Result<TensorElem> {
        let mut out = TensorElem::zero();
        for term in s.split('+').map(str::trim) {
            if term.is_empty() {
                return Err(parse_err(format!("empty term in `{s}`")));
            }
            let (c, w) = match term.split_once('*') {
                Some((c, w)) => (c.parse::<Scalar>()?, self.parse_word(w)?),
                None => match term.strip_prefix('-') {
                    Some(rest) => (-Scalar::one(), self.parse_word(rest)?),
                    None => (Scalar::one(), self.parse_word(term)?),
                },
            };
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn fmt_elem(&self, x: &TensorElem) -> String {
        x.to_text(|w| self.fmt_word(w))
    }

    pub fn fmt_letters(&self, x: &LinComb<Letter>) -> String {
        x.to_text(|l| self.name(*l).to_string())
    }

    /// All words of length exactly `n`, in word order.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let k = self.len() as Letter;
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| {
                    (0..k).map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }

    /// All nonempty words of length at most `n`.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        (1..=n).flat_map(|k| self.words_of_length(k)).collect()
    }
}

/// Deconcatenation `Σ w[..i] ⊗ w[i..]` over `i = 0..=len`.
pub fn deconcat(w: &Word) -> LinComb<(Word, Word)> {
    LinComb::from_terms(
        (0..=w.len()).map(|i| ((w.slice(0, i), w.slice(i, w.len())), Scalar::one())),
    )
}

pub fn deconcat_lin(x: &TensorElem) -> LinComb<(Word, Word)> {
    x.apply(deconcat)
}

/// All ways of cutting `w` into `k` nonempty consecutive blocks.
pub fn block_splits(w: &Word, k: usize) -> Vec<Vec<Word>> {
    let n = w.len();
    if k == 0 || k > n {
        return Vec::new();
    }
    crate::combinat::compositions_into(n, k)
        .into_iter()
        .map(|parts| {
            let mut at = 0;
            parts
                .iter()
                .map(|&p| {
                    let b = w.slice(at, at + p);
                    at += p;
                    b
                })
                .collect()
        })
        .collect()
}

fn check_reduced(x: &TensorElem) -> Result<()> {
    if x.coeff(&Word::empty()).is_zero() {
        Ok(())
    } else {
        Err(Error::NotAugmentationReduced)
    }
}

/// Iterated reduced coproduct: all splits into `k` nonempty blocks.
/// `k = 1` is the identity.
pub fn reduced_coproduct_iter(x: &TensorElem, k: usize) -> Result<LinComb<Vec<Word>>> {
    check_reduced(x)?;
    if k == 0 {
        return Err(Error::Invalid("iterated coproduct needs k >= 1".into()));
    }
    let mut out = LinComb::zero();
    for (w, c) in x {
        for blocks in block_splits(w, k) {
            out.add_term(blocks, c.clone());
        }
    }
    Ok(out)
}

/// Least `n` with `Δ̄_{n+1}(x) = 0`.
pub fn coradical_degree(x: &TensorElem) -> Result<usize> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    check_reduced(x)?;
    Ok(x.keys().map(Word::len).max().unwrap_or(0))
}

/// A linear map from words to the letter span, given on basis words.
pub trait WordProjection: Sync {
    fn project(&self, w: &Word) -> Result<LinComb<Letter>>;
}

impl<F> WordProjection for F
where
    F: Fn(&Word) -> Result<LinComb<Letter>> + Sync,
{
    fn project(&self, w: &Word) -> Result<LinComb<Letter>> {
        self(w)
    }
}

/// Extensional projection: a finite table on words, identity on letters
/// unless overridden, zero on unlisted words up to `bound`, and undefined
/// beyond it.
#[derive(Clone, Debug, Default)]
pub struct ProjectionTable {
    pub bound: Option<usize>,
    entries: HashMap<Word, LinComb<Letter>>,
}

impl ProjectionTable {
    pub fn new(bound: Option<usize>) -> Self {
        ProjectionTable {
            bound,
            entries: HashMap::new(),
        }
    }

    /// The canonical projection onto letters: identity on letters, zero elsewhere.
    pub fn canonical() -> Self {
        ProjectionTable::new(None)
    }

    pub fn insert(&mut self, w: Word, value: LinComb<Letter>) {
        self.entries.insert(w, value);
    }
}

impl WordProjection for ProjectionTable {
    fn project(&self, w: &Word) -> Result<LinComb<Letter>> {
        if let Some(v) = self.entries.get(w) {
            return Ok(v.clone());
        }
        match w.len() {
            0 => Ok(LinComb::zero()),
            1 => Ok(LinComb::basis(w.0[0])),
            n if self.bound.is_some_and(|b| n > b) => Err(Error::PartialMap(format!("{w:?}"))),
            _ => Ok(LinComb::zero()),
        }
    }
}

/// `π_V`: the canonical projection of a tensor onto its letter part.
pub fn project_letters(x: &TensorElem) -> LinComb<Letter> {
    LinComb::from_terms(
        x.iter()
            .filter(|(w, _)| w.len() == 1)
            .map(|(w, c)| (w.0[0], c.clone())),
    )
}

/// Prepends each letter of `head` to each word of `tail`.
fn prepend(head: &LinComb<Letter>, tail: &TensorElem) -> TensorElem {
    let mut out = TensorElem::zero();
    for (l, a) in head {
        for (w, b) in tail {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(*l);
            v.extend_from_slice(&w.0);
            out.add_term(Word(v), a * b);
        }
    }
    out
}

/// `Σ_k Σ φ(w_1)…φ(w_k)` over all decompositions of `w` into nonempty blocks,
/// with `1` for the empty word.
fn lift_word(phi: &dyn Fn(&Word) -> Result<LinComb<Letter>>, w: &Word) -> Result<TensorElem> {
    let n = w.len();
    // suffix[i] is the lift of w[i..].
    let mut suffix: Vec<TensorElem> = vec![TensorElem::zero(); n + 1];
    suffix[n] = TensorElem::basis(Word::empty());
    for i in (0..n).rev() {
        let mut acc = TensorElem::zero();
        for j in i + 1..=n {
            if suffix[j].is_zero() {
                continue;
            }
            let head = phi(&w.slice(i, j))?;
            if head.is_zero() {
                continue;
            }
            acc += prepend(&head, &suffix[j]);
        }
        suffix[i] = acc;
    }
    Ok(std::mem::take(&mut suffix[0]))
}

/// The coalgebra morphism `Φ = ε + Σ_n φ^{⊗n}∘Δ̄_n` determined by `phi`.
pub fn cofree_lift<P: WordProjection + ?Sized>(phi: &P, d: &TensorElem) -> Result<TensorElem> {
    let f = |w: &Word| phi.project(w);
    d.try_apply(|w| lift_word(&f, w))
}

fn check_fixes_letters<P: WordProjection + ?Sized>(pi: &P, x: &TensorElem) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for w in x.keys() {
        seen.extend(w.0.iter().copied());
    }
    for l in seen {
        if pi.project(&Word::letter(l))? != LinComb::basis(l) {
            return Err(Error::Invalid(format!(
                "projection does not fix letter #{l}"
            )));
        }
    }
    Ok(())
}

/// The filtered coalgebra endomorphism `w ↦ Σ π(w_1)…π(w_k)` over all block
/// decompositions of `w`.
pub fn structure_endo<P: WordProjection + ?Sized>(pi: &P, x: &TensorElem) -> Result<TensorElem> {
    check_fixes_letters(pi, x)?;
    cofree_lift(pi, x)
}

/// Inverse of [`structure_endo`], built from the letter-valued map
/// `μ = π_V ∘ (structure_endo)^{-1}` computed by recursion on length.
pub struct InverseStructure<'a, P: WordProjection + ?Sized> {
    pi: &'a P,
    memo: std::sync::RwLock<HashMap<Word, LinComb<Letter>>>,
}

impl<'a, P: WordProjection + ?Sized> InverseStructure<'a, P> {
    pub fn new(pi: &'a P) -> Self {
        InverseStructure {
            pi,
            memo: Default::default(),
        }
    }

    /// `μ(w)`: identity on letters, and `μ(w) = -μ(π̃(w) - w)` for longer words,
    /// where every word of `π̃(w) - w` is strictly shorter than `w`.
    pub fn mu(&self, w: &Word) -> Result<LinComb<Letter>> {
        match w.len() {
            0 => return Ok(LinComb::zero()),
            1 => return Ok(LinComb::basis(w.0[0])),
            _ => {}
        }
        if let Some(v) = self.memo.read().unwrap().get(w) {
            return Ok(v.clone());
        }
        let f = |u: &Word| self.pi.project(u);
        let mut image = lift_word(&f, w)?;
        image.add_term(w.clone(), -Scalar::one());
        let mut out = LinComb::zero();
        for (u, c) in &image {
            if u.len() >= w.len() {
                return Err(Error::Invalid(
                    "projection is not filtered: block image does not shorten".into(),
                ));
            }
            out.add_scaled(&self.mu(u)?, &-c);
        }
        self.memo.write().unwrap().insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn apply(&self, x: &TensorElem) -> Result<TensorElem> {
        check_fixes_letters(self.pi, x)?;
        let f = |w: &Word| self.mu(w);
        x.try_apply(|w| lift_word(&f, w))
    }
}

pub fn inverse_structure_endo<P: WordProjection + ?Sized>(
    pi: &P,
    x: &TensorElem,
) -> Result<TensorElem> {
    InverseStructure::new(pi).apply(x)
}

/// Shuffle product of two words, by the two-term recursion on first letters.
pub fn shuffle(w: &Word, w2: &Word) -> TensorElem {
    fn rec(
        a: &[Letter],
        b: &[Letter],
        memo: &mut HashMap<(usize, usize), TensorElem>,
    ) -> TensorElem {
        if a.is_empty() || b.is_empty() {
            let mut v = a.to_vec();
            v.extend_from_slice(b);
            return TensorElem::basis(Word(v));
        }
        let key = (a.len(), b.len());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let left = rec(&a[1..], b, memo);
        let right = rec(a, &b[1..], memo);
        let out = prepend(&LinComb::basis(a[0]), &left) + prepend(&LinComb::basis(b[0]), &right);
        memo.insert(key, out.clone());
        out
    }
    rec(&w.0, &w2.0, &mut HashMap::new())
}

pub fn shuffle_lin(x: &TensorElem, y: &TensorElem) -> TensorElem {
    let mut out = TensorElem::zero();
    for (w, a) in x {
        for (u, b) in y {
            out.add_scaled(&shuffle(w, u), &(a * b));
        }
    }
    out
}

/// Extends a letter map letterwise to an algebra and coalgebra map of words.
pub fn map_letters<F: Fn(Letter) -> Letter>(x: &TensorElem, f: F) -> TensorElem {
    x.map_basis(|w| Word(w.0.iter().map(|&l| f(l)).collect()))
}
