//! The canonical idempotent `e_*` of a B∞ product, its letter part `ϖ_*`,
//! tangent-to-identity endomorphisms and the induced isomorphisms with the
//! shuffle algebra.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::binfty::{BInftyStructure, LetterProduct};
use crate::error::{Error, Result};
use crate::exactlin::{LinComb, Scalar};
use crate::par;
use crate::words::{self, project_letters, Letter, TensorElem, Word, WordProjection};

/// `(-1)^{k-1}/k`.
fn log_coeff(k: usize) -> Scalar {
    Scalar::sign(k - 1) * Scalar::recip_int(k as i64)
}

/// `q[k][i]`: sum over decompositions of `w[i..]` into `k` nonempty blocks of
/// the ordered product of the blocks.
fn block_products(b: &BInftyStructure, w: &Word) -> Result<Vec<Vec<TensorElem>>> {
    let n = w.len();
    let mut q = vec![vec![TensorElem::zero(); n + 1]; n + 1];
    q[0][n] = TensorElem::basis(Word::empty());
    for k in 1..=n {
        for i in (0..n).rev() {
            let mut acc = TensorElem::zero();
            for j in i + 1..=n {
                if q[k - 1][j].is_zero() {
                    continue;
                }
                acc += b.product(&TensorElem::basis(w.slice(i, j)), &q[k - 1][j])?;
            }
            q[k][i] = acc;
        }
    }
    Ok(q)
}

/// `e_*(w) = Σ_k (-1)^{k-1}/k Σ w_1 ∗ … ∗ w_k` over decompositions of `w`
/// into `k` nonempty blocks; `e_*(1) = 0`.
pub fn eulerian_idempotent(b: &BInftyStructure, w: &Word) -> Result<TensorElem> {
    if w.is_empty() {
        return Ok(TensorElem::zero());
    }
    let q = block_products(b, w)?;
    let mut out = TensorElem::zero();
    for (k, row) in q.iter().enumerate().skip(1) {
        out.add_scaled(&row[0], &log_coeff(k));
    }
    Ok(out)
}

pub fn eulerian_lin(b: &BInftyStructure, x: &TensorElem) -> Result<TensorElem> {
    x.try_apply(|w| eulerian_idempotent(b, w))
}

/// `ϖ_*(w) = Σ_k (-1)^{k-1}/k Σ ⟨w_1, w_2 ∗ … ∗ w_k⟩`.
pub fn varpi(b: &BInftyStructure, w: &Word) -> Result<LinComb<Letter>> {
    if w.is_empty() {
        return Ok(LinComb::zero());
    }
    let n = w.len();
    let q = block_products(b, w)?;
    let mut out = LinComb::zero();
    for k in 1..=n {
        let mut inner = LinComb::zero();
        for j in 1..=n {
            if q[k - 1][j].is_zero() {
                continue;
            }
            inner += b.bracket_lin(&TensorElem::basis(w.slice(0, j)), &q[k - 1][j])?;
        }
        out.add_scaled(&inner, &log_coeff(k));
    }
    Ok(out)
}

/// Memoized `ϖ_*` usable as the projection of a structure endomorphism.
pub struct Varpi<'a> {
    b: &'a BInftyStructure,
    memo: RwLock<HashMap<Word, LinComb<Letter>>>,
}

impl<'a> Varpi<'a> {
    pub fn new(b: &'a BInftyStructure) -> Self {
        Varpi {
            b,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn apply_lin(&self, x: &TensorElem) -> Result<LinComb<Letter>> {
        x.try_apply(|w| self.project(w))
    }
}

impl WordProjection for Varpi<'_> {
    fn project(&self, w: &Word) -> Result<LinComb<Letter>> {
        if let Some(v) = self.memo.read().unwrap().get(w) {
            return Ok(v.clone());
        }
        let v = varpi(self.b, w)?;
        self.memo.write().unwrap().insert(w.clone(), v.clone());
        Ok(v)
    }
}

/// An endomorphism of the tensor space expected to be tangent to identity:
/// zero on the unit and on products of nonempty words, identity on letters.
#[derive(Clone, Debug)]
pub enum TangentEndo {
    /// The canonical idempotent `e_*` of the structure at hand.
    Eulerian,
    /// Values on words up to `bound`; unlisted words within the bound map to zero.
    Table {
        bound: usize,
        entries: BTreeMap<Word, TensorElem>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TangentReport {
    pub bound: usize,
    pub unit_vanishes: bool,
    pub letters_fixed: bool,
    pub products_vanish: bool,
}

impl TangentReport {
    pub fn is_tangent(&self) -> bool {
        self.unit_vanishes && self.letters_fixed && self.products_vanish
    }
}

impl TangentEndo {
    pub fn apply(&self, b: &BInftyStructure, w: &Word) -> Result<TensorElem> {
        match self {
            TangentEndo::Eulerian => eulerian_idempotent(b, w),
            TangentEndo::Table { bound, entries } => {
                if w.len() > *bound {
                    return Err(Error::PartialMap(b.alphabet().fmt_word(w)));
                }
                Ok(entries.get(w).cloned().unwrap_or_default())
            }
        }
    }

    pub fn apply_lin(&self, b: &BInftyStructure, x: &TensorElem) -> Result<TensorElem> {
        x.try_apply(|w| self.apply(b, w))
    }

    /// Checks the three defining conditions on all words of length at most
    /// `bound` (products: total length at most `bound`).
    pub fn verify(&self, b: &BInftyStructure, bound: usize) -> Result<TangentReport> {
        let al = b.alphabet();
        let unit_vanishes = self.apply(b, &Word::empty())?.is_zero();
        let letters: Vec<Letter> = al.letters().collect();
        let letters_fixed = par::try_all(&letters, |&l| {
            let w = Word::letter(l);
            Ok(self.apply(b, &w)? == TensorElem::basis(w))
        })?;
        let words = al.words_up_to(bound.saturating_sub(1));
        let pairs: Vec<(Word, Word)> = words
            .iter()
            .flat_map(|x| {
                words
                    .iter()
                    .filter(move |y| x.len() + y.len() <= bound)
                    .map(move |y| (x.clone(), y.clone()))
            })
            .collect();
        // Products share many words, so images are cached for this check.
        let cache: RwLock<HashMap<Word, TensorElem>> = RwLock::new(HashMap::new());
        let cached = |w: &Word| -> Result<TensorElem> {
            if let Some(v) = cache.read().unwrap().get(w) {
                return Ok(v.clone());
            }
            let v = self.apply(b, w)?;
            cache.write().unwrap().insert(w.clone(), v.clone());
            Ok(v)
        };
        let products_vanish = par::try_all(&pairs, |(x, y)| {
            Ok(b.product_words(x, y)?.try_apply(cached)?.is_zero())
        })?;
        Ok(TangentReport {
            bound,
            unit_vanishes,
            letters_fixed,
            products_vanish,
        })
    }
}

/// `ω̃`: the structure endomorphism built from `ω = π_V ∘ φ` for a verified
/// tangent-to-identity `φ`. It maps the product `∗` to the shuffle product.
pub struct Omega<'a> {
    b: &'a BInftyStructure,
    endo: TangentEndo,
    varpi: Varpi<'a>,
    report: TangentReport,
}

impl<'a> Omega<'a> {
    /// Verifies `endo` up to `bound` and fails with `NotTangent` otherwise.
    pub fn new(b: &'a BInftyStructure, endo: TangentEndo, bound: usize) -> Result<Self> {
        let report = endo.verify(b, bound)?;
        if !report.is_tangent() {
            return Err(Error::NotTangent(format!("{report:?}")));
        }
        Ok(Omega {
            b,
            endo,
            varpi: Varpi::new(b),
            report,
        })
    }

    pub fn report(&self) -> TangentReport {
        self.report
    }

    pub fn apply(&self, x: &TensorElem) -> Result<TensorElem> {
        words::structure_endo(self, x)
    }
}

impl WordProjection for Omega<'_> {
    fn project(&self, w: &Word) -> Result<LinComb<Letter>> {
        match self.endo {
            // π_V ∘ e_* is ϖ_*; the memoized form avoids recomputing e_*.
            TangentEndo::Eulerian => self.varpi.project(w),
            _ => Ok(project_letters(&self.endo.apply(self.b, w)?)),
        }
    }
}

/// `ω̃` for the canonical idempotent, verified on words up to the longest
/// word of `x` (and at least 2).
pub fn omega_tilde(b: &BInftyStructure, x: &TensorElem) -> Result<TensorElem> {
    let bound = x.keys().map(Word::len).max().unwrap_or(0).max(2);
    Omega::new(b, TangentEndo::Eulerian, bound)?.apply(x)
}

/// `ζ`: letter part of the inverse of `ω̃` for `e_*`, by the recursion
/// `ζ(w) = -ϖ_*(Σ_{k≥2} Σ ζ(w_1)…ζ(w_k))`.
pub struct Zeta<'a> {
    varpi: Varpi<'a>,
    memo: RwLock<HashMap<Word, LinComb<Letter>>>,
}

impl<'a> Zeta<'a> {
    pub fn new(b: &'a BInftyStructure) -> Self {
        Zeta {
            varpi: Varpi::new(b),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn apply(&self, x: &TensorElem) -> Result<TensorElem> {
        words::cofree_lift(self, x)
    }
}

impl WordProjection for Zeta<'_> {
    fn project(&self, w: &Word) -> Result<LinComb<Letter>> {
        let n = w.len();
        match n {
            0 => return Ok(LinComb::zero()),
            1 => return Ok(LinComb::basis(w.0[0])),
            _ => {}
        }
        if let Some(v) = self.memo.read().unwrap().get(w) {
            return Ok(v.clone());
        }
        // Decompositions with at least two blocks: a first block w[..j] with
        // j < n, followed by any decomposition of the rest.
        let mut rest = TensorElem::zero();
        for j in 1..n {
            let head = self.project(&w.slice(0, j))?;
            if head.is_zero() {
                continue;
            }
            let tail = words::cofree_lift(self, &TensorElem::basis(w.slice(j, n)))?;
            for (l, a) in &head {
                for (u, c) in &tail {
                    rest.add_term(Word::letter(*l).concat(u), a * c);
                }
            }
        }
        let v = -self.varpi.apply_lin(&rest)?;
        self.memo.write().unwrap().insert(w.clone(), v.clone());
        Ok(v)
    }
}

pub fn zeta_tilde(b: &BInftyStructure, x: &TensorElem) -> Result<TensorElem> {
    Zeta::new(b).apply(x)
}

fn letter_power(p: &LetterProduct, w: &Word) -> LinComb<Letter> {
    let mut acc = LinComb::basis(w.0[0]);
    for &l in &w.0[1..] {
        acc = p.mul_lin(&acc, &LinComb::basis(l));
    }
    acc
}

/// Closed form of `ϖ_*` for a commutative quasi-shuffle:
/// `(-1)^{n-1}/n · v_1·…·v_n`.
pub fn hoffman_log(p: &LetterProduct, w: &Word) -> LinComb<Letter> {
    if w.is_empty() {
        return LinComb::zero();
    }
    letter_power(p, w).scale(&log_coeff(w.len()))
}

/// Closed form of `ζ` for a commutative quasi-shuffle: `1/n! · v_1·…·v_n`.
pub fn hoffman_exp(p: &LetterProduct, w: &Word) -> LinComb<Letter> {
    if w.is_empty() {
        return LinComb::zero();
    }
    let fact = crate::combinat::factorial(w.len() as u64) as i64;
    letter_power(p, w).scale(&Scalar::recip_int(fact))
}

/// Block expansion of [`hoffman_log`].
pub fn hoffman_log_tilde(p: &LetterProduct, x: &TensorElem) -> Result<TensorElem> {
    let f = |w: &Word| Ok(hoffman_log(p, w));
    words::cofree_lift(&f, x)
}

/// Block expansion of [`hoffman_exp`].
pub fn hoffman_exp_tilde(p: &LetterProduct, x: &TensorElem) -> Result<TensorElem> {
    let f = |w: &Word| Ok(hoffman_exp(p, w));
    words::cofree_lift(&f, x)
}
