//! Permutations, descent sets and the descent algebra inside `ℚ[S_n]`.

use std::collections::BTreeSet;
use std::fmt;

use crate::combinat::{binomial, compositions, permutations};
use crate::error::{Error, Result};
use crate::exactlin::{Echelon, LinComb, Scalar};
use crate::par;
use crate::words::{Letter, TensorElem, Word};

/// Largest degree accepted by descent computations.
pub const MAX_DEGREE: usize = 7;

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(Error::SizeBound {
            what: "permutation degree",
            size: n,
            limit: MAX_DEGREE,
        });
    }
    Ok(())
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i > n || seen[i] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// `σ(i)` for `1 ≤ i ≤ n`.
    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i - 1]).collect())
    }

    /// Positions `i < n` with `σ(i) > σ(i+1)`.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        (1..self.size())
            .filter(|&i| self.0[i - 1] > self.0[i])
            .collect()
    }

    pub fn all(n: usize) -> Vec<Permutation> {
        permutations(n)
            .into_iter()
            .map(|p| Permutation(p.into_iter().map(|i| i + 1).collect()))
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

/// A composition of `n`, printed as `(2,1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// The set `{i_1, i_1+i_2, …, n}` of partial sums.
    pub fn to_set(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Inverse of [`Composition::to_set`] for a set whose maximum is `n`.
    pub fn from_set(n: usize, s: &BTreeSet<usize>) -> Result<Self> {
        validate_set(n, s)?;
        let mut prev = 0;
        Ok(Composition(
            s.iter()
                .map(|&x| {
                    let p = x - prev;
                    prev = x;
                    p
                })
                .collect(),
        ))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn validate_set(n: usize, s: &BTreeSet<usize>) -> Result<()> {
    if n == 0 {
        return if s.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid("degree 0 only has the empty set".into()))
        };
    }
    if !s.contains(&n) || s.iter().any(|&x| x == 0 || x > n) {
        return Err(Error::Invalid(format!(
            "descent class {s:?} must satisfy n ∈ S ⊆ [n] for n = {n}"
        )));
    }
    Ok(())
}

/// An element of the group algebra `ℚ[S_n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgElem {
    pub n: usize,
    pub terms: LinComb<Permutation>,
}

impl fmt::Debug for GroupAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}: {}", self.n, self.terms)
    }
}

impl fmt::Display for GroupAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms)
    }
}

impl GroupAlgElem {
    pub fn zero(n: usize) -> Self {
        GroupAlgElem {
            n,
            terms: LinComb::zero(),
        }
    }

    /// The identity permutation of `S_n`, written `1_n`.
    pub fn identity(n: usize) -> Self {
        GroupAlgElem {
            n,
            terms: LinComb::basis(Permutation::identity(n)),
        }
    }

    pub fn from_terms(n: usize, terms: LinComb<Permutation>) -> Result<Self> {
        if let Some(p) = terms.keys().find(|p| p.size() != n) {
            return Err(Error::DegreeMismatch(n, p.size()));
        }
        Ok(GroupAlgElem { n, terms })
    }

    /// Parses `1/2*1 2 + -1/2*2 1`; a term without `*` has coefficient 1.
    pub fn parse(s: &str) -> Result<Self> {
        let mut terms = LinComb::zero();
        for t in s.split('+').map(str::trim) {
            let (c, p) = match t.split_once('*') {
                Some((c, p)) => (c.parse::<Scalar>()?, p.parse::<Permutation>()?),
                None => (Scalar::one(), t.parse::<Permutation>()?),
            };
            terms.add_term(p, c);
        }
        let n = terms
            .first_key()
            .map(Permutation::size)
            .ok_or_else(|| Error::Parse(format!("empty group algebra element `{s}`")))?;
        GroupAlgElem::from_terms(n, terms)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        GroupAlgElem {
            n: self.n,
            terms: self.terms.scale(c),
        }
    }

    pub fn add(&self, other: &GroupAlgElem) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        Ok(GroupAlgElem {
            n: self.n,
            terms: &self.terms + &other.terms,
        })
    }

    pub fn coeff(&self, p: &Permutation) -> Scalar {
        self.terms.coeff(p)
    }
}

pub fn descent_set(p: &Permutation) -> BTreeSet<usize> {
    p.descent_set()
}

fn descent_class_sum<F: Fn(&BTreeSet<usize>) -> bool>(n: usize, keep: F) -> GroupAlgElem {
    GroupAlgElem {
        n,
        terms: Permutation::all(n)
            .into_iter()
            .filter(|p| keep(&p.descent_set()))
            .map(|p| (p, Scalar::one()))
            .collect(),
    }
}

/// `De_{=S}`: sum of the permutations with descent set `S ∖ {n}`.
pub fn de_equal(n: usize, s: &BTreeSet<usize>) -> Result<GroupAlgElem> {
    check_degree(n)?;
    validate_set(n, s)?;
    let target: BTreeSet<usize> = s.iter().copied().filter(|&x| x != n).collect();
    Ok(descent_class_sum(n, |d| *d == target))
}

/// `De_S`: sum of the permutations with descent set contained in `S ∖ {n}`.
pub fn de_subset(n: usize, s: &BTreeSet<usize>) -> Result<GroupAlgElem> {
    check_degree(n)?;
    validate_set(n, s)?;
    Ok(descent_class_sum(n, |d| d.iter().all(|x| s.contains(x))))
}

/// `Dyn_n = Σ_{i=0}^{n-1} (-1)^i De_{={1..i}}`.
pub fn dynkin(n: usize) -> Result<GroupAlgElem> {
    check_degree(n)?;
    if n == 0 {
        return Err(Error::Invalid("Dynkin element needs n >= 1".into()));
    }
    let mut out = GroupAlgElem::zero(n);
    for i in 0..n {
        let mut s: BTreeSet<usize> = (1..=i).collect();
        s.insert(n);
        out = out.add(&de_equal(n, &s)?.scale(&Scalar::sign(i)))?;
    }
    Ok(out)
}

/// Solomon's element: coefficient `(-1)^d / (n·C(n-1,d))` on every
/// permutation with `d` descents.
pub fn solomon(n: usize) -> Result<GroupAlgElem> {
    check_degree(n)?;
    if n == 0 {
        return Err(Error::Invalid("Solomon element needs n >= 1".into()));
    }
    let terms = Permutation::all(n)
        .into_iter()
        .map(|p| {
            let d = p.descent_set().len();
            let denom = n as i64 * binomial(n as u64 - 1, d as u64) as i64;
            (p, Scalar::sign(d) * Scalar::recip_int(denom))
        })
        .collect();
    Ok(GroupAlgElem { n, terms })
}

/// Place-permutation action `σ(y_1…y_n) = y_{σ(1)}…y_{σ(n)}`, extended linearly.
pub fn act_on_tensor(g: &GroupAlgElem, w: &Word) -> Result<TensorElem> {
    if w.len() != g.n {
        return Err(Error::LengthMismatch {
            expected: g.n,
            found: w.len(),
        });
    }
    Ok(g.terms
        .map_basis(|p| Word(p.images().iter().map(|&i| w.0[i - 1]).collect())))
}

pub fn act_on_tensor_lin(g: &GroupAlgElem, x: &TensorElem) -> Result<TensorElem> {
    x.try_apply(|w| act_on_tensor(g, w))
}

fn distinct_word(n: usize) -> Word {
    Word((1..=n as Letter).collect())
}

/// Reads back the permutation whose action on `x_1…x_n` gives the word.
fn word_to_permutation(w: &Word) -> Permutation {
    Permutation(w.0.iter().map(|&l| l as usize).collect())
}

/// Convolution `m ∘ (g ⊗ h) ∘ Δ_⧢`, evaluated on `x_1…x_{p+q}`.
pub fn convolution(g: &GroupAlgElem, h: &GroupAlgElem) -> Result<GroupAlgElem> {
    let (p, q) = (g.n, h.n);
    let n = p + q;
    check_degree(n)?;
    let x = distinct_word(n);
    let mut out = LinComb::zero();
    // Unshuffles with a left part of size p; other sizes are killed by g, h.
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != p {
            continue;
        }
        let left = Word(
            (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| x.0[i])
                .collect(),
        );
        let right = Word(
            (0..n)
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| x.0[i])
                .collect(),
        );
        let gl = act_on_tensor(g, &left)?;
        let hr = act_on_tensor(h, &right)?;
        for (a, s) in &gl {
            for (b, t) in &hr {
                out.add_term(word_to_permutation(&a.concat(b)), s * t);
            }
        }
    }
    Ok(GroupAlgElem { n, terms: out })
}

/// Composition of endomorphisms, `(σ∘τ)(i) = σ(τ(i))` on basis elements.
pub fn internal_product(g: &GroupAlgElem, h: &GroupAlgElem) -> Result<GroupAlgElem> {
    if g.n != h.n {
        return Err(Error::DegreeMismatch(g.n, h.n));
    }
    let mut out = LinComb::zero();
    for (s, a) in &g.terms {
        for (t, b) in &h.terms {
            out.add_term(s.compose(t), a * b);
        }
    }
    Ok(GroupAlgElem { n: g.n, terms: out })
}

/// `1_{i_1} ∗ … ∗ 1_{i_k}` by iterated convolution.
pub fn identity_blocks(c: &Composition) -> Result<GroupAlgElem> {
    let mut acc = GroupAlgElem::identity(0);
    for &p in &c.0 {
        acc = convolution(&acc, &GroupAlgElem::identity(p))?;
    }
    Ok(acc)
}

/// `log_*(Id)` in degree `n`: `Σ_k (-1)^{k-1}/k Σ 1_{i_1} ∗ … ∗ 1_{i_k}`
/// over compositions of `n` into `k` parts.
pub fn log_identity_oracle(n: usize) -> Result<GroupAlgElem> {
    check_degree(n)?;
    let comps = compositions(n);
    let parts = par::try_map(&comps, |c| {
        let k = c.len();
        Ok(identity_blocks(&Composition(c.clone()))?
            .scale(&(Scalar::sign(k - 1) * Scalar::recip_int(k as i64))))
    })?;
    parts
        .into_iter()
        .try_fold(GroupAlgElem::zero(n), |acc, x| acc.add(&x))
}

/// Which descent basis a [`DescElem`] is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DescBasis {
    /// `De_{=S}`.
    Equal,
    /// `De_S = 1_{i_1} ∗ … ∗ 1_{i_k}`.
    Subset,
}

/// An element of the degree-`n` descent algebra, indexed by compositions of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescElem {
    pub n: usize,
    pub basis: DescBasis,
    pub terms: LinComb<Composition>,
}

impl DescElem {
    /// Reads a group algebra element as a combination of `De_{=S}`; fails if
    /// the coefficient is not constant on descent classes.
    pub fn from_group_alg(g: &GroupAlgElem) -> Result<Self> {
        check_degree(g.n)?;
        let mut terms = LinComb::zero();
        let mut class_coeff: std::collections::BTreeMap<BTreeSet<usize>, Scalar> =
            Default::default();
        for p in Permutation::all(g.n) {
            let d = p.descent_set();
            let c = g.coeff(&p);
            match class_coeff.get(&d) {
                Some(prev) if *prev != c => {
                    return Err(Error::Invalid(
                        "element is not in the descent algebra".into(),
                    ))
                }
                Some(_) => {}
                None => {
                    class_coeff.insert(d, c);
                }
            }
        }
        for (d, c) in class_coeff {
            let mut s = d;
            if g.n > 0 {
                s.insert(g.n);
            }
            terms.add_term(Composition::from_set(g.n, &s)?, c);
        }
        Ok(DescElem {
            n: g.n,
            basis: DescBasis::Equal,
            terms,
        })
    }

    pub fn to_group_alg(&self) -> Result<GroupAlgElem> {
        let mut out = GroupAlgElem::zero(self.n);
        for (c, a) in &self.terms {
            let s = c.to_set();
            let base = match self.basis {
                DescBasis::Equal => de_equal(self.n, &s)?,
                DescBasis::Subset => de_subset(self.n, &s)?,
            };
            out = out.add(&base.scale(a))?;
        }
        Ok(out)
    }

    /// Change of basis by Möbius inversion on subsets containing `n`:
    /// `De_S = Σ_{T ⊆ S} De_{=T}` and `De_{=S} = Σ_{T ⊆ S} (-1)^{|S∖T|} De_T`.
    pub fn to_basis(&self, target: DescBasis) -> Result<Self> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let mut terms = LinComb::zero();
        for (c, a) in &self.terms {
            let s = c.to_set();
            let inner: Vec<usize> = s.iter().copied().filter(|&x| x != self.n).collect();
            for mask in 0u32..1 << inner.len() {
                let mut t: BTreeSet<usize> = inner
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                if self.n > 0 {
                    t.insert(self.n);
                }
                let sign = match target {
                    DescBasis::Equal => Scalar::one(),
                    DescBasis::Subset => Scalar::sign(inner.len() - mask.count_ones() as usize),
                };
                terms.add_term(Composition::from_set(self.n, &t)?, a * sign);
            }
        }
        Ok(DescElem {
            n: self.n,
            basis: target,
            terms,
        })
    }

    /// Coefficient of `1_n` in the composition basis.
    pub fn identity_coefficient(&self) -> Result<Scalar> {
        let sub = self.to_basis(DescBasis::Subset)?;
        Ok(sub.terms.coeff(&Composition(vec![self.n])))
    }
}

/// Coproduct from the group-like rule `Δ(1_n) = Σ 1_k ⊗ 1_{n-k}`, extended
/// multiplicatively over `De_S = 1_{i_1} ∗ … ∗ 1_{i_k}`.
pub fn desc_coproduct(d: &DescElem) -> Result<LinComb<(Composition, Composition)>> {
    let sub = d.to_basis(DescBasis::Subset)?;
    let mut out = LinComb::zero();
    for (c, a) in &sub.terms {
        let mut partial: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new())];
        for &p in &c.0 {
            let mut next = Vec::with_capacity(partial.len() * (p + 1));
            for (l, r) in &partial {
                for k in 0..=p {
                    let (mut l2, mut r2) = (l.clone(), r.clone());
                    if k > 0 {
                        l2.push(k);
                    }
                    if k < p {
                        r2.push(p - k);
                    }
                    next.push((l2, r2));
                }
            }
            partial = next;
        }
        for (l, r) in partial {
            out.add_term((Composition(l), Composition(r)), a.clone());
        }
    }
    Ok(out)
}

/// `true` iff the coproduct is `x ⊗ 1 + 1 ⊗ x`.
pub fn is_primitive(d: &DescElem) -> Result<bool> {
    let cop = desc_coproduct(d)?;
    let sub = d.to_basis(DescBasis::Subset)?;
    let empty = Composition(Vec::new());
    let mut expect = LinComb::zero();
    for (c, a) in &sub.terms {
        expect.add_term((c.clone(), empty.clone()), a.clone());
        expect.add_term((empty.clone(), c.clone()), a.clone());
    }
    Ok(cop == expect)
}

fn lie_bracket(x: &TensorElem, y: &TensorElem) -> TensorElem {
    let mut out = TensorElem::zero();
    for (a, s) in x {
        for (b, t) in y {
            out.add_term(a.concat(b), s * t);
            out.add_term(b.concat(a), -(s * t));
        }
    }
    out
}

/// Largest degree accepted by [`lie_projection_check`].
pub const MAX_LIE_DEGREE: usize = 6;

/// `true` iff `g` applied to `x_1…x_n` lies in the multilinear part of the
/// free Lie algebra, spanned by the brackets
/// `[x_{τ(1)}, [x_{τ(2)}, … [x_{τ(n-1)}, x_n]]]`.
pub fn lie_projection_check(g: &GroupAlgElem) -> Result<bool> {
    let n = g.n;
    if n > MAX_LIE_DEGREE {
        return Err(Error::SizeBound {
            what: "Lie check degree",
            size: n,
            limit: MAX_LIE_DEGREE,
        });
    }
    let image = act_on_tensor(g, &distinct_word(n))?;
    if n <= 1 {
        return Ok(true);
    }
    let mut span = Echelon::new();
    for tau in permutations(n - 1) {
        let mut acc = TensorElem::basis(Word::letter(n as Letter));
        for &i in tau.iter().rev() {
            acc = lie_bracket(&TensorElem::basis(Word::letter(i as Letter + 1)), &acc);
        }
        span.insert(&acc);
    }
    Ok(span.contains(&image))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn descent_sets() {
        assert!(perm("1 2 3").descent_set().is_empty());
        assert_eq!(perm("2 1 3").descent_set(), set(&[1]));
        assert_eq!(perm("3 2 1").descent_set(), set(&[1, 2]));
    }

    #[test]
    fn de_bases() {
        assert_eq!(de_equal(2, &set(&[2])).unwrap().to_string(), "1*1 2");
        assert_eq!(de_equal(2, &set(&[1, 2])).unwrap().to_string(), "1*2 1");
        assert_eq!(
            de_subset(2, &set(&[1, 2])).unwrap().to_string(),
            "1*1 2 + 1*2 1"
        );
        assert!(de_equal(3, &set(&[1])).is_err());
    }

    #[test]
    fn dynkin_small() {
        assert_eq!(dynkin(1).unwrap().to_string(), "1*1");
        assert_eq!(dynkin(2).unwrap().to_string(), "1*1 2 + -1*2 1");
        assert_eq!(
            dynkin(3).unwrap().to_string(),
            "1*1 2 3 + -1*2 1 3 + -1*3 1 2 + 1*3 2 1"
        );
    }

    #[test]
    fn solomon_two() {
        assert_eq!(solomon(1).unwrap().to_string(), "1*1");
        assert_eq!(solomon(2).unwrap().to_string(), "1/2*1 2 + -1/2*2 1");
    }

    #[test]
    fn action() {
        let ab = Word(vec![0, 1]);
        let t = GroupAlgElem::parse("2 1").unwrap();
        assert_eq!(
            act_on_tensor(&t, &ab).unwrap(),
            TensorElem::basis(Word(vec![1, 0]))
        );
        let sum = GroupAlgElem::parse("1 2 + 2 1").unwrap();
        assert_eq!(act_on_tensor(&sum, &ab).unwrap().len(), 2);
        assert!(matches!(
            act_on_tensor(&t, &Word(vec![0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn convolution_small() {
        let one = GroupAlgElem::identity(1);
        assert_eq!(
            convolution(&one, &one).unwrap().to_string(),
            "1*1 2 + 1*2 1"
        );
        let c = convolution(&GroupAlgElem::identity(2), &one).unwrap();
        assert_eq!(c, de_subset(3, &set(&[2, 3])).unwrap());
        let d = dynkin(3).unwrap();
        assert_eq!(convolution(&d, &GroupAlgElem::identity(0)).unwrap(), d);
    }

    #[test]
    fn internal_products() {
        let t = GroupAlgElem::parse("2 1").unwrap();
        assert_eq!(internal_product(&t, &t).unwrap(), GroupAlgElem::identity(2));
        let d = dynkin(2).unwrap();
        assert_eq!(
            internal_product(&d, &d).unwrap(),
            d.scale(&Scalar::from_int(2))
        );
        assert!(internal_product(&d, &dynkin(3).unwrap()).is_err());
    }

    #[test]
    fn coproduct_of_identity() {
        let d = DescElem::from_group_alg(&GroupAlgElem::identity(2)).unwrap();
        let cop = desc_coproduct(&d).unwrap();
        let shown: Vec<String> = cop.keys().map(|(a, b)| format!("{a}|{b}")).collect();
        assert_eq!(shown, vec!["()|(2)", "(1)|(1)", "(2)|()"]);
    }

    #[test]
    fn lie_checks() {
        assert!(lie_projection_check(&solomon(2).unwrap()).unwrap());
        let d3 = dynkin(3).unwrap().scale(&Scalar::recip_int(3));
        assert!(lie_projection_check(&d3).unwrap());
        assert!(!lie_projection_check(&GroupAlgElem::identity(2)).unwrap());
    }
}
