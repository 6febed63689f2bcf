use std::collections::btree_map;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use super::Scalar;

/// A finite linear combination of basis keys with rational coefficients.
///
/// Keys are kept in a `BTreeMap`, so iteration and printing follow the key
/// order. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Scalar::one())
    }

    pub fn term(b: B, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (B, Scalar)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &LinComb<B>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, a) in &other.terms {
            self.add_term(b.clone(), a * c);
        }
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn first_key(&self) -> Option<&B> {
        self.terms.keys().next()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(b, a)| (b.clone(), a * c)).collect(),
        }
    }

    /// Bilinear tensor pairing `x ⊗ y`.
    pub fn tensor<C: Ord + Clone>(&self, other: &LinComb<C>) -> LinComb<(B, C)> {
        let mut out = LinComb::zero();
        for (b, a) in &self.terms {
            for (c, s) in &other.terms {
                out.add_term((b.clone(), c.clone()), a * s);
            }
        }
        out
    }

    /// Linear extension of a map sending each basis key to another basis key.
    pub fn map_basis<C: Ord + Clone, F: FnMut(&B) -> C>(&self, mut f: F) -> LinComb<C> {
        LinComb::from_terms(self.terms.iter().map(|(b, a)| (f(b), a.clone())))
    }

    /// Linear extension of a map sending each basis key to a linear combination.
    pub fn apply<C: Ord + Clone, F: FnMut(&B) -> LinComb<C>>(&self, mut f: F) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, a) in &self.terms {
            out.add_scaled(&f(b), a);
        }
        out
    }

    pub fn try_apply<C, E, F>(&self, mut f: F) -> Result<LinComb<C>, E>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> Result<LinComb<C>, E>,
    {
        let mut out = LinComb::zero();
        for (b, a) in &self.terms {
            out.add_scaled(&f(b)?, a);
        }
        Ok(out)
    }

    /// Keeps only the terms whose key satisfies `pred`.
    pub fn filter<F: FnMut(&B) -> bool>(&self, mut pred: F) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| pred(b))
                .map(|(b, a)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    /// Renders as `c1*b1 + c2*b2`, or `0` for the zero combination.
    pub fn to_text<F: Fn(&B) -> String>(&self, fmt_basis: F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(b, c)| format!("{c}*{}", fmt_basis(b)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<B: Ord + Clone> IntoIterator for LinComb<B> {
    type Item = (B, Scalar);
    type IntoIter = btree_map::IntoIter<B, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, B: Ord + Clone> IntoIterator for &'a LinComb<B> {
    type Item = (&'a B, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, B, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Ord + Clone> FromIterator<(B, Scalar)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        LinComb::from_terms(iter)
    }
}

impl<B: Ord + Clone> AddAssign<&LinComb<B>> for LinComb<B> {
    fn add_assign(&mut self, rhs: &LinComb<B>) {
        for (b, a) in &rhs.terms {
            self.add_term(b.clone(), a.clone());
        }
    }
}

impl<B: Ord + Clone> AddAssign for LinComb<B> {
    fn add_assign(&mut self, rhs: LinComb<B>) {
        for (b, a) in rhs.terms {
            self.add_term(b, a);
        }
    }
}

impl<B: Ord + Clone> SubAssign<&LinComb<B>> for LinComb<B> {
    fn sub_assign(&mut self, rhs: &LinComb<B>) {
        for (b, a) in &rhs.terms {
            self.add_term(b.clone(), -a);
        }
    }
}

impl<B: Ord + Clone> Add<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = LinComb<B>;
    fn add(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self += rhs;
        self
    }
}

impl<B: Ord + Clone> Sub<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = LinComb<B>;
    fn sub(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self -= &rhs;
        self
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        self.scale(&-Scalar::one())
    }
}

impl<B: Ord + Clone> Neg for LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        -&self
    }
}

impl<B: Ord + Clone> Sum for LinComb<B> {
    fn sum<I: Iterator<Item = LinComb<B>>>(iter: I) -> Self {
        iter.fold(LinComb::zero(), |acc, x| acc + x)
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(|b| b.to_string()))
    }
}

impl<B: Ord + Clone + fmt::Debug> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(|b| format!("{b:?}")))
    }
}
