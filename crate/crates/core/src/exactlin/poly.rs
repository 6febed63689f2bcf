use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use super::Scalar;

/// Univariate polynomial in `X` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: BTreeMap<u32, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::monomial(c, 0)
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Poly::monomial(Scalar::one(), 1)
    }

    pub fn monomial(c: Scalar, exp: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term(exp, c);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, Scalar)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with a nonzero coefficient, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> Scalar {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: u32) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, a)| (e + k, a.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        // Horner from the top exponent down.
        let Some(deg) = self.degree() else {
            return Scalar::zero();
        };
        let mut acc = Scalar::zero();
        for e in (0..=deg).rev() {
            acc = acc * t + self.coeff(e);
        }
        acc
    }

    /// `∫_{-1}^{0} p(t) dt`, computed term by term as `c_k (-1)^k / (k+1)`.
    pub fn integrate_unit_interval(&self) -> Scalar {
        self.coeffs
            .iter()
            .map(|(k, c)| c * Scalar::sign(*k as usize) * Scalar::recip_int(i64::from(*k) + 1))
            .sum()
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    /// Descending exponents, e.g. `6X^2+6X+1`, `X^2-2X`, `1/2X`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = if c.is_negative() { -c } else { c.clone() };
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{mag}X")?,
                (_, true) => write!(f, "X^{e}")?,
                (_, false) => write!(f, "{mag}X^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
