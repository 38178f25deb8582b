use std::collections::BTreeMap;
use std::fmt;

use super::{Coeff, SeriesError, TruncatedSeries, Window};

/// An exact bivariate polynomial, used to state the data of a quadratic surd
/// independently of any truncation window.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<T> {
    terms: BTreeMap<(usize, usize), T>,
}

impl<T: Coeff> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, usize, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (a, b, c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    /// Convenience for integer-coefficient data.
    pub fn from_ints(terms: &[(usize, usize, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(a, b, c)| (a, b, T::from_int(c))))
    }

    fn add_term(&mut self, a: usize, b: usize, c: T) {
        let v = self.terms.remove(&(a, b)).unwrap_or_else(T::zero) + c;
        if !v.is_zero() {
            self.terms.insert((a, b), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(&self) -> T {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            for (&(i, j), d) in &rhs.terms {
                out.add_term(a + i, b + j, c.clone() * d.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&(a, b), v)| (a, b, v.clone() * c.clone())),
        )
    }

    /// Largest monomial `x^a y^b` dividing every term.
    pub fn monomial_content(&self) -> (usize, usize) {
        let a = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        (a, b)
    }

    pub fn shift_down(&self, a: usize, b: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(&(i, j), c)| (i - a, j - b, c.clone())),
        )
    }

    fn leading(&self) -> Option<((usize, usize), &T)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, v))
    }

    /// Exact quotient by `divisor` using lexicographic leading terms. A
    /// single-divisor division leaves remainder zero exactly when the divisor
    /// divides `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let ((da, db), dc) = match divisor.leading() {
            Some((k, c)) => (k, c.clone()),
            None => {
                return Err(SeriesError::NonUnitConstant {
                    constant: "0".into(),
                })
            }
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(((ra, rb), rc)) = rem.leading() {
            if ra < da || rb < db {
                return Err(SeriesError::PolyRemainder {
                    remainder: rem.to_string(),
                });
            }
            let q = Self::from_terms([(ra - da, rb - db, rc.clone() / dc.clone())]);
            rem = rem.sub(&q.mul(divisor));
            quot = quot.add(&q);
        }
        Ok(quot)
    }

    pub fn to_series(&self, window: Window) -> TruncatedSeries<T> {
        TruncatedSeries::from_terms(
            self.terms.iter().map(|(&(a, b), c)| (a, b, c.clone())),
            window,
        )
    }
}

impl<T: Coeff> fmt::Display for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}x^{a}y^{b}")?;
        }
        Ok(())
    }
}
