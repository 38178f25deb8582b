//! Quadratic surds `(A ± sqrt(D)) / den` expanded as power series.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{BiPoly, Coeff, TruncatedSeries, Window};

#[derive(Clone, Debug, PartialEq)]
pub struct Surd<T> {
    pub rational_part: BiPoly<T>,
    pub discriminant: BiPoly<T>,
    pub denominator: BiPoly<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign<T: Coeff>(self) -> T {
        match self {
            Branch::Plus => T::one(),
            Branch::Minus => -T::one(),
        }
    }
}

impl<T: Coeff> Surd<T> {
    pub fn from_ints(
        rational_part: &[(usize, usize, i64)],
        discriminant: &[(usize, usize, i64)],
        denominator: &[(usize, usize, i64)],
    ) -> Self {
        Surd {
            rational_part: BiPoly::from_ints(rational_part),
            discriminant: BiPoly::from_ints(discriminant),
            denominator: BiPoly::from_ints(denominator),
        }
    }
}

/// Expands the branch of `(A ± sqrt(D)) / den` that is a power series with
/// constant term 1.
///
/// When `den = x^a y^b u` with `u(0,0) != 0`, the numerator is expanded on a
/// window grown by `(a, b)`, divided by the monomial and multiplied by `1/u`;
/// a branch qualifies when the division is exact. Otherwise the surd is
/// rewritten as `q / (A ∓ sqrt(D))` with `q = (A^2 - D)/den`, which must be an
/// exact polynomial quotient.
pub fn expand_surd<T: Coeff>(
    surd: &Surd<T>,
    window: Window,
) -> Result<(TruncatedSeries<T>, Branch)> {
    if surd.denominator.is_zero() {
        return Err(Error::NoSurdBranch {
            detail: "zero denominator".into(),
        });
    }
    let (a, b) = surd.denominator.monomial_content();
    let unit = surd.denominator.shift_down(a, b);
    let mut found = Vec::new();
    let mut reasons = Vec::new();
    if !unit.constant().is_zero() {
        let grown = window.grow(a, b);
        let root = surd.discriminant.to_series(grown).sqrt_unit()?;
        let ratl = surd.rational_part.to_series(grown);
        let inv_unit = unit.to_series(window).reciprocal()?;
        for branch in [Branch::Plus, Branch::Minus] {
            let num = &ratl + &root.scale(&branch.sign());
            match num.monomial_divide(a, b) {
                Ok(q) => {
                    let f = q * &inv_unit;
                    if f.constant_term().is_one() {
                        found.push((f, branch));
                    } else {
                        reasons.push(format!("{branch:?}: constant term {}", f.constant_term()));
                    }
                }
                Err(e) => reasons.push(format!("{branch:?}: {e}")),
            }
        }
    } else {
        let a2 = surd.rational_part.mul(&surd.rational_part);
        let q = a2.sub(&surd.discriminant).exact_div(&surd.denominator)?;
        let root = surd.discriminant.to_series(window).sqrt_unit()?;
        let ratl = surd.rational_part.to_series(window);
        let q = q.to_series(window);
        for branch in [Branch::Plus, Branch::Minus] {
            // (A + s sqrt D)/den = q / (A - s sqrt D)
            let conj = &ratl - &root.scale(&branch.sign());
            match conj.reciprocal() {
                Ok(inv) => {
                    let f = &q * &inv;
                    if f.constant_term().is_one() {
                        found.push((f, branch));
                    } else {
                        reasons.push(format!("{branch:?}: constant term {}", f.constant_term()));
                    }
                }
                Err(e) => reasons.push(format!("{branch:?}: {e}")),
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one branch")),
        0 => Err(Error::NoSurdBranch {
            detail: reasons.join("; "),
        }),
        _ => Err(Error::AmbiguousSurd),
    }
}
