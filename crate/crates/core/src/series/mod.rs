//! Truncated bivariate power series in `x` (length) and `y` (occurrences).
//!
//! A series keeps every coefficient of `x^a y^b` with `a <= x_deg` and
//! `b <= y_deg`. All exponents are nonnegative and add under
//! multiplication, so dropping the terms outside the window never changes a
//! retained coefficient: ring operations, reciprocals and square roots are
//! exact on the window.

mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use poly::BiPoly;

/// Scalar type a series can be built over: exact rationals for verification,
/// or `f32`/`f64` for quick numeric previews.
pub trait Coeff:
    Num
    + Neg<Output = Self>
    + Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + FromPrimitive
    + Send
    + Sync
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("small integers are representable")
    }
}

impl<T> Coeff for T where
    T: Num
        + Neg<Output = T>
        + Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + FromPrimitive
        + Send
        + Sync
{
}

/// Degree bounds `x^0..=x^x_deg`, `y^0..=y_deg`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub x_deg: usize,
    pub y_deg: usize,
}

impl Window {
    pub const fn new(x_deg: usize, y_deg: usize) -> Self {
        Window { x_deg, y_deg }
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a <= self.x_deg && b <= self.y_deg
    }

    pub fn area(&self) -> usize {
        (self.x_deg + 1) * (self.y_deg + 1)
    }

    pub fn grow(&self, dx: usize, dy: usize) -> Window {
        Window::new(self.x_deg + dx, self.y_deg + dy)
    }

    pub fn min(&self, other: &Window) -> Window {
        Window::new(self.x_deg.min(other.x_deg), self.y_deg.min(other.y_deg))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x^{}, y^{})", self.x_deg, self.y_deg)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("window mismatch: {left} vs {right}")]
    WindowMismatch { left: Window, right: Window },
    #[error("constant term {constant} is not invertible")]
    NonUnitConstant { constant: String },
    #[error("square root needs constant term 1, found {constant}")]
    SqrtConstant { constant: String },
    #[error("not divisible by x^{}y^{}: term x^{}y^{} has coefficient {coeff}", divisor.0, divisor.1, term.0, term.1)]
    NotDivisible {
        divisor: (usize, usize),
        term: (usize, usize),
        coeff: String,
    },
    #[error("coefficient x^{a}y^{b} lies outside window {window}")]
    OutsideWindow { a: usize, b: usize, window: Window },
    #[error("coefficient x^{a}y^{b} = {value} is not a nonnegative integer")]
    NotACount { a: usize, b: usize, value: String },
    #[error("polynomial division left remainder {remainder}")]
    PolyRemainder { remainder: String },
}

/// Dense row-major storage: `coeffs[a * (y_deg + 1) + b]` holds `x^a y^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T> {
    window: Window,
    coeffs: Vec<T>,
}

impl<T: Coeff> TruncatedSeries<T> {
    pub fn zero(window: Window) -> Self {
        TruncatedSeries {
            window,
            coeffs: vec![T::zero(); window.area()],
        }
    }

    pub fn constant(c: T, window: Window) -> Self {
        let mut s = Self::zero(window);
        s.coeffs[0] = c;
        s
    }

    pub fn one(window: Window) -> Self {
        Self::constant(T::one(), window)
    }

    /// `c x^a y^b`, or zero if the monomial lies outside the window.
    pub fn monomial(c: T, a: usize, b: usize, window: Window) -> Self {
        let mut s = Self::zero(window);
        if window.contains(a, b) {
            *s.at_mut(a, b) = c;
        }
        s
    }

    pub fn x(window: Window) -> Self {
        Self::monomial(T::one(), 1, 0, window)
    }

    pub fn y(window: Window) -> Self {
        Self::monomial(T::one(), 0, 1, window)
    }

    /// Builds a series from `(a, b, c)` terms, summing repeats and dropping out-of-window ones.
    pub fn from_terms<I: IntoIterator<Item = (usize, usize, T)>>(terms: I, window: Window) -> Self {
        let mut s = Self::zero(window);
        for (a, b, c) in terms {
            if window.contains(a, b) {
                let slot = s.at_mut(a, b);
                *slot = slot.clone() + c;
            }
        }
        s
    }

    /// Univariate series in `x` (window `y_deg = 0`) from coefficients.
    pub fn from_x_coeffs(coeffs: &[T], x_deg: usize) -> Self {
        Self::from_terms(
            coeffs.iter().cloned().enumerate().map(|(a, c)| (a, 0, c)),
            Window::new(x_deg, 0),
        )
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn idx(&self, a: usize, b: usize) -> usize {
        a * (self.window.y_deg + 1) + b
    }

    fn at(&self, a: usize, b: usize) -> &T {
        &self.coeffs[self.idx(a, b)]
    }

    fn at_mut(&mut self, a: usize, b: usize) -> &mut T {
        let i = self.idx(a, b);
        &mut self.coeffs[i]
    }

    /// Coefficient of `x^a y^b`; errors outside the window so "zero" and "unknown" stay distinct.
    pub fn coefficient(&self, a: usize, b: usize) -> Result<T, SeriesError> {
        if self.window.contains(a, b) {
            Ok(self.at(a, b).clone())
        } else {
            Err(SeriesError::OutsideWindow {
                a,
                b,
                window: self.window,
            })
        }
    }

    pub fn constant_term(&self) -> &T {
        &self.coeffs[0]
    }

    /// Iterates over nonzero terms as `(a, b, &c)` in graded (row-major) order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        let w = self.window.y_deg + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i / w, i % w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_window(&self, rhs: &Self) -> Result<(), SeriesError> {
        if self.window == rhs.window {
            Ok(())
        } else {
            Err(SeriesError::WindowMismatch {
                left: self.window,
                right: rhs.window,
            })
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_window(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(TruncatedSeries {
            window: self.window,
            coeffs,
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_window(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(TruncatedSeries {
            window: self.window,
            coeffs,
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.check_window(rhs)?;
        let Window { x_deg, y_deg } = self.window;
        let mut out = Self::zero(self.window);
        let rhs_terms: Vec<_> = rhs.terms().collect();
        for (a, b, c) in self.terms() {
            for &(i, j, d) in &rhs_terms {
                if a + i > x_deg {
                    // rhs terms come in increasing x order
                    break;
                }
                if b + j <= y_deg {
                    let slot = out.at_mut(a + i, b + j);
                    *slot = slot.clone() + c.clone() * d.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncatedSeries {
            window: self.window,
            coeffs: self.coeffs.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.window);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse on the window via the triangular recurrence
    /// `r[a,b] = -(1/s00) * sum s[i,j] r[a-i,b-j]`, solved in row-major order.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term().clone();
        if c0.is_zero() {
            return Err(SeriesError::NonUnitConstant {
                constant: c0.to_string(),
            });
        }
        let inv0 = T::one() / c0;
        let tail: Vec<_> = self.terms().filter(|&(i, j, _)| (i, j) != (0, 0)).collect();
        let mut out = Self::zero(self.window);
        *out.at_mut(0, 0) = inv0.clone();
        for a in 0..=self.window.x_deg {
            for b in 0..=self.window.y_deg {
                if (a, b) == (0, 0) {
                    continue;
                }
                let mut acc = T::zero();
                for &(i, j, s) in &tail {
                    if i > a {
                        break;
                    }
                    if j <= b {
                        acc = acc + s.clone() * out.at(a - i, b - j).clone();
                    }
                }
                *out.at_mut(a, b) = -(acc * inv0.clone());
            }
        }
        Ok(out)
    }

    /// The square root with constant term 1, solved coefficient by coefficient from `t^2 = s`.
    pub fn sqrt_unit(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::SqrtConstant {
                constant: self.constant_term().to_string(),
            });
        }
        let two = T::from_int(2);
        let mut out = Self::one(self.window);
        for a in 0..=self.window.x_deg {
            for b in 0..=self.window.y_deg {
                if (a, b) == (0, 0) {
                    continue;
                }
                let mut acc = self.at(a, b).clone();
                for i in 0..=a {
                    for j in 0..=b {
                        if (i, j) == (0, 0) || (i, j) == (a, b) {
                            continue;
                        }
                        let l = out.at(i, j);
                        if l.is_zero() {
                            continue;
                        }
                        acc = acc - l.clone() * out.at(a - i, b - j).clone();
                    }
                }
                *out.at_mut(a, b) = acc / two.clone();
            }
        }
        Ok(out)
    }

    /// Divides by `x^a y^b`. The window shrinks by `(a, b)`; any nonzero
    /// term below the divisor is reported as the first offending term.
    pub fn monomial_divide(&self, a: usize, b: usize) -> Result<Self, SeriesError> {
        if let Some((i, j, c)) = self.terms().find(|&(i, j, _)| i < a || j < b) {
            return Err(SeriesError::NotDivisible {
                divisor: (a, b),
                term: (i, j),
                coeff: c.to_string(),
            });
        }
        let window = Window::new(
            self.window.x_deg.saturating_sub(a),
            self.window.y_deg.saturating_sub(b),
        );
        let mut out = Self::zero(window);
        for (i, j, c) in self.terms() {
            if window.contains(i - a, j - b) {
                *out.at_mut(i - a, j - b) = c.clone();
            }
        }
        Ok(out)
    }

    /// `s(x y^j, y)`: maps `x^a y^b` to `x^a y^(b + a j)`, dropping terms that leave the window.
    pub fn substitute_x_scaled(&self, j: usize) -> Self {
        let mut out = Self::zero(self.window);
        for (a, b, c) in self.terms() {
            let nb = b + a * j;
            if nb <= self.window.y_deg {
                *out.at_mut(a, nb) = c.clone();
            }
        }
        out
    }

    /// The same series on a smaller window.
    pub fn restrict(&self, window: Window) -> Result<Self, SeriesError> {
        if window.x_deg > self.window.x_deg || window.y_deg > self.window.y_deg {
            return Err(SeriesError::WindowMismatch {
                left: self.window,
                right: window,
            });
        }
        let mut out = Self::zero(window);
        for a in 0..=window.x_deg {
            for b in 0..=window.y_deg {
                *out.at_mut(a, b) = self.at(a, b).clone();
            }
        }
        Ok(out)
    }

    /// Coefficients of `y^r` as a function of `x`: `[x^0, ..., x^x_deg]`.
    pub fn y_slice(&self, r: usize) -> Result<Vec<T>, SeriesError> {
        if r > self.window.y_deg {
            return Err(SeriesError::OutsideWindow {
                a: 0,
                b: r,
                window: self.window,
            });
        }
        Ok((0..=self.window.x_deg)
            .map(|a| self.at(a, r).clone())
            .collect())
    }

    /// Sum over all retained `y` powers for each `x^a`; equals the `y = 1`
    /// specialisation only when the window holds all the mass.
    pub fn y_totals(&self) -> Vec<T> {
        (0..=self.window.x_deg)
            .map(|a| (0..=self.window.y_deg).fold(T::zero(), |acc, b| acc + self.at(a, b).clone()))
            .collect()
    }
}

impl TruncatedSeries<BigRational> {
    /// Publishes the series as a counting table: every coefficient must be a nonnegative integer.
    pub fn to_counts(&self) -> Result<Vec<Vec<BigUint>>, SeriesError> {
        let Window { x_deg, y_deg } = self.window;
        let mut rows = Vec::with_capacity(x_deg + 1);
        for a in 0..=x_deg {
            let mut row = Vec::with_capacity(y_deg + 1);
            for b in 0..=y_deg {
                let v = self.at(a, b);
                match as_count(v) {
                    Some(n) => row.push(n),
                    None => {
                        return Err(SeriesError::NotACount {
                            a,
                            b,
                            value: v.to_string(),
                        })
                    }
                }
            }
            rows.push(row);
        }
        Ok(rows)
    }
}

/// The nonnegative integer a rational represents, if any.
pub fn as_count(v: &BigRational) -> Option<BigUint> {
    if !v.is_integer() {
        return None;
    }
    let n = v.to_integer();
    match n.sign() {
        Sign::Minus => None,
        _ => n.to_biguint(),
    }
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<T: Coeff> $trait<&TruncatedSeries<T>> for &TruncatedSeries<T> {
            type Output = TruncatedSeries<T>;

            /// Panics on window mismatch; use the `try_` method to get an error instead.
            fn $method(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<T: Coeff> $trait<TruncatedSeries<T>> for TruncatedSeries<T> {
            type Output = TruncatedSeries<T>;

            fn $method(self, rhs: TruncatedSeries<T>) -> TruncatedSeries<T> {
                (&self).$method(&rhs)
            }
        }

        impl<T: Coeff> $trait<&TruncatedSeries<T>> for TruncatedSeries<T> {
            type Output = TruncatedSeries<T>;

            fn $method(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
                (&self).$method(rhs)
            }
        }

        impl<T: Coeff> $trait<TruncatedSeries<T>> for &TruncatedSeries<T> {
            type Output = TruncatedSeries<T>;

            fn $method(self, rhs: TruncatedSeries<T>) -> TruncatedSeries<T> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<T: Coeff> Neg for TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    fn neg(self) -> Self {
        TruncatedSeries {
            window: self.window,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Coeff> fmt::Display for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, b, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            match a {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{a}")?,
            }
            match b {
                0 => {}
                1 => f.write_str("y")?,
                _ => write!(f, "y^{b}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O{}", self.window)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = TruncatedSeries<BigRational>;

    fn q(n: i64) -> BigRational {
        rational(n)
    }

    fn ser(terms: &[(usize, usize, i64)], w: Window) -> S {
        S::from_terms(terms.iter().map(|&(a, b, c)| (a, b, q(c))), w)
    }

    fn xs(s: &S) -> Vec<i64> {
        s.y_slice(0)
            .unwrap()
            .iter()
            .map(|c| c.to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn ring_operations() {
        let w = Window::new(4, 4);
        let a = ser(&[(0, 0, 1), (1, 1, 1)], w);
        let b = ser(&[(0, 0, 1), (1, 1, -1)], w);
        assert_eq!(&a * &b, ser(&[(0, 0, 1), (2, 2, -1)], w));

        let w1 = Window::new(1, 0);
        let x = S::x(w1);
        assert!((&x * &x).is_zero());

        let w = Window::new(5, 0);
        let p = ser(&[(0, 0, 1), (1, 0, 1), (2, 0, 1)], w);
        assert_eq!(xs(&(&p * &p)), vec![1, 2, 3, 2, 1, 0]);
    }

    #[test]
    fn window_mismatch_is_an_error() {
        let a = S::one(Window::new(2, 2));
        let b = S::one(Window::new(2, 3));
        assert!(matches!(
            a.try_mul(&b),
            Err(SeriesError::WindowMismatch { .. })
        ));
        assert!(a.try_add(&b).is_err());
        assert!(a.try_sub(&b).is_err());
    }

    #[test]
    fn reciprocals() {
        let w = Window::new(6, 0);
        let g = ser(&[(0, 0, 1), (1, 0, -1)], w).reciprocal().unwrap();
        assert_eq!(xs(&g), vec![1; 7]);
        let fib = ser(&[(0, 0, 1), (1, 0, -1), (2, 0, -1)], w)
            .reciprocal()
            .unwrap();
        assert_eq!(xs(&fib), vec![1, 1, 2, 3, 5, 8, 13]);
        assert!(matches!(
            S::x(w).reciprocal(),
            Err(SeriesError::NonUnitConstant { .. })
        ));
    }

    #[test]
    fn square_roots() {
        let w = Window::new(6, 0);
        let s = ser(&[(0, 0, 1), (1, 0, -2), (2, 0, 1)], w)
            .sqrt_unit()
            .unwrap();
        assert_eq!(xs(&s), vec![1, -1, 0, 0, 0, 0, 0]);
        let s = ser(&[(0, 0, 1), (1, 0, -4)], w).sqrt_unit().unwrap();
        assert_eq!(xs(&s), vec![1, -2, -2, -4, -10, -28, -84]);
        let s = ser(&[(0, 0, 1), (1, 0, -2), (2, 0, -3)], w)
            .sqrt_unit()
            .unwrap();
        assert_eq!(xs(&s), vec![1, -1, -2, -2, -4, -8, -18]);
        assert!(matches!(
            ser(&[(0, 0, 4)], w).sqrt_unit(),
            Err(SeriesError::SqrtConstant { .. })
        ));
    }

    #[test]
    fn monomial_division() {
        let w = Window::new(4, 4);
        let s = ser(&[(1, 1, 2), (2, 1, 4)], w);
        let d = s.monomial_divide(1, 1).unwrap();
        assert_eq!(d.window(), Window::new(3, 3));
        assert_eq!(d, ser(&[(0, 0, 2), (1, 0, 4)], Window::new(3, 3)));
        let err = ser(&[(2, 0, 1)], w).monomial_divide(1, 1).unwrap_err();
        assert_eq!(
            err,
            SeriesError::NotDivisible {
                divisor: (1, 1),
                term: (2, 0),
                coeff: "1".into()
            }
        );
    }

    #[test]
    fn x_scaled_substitution() {
        let w = Window::new(3, 4);
        assert_eq!(
            ser(&[(0, 0, 1), (1, 0, 1)], w).substitute_x_scaled(2),
            ser(&[(0, 0, 1), (1, 2, 1)], w)
        );
        assert_eq!(
            ser(&[(2, 0, 1)], w).substitute_x_scaled(1),
            ser(&[(2, 2, 1)], w)
        );
        let s = ser(&[(0, 0, 3), (1, 2, 1), (3, 1, -2)], w);
        assert_eq!(s.substitute_x_scaled(0), s);
        // x^3 y^1 under j = 2 exits the window
        assert_eq!(ser(&[(3, 1, 1)], w).substitute_x_scaled(2), S::zero(w));
    }

    #[test]
    fn coefficient_access() {
        let w = Window::new(6, 3);
        let g = ser(&[(0, 0, 1), (1, 0, -1)], w).reciprocal().unwrap();
        assert_eq!(g.coefficient(5, 0).unwrap(), q(1));
        assert_eq!(ser(&[(1, 3, 1)], w).coefficient(1, 3).unwrap(), q(1));
        assert!(matches!(
            g.coefficient(7, 0),
            Err(SeriesError::OutsideWindow { .. })
        ));
    }

    #[test]
    fn counts_reject_fractions_and_negatives() {
        let w = Window::new(1, 0);
        let half = S::from_terms([(1, 0, BigRational::new(1.into(), 2.into()))], w);
        assert!(matches!(
            half.to_counts(),
            Err(SeriesError::NotACount { .. })
        ));
        assert!(ser(&[(0, 0, -1)], w).to_counts().is_err());
        assert_eq!(
            ser(&[(0, 0, 3)], w).to_counts().unwrap(),
            vec![vec![BigUint::from(3u32)], vec![BigUint::from(0u32)]]
        );
    }

    #[test]
    fn generic_over_floats() {
        let w = Window::new(5, 0);
        let s = TruncatedSeries::<f64>::from_terms([(0, 0, 1.0), (1, 0, -1.0), (2, 0, -1.0)], w);
        let r = s.reciprocal().unwrap();
        assert_eq!(r.y_slice(0).unwrap(), vec![1.0, 1.0, 2.0, 3.0, 5.0, 8.0]);
        let t = TruncatedSeries::<f32>::from_terms([(0, 0, 1.0), (1, 0, -4.0)], w);
        assert_eq!(t.sqrt_unit().unwrap().coefficient(3, 0).unwrap(), -4.0);
    }
}
