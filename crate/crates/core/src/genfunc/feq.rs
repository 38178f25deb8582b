//! Algebraic functional equations solved by fixed-point iteration.
//!
//! Every right-hand side has the form `1 + x * (...)`, so the `x^a` row of
//! `Phi(F)` depends only on rows below `a` of `F`: iterating from `F = 1`
//! fixes at least one more row per round.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{Coeff, TruncatedSeries, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Equation {
    /// `F = 1 + xF + xyF(F - 1)`: adjacent ascents.
    AdjacentAscents,
    /// `F = sum_{n<k-1} (xF)^n + (xF)^{k-1}/(1 - xyF)`: consecutive runs `12...k`.
    IncreasingRun(usize),
    /// `F = 1 + x + 2x(F - 1) + xy(F - 1)^2`.
    Consecutive231,
    /// `F = 1 + xF (1 + x - xy + x(y - 1)F)/(1 - xF)`.
    Consecutive213,
    /// `F = 1 + xF + x^2 F/(1 - xF) + x^2 y F(F - 1)/(1 - xF)`.
    Consecutive312,
    /// `F = 1 + xF + sum_{d>=1} x^{d+1} y^{C(d,2)} F prod_{j<d} F(x y^j, y)`.
    OneThenAscent,
    /// `F = 1 + xF/(1 - x F(xy, y))`.
    TwoThenAscent,
    /// `H = 1 + xH + x^2 y H^2`, then `G = H + x^2 (1 - y) H^2`.
    Restricted231,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equation::IncreasingRun(k) => write!(f, "IncreasingRun({k})"),
            other => write!(f, "{other:?}"),
        }
    }
}

struct Ctx<T: Coeff> {
    window: Window,
    one: TruncatedSeries<T>,
    x: TruncatedSeries<T>,
    y: TruncatedSeries<T>,
}

impl<T: Coeff> Ctx<T> {
    fn new(window: Window) -> Self {
        Ctx {
            window,
            one: TruncatedSeries::one(window),
            x: TruncatedSeries::x(window),
            y: TruncatedSeries::y(window),
        }
    }

    fn x_pow(&self, e: usize) -> TruncatedSeries<T> {
        if e > self.window.x_deg {
            TruncatedSeries::zero(self.window)
        } else {
            TruncatedSeries::monomial(T::one(), e, 0, self.window)
        }
    }

    fn y_pow(&self, e: usize) -> TruncatedSeries<T> {
        if e > self.window.y_deg {
            TruncatedSeries::zero(self.window)
        } else {
            TruncatedSeries::monomial(T::one(), 0, e, self.window)
        }
    }

    fn inv(&self, s: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
        Ok(s.reciprocal()?)
    }
}

fn apply<T: Coeff>(eq: Equation, c: &Ctx<T>, f: &TruncatedSeries<T>) -> Result<TruncatedSeries<T>> {
    let (one, x, y) = (&c.one, &c.x, &c.y);
    let xf = x * f;
    let out = match eq {
        Equation::AdjacentAscents => one + &xf + &(x * y * f * &(f - one)),
        Equation::IncreasingRun(k) => {
            let mut acc = TruncatedSeries::zero(c.window);
            let mut p = one.clone();
            for _ in 0..k - 1 {
                acc = acc + &p;
                p = &p * &xf;
            }
            acc + p * c.inv(&(one - &(y * &xf)))?
        }
        Equation::Consecutive231 => {
            let g = f - one;
            one + x + &(x * &g).scale(&T::from_int(2)) + x * y * &g * &g
        }
        Equation::Consecutive213 => {
            let inner = one + x - &(x * y) + &(x * &(y - one) * f);
            one + xf.clone() * inner * c.inv(&(one - &xf))?
        }
        Equation::Consecutive312 => {
            let x2 = c.x_pow(2);
            let r = c.inv(&(one - &xf))?;
            one + &xf + &(&x2 * f * &r) + x2 * y * f * &(f - one) * r
        }
        Equation::OneThenAscent => {
            let mut acc = one + &xf;
            let mut prod = f.clone();
            for d in 1..=c.window.x_deg {
                // prod = F * prod_{j<d} F(x y^j, y)
                prod = &prod * &f.substitute_x_scaled(d - 1);
                let yd = d * (d - 1) / 2;
                if yd > c.window.y_deg || d + 1 > c.window.x_deg {
                    break;
                }
                acc = acc + c.x_pow(d + 1) * c.y_pow(yd) * &prod;
            }
            acc
        }
        Equation::TwoThenAscent => {
            let shifted = x * &f.substitute_x_scaled(1);
            one + xf * c.inv(&(one - &shifted))?
        }
        Equation::Restricted231 => one + &xf + &(c.x_pow(2) * y * f * f),
    };
    Ok(out)
}

/// Rounds performed before the fixed-point check.
pub fn rounds_for(window: Window) -> usize {
    window.x_deg + 2
}

/// Iterates `F <- Phi(F)` from `F = 1` and checks that the result is fixed.
pub fn solve_fixed_point<T: Coeff>(eq: Equation, window: Window) -> Result<TruncatedSeries<T>> {
    if let Equation::IncreasingRun(k) = eq {
        if k < 2 {
            return Err(Error::OutOfScope(format!(
                "increasing runs need k >= 2, got {k}"
            )));
        }
    }
    let c = Ctx::new(window);
    let rounds = rounds_for(window);
    let mut f = c.one.clone();
    for _ in 0..rounds {
        f = apply(eq, &c, &f)?;
    }
    if apply(eq, &c, &f)? != f {
        return Err(Error::NoConvergence {
            name: eq.to_string(),
            rounds,
        });
    }
    if eq == Equation::Restricted231 {
        let x2 = c.x_pow(2);
        return Ok(&f + &(x2 * (&c.one - &c.y) * &f * &f));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn row(s: &TruncatedSeries<BigRational>, n: usize) -> Vec<String> {
        (0..=s.window().y_deg)
            .map(|r| s.coefficient(n, r).unwrap().to_string())
            .collect()
    }

    fn strs(v: &[i64]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    fn solve(eq: Equation, w: Window) -> TruncatedSeries<BigRational> {
        solve_fixed_point(eq, w).unwrap()
    }

    #[test]
    fn adjacent_ascents_rows() {
        let s = solve(Equation::AdjacentAscents, Window::new(5, 4));
        assert_eq!(row(&s, 4), strs(&[1, 6, 6, 1, 0]));
        assert_eq!(s, solve(Equation::IncreasingRun(2), Window::new(5, 4)));
    }

    #[test]
    fn consecutive_patterns_small_rows() {
        let w = Window::new(4, 2);
        let run = crate::enumerate::distribution(&"123".parse().unwrap(), 4);
        let want: Vec<String> = (0..=2u64)
            .map(|r| run.get(&r).map_or("0".into(), ToString::to_string))
            .collect();
        assert_eq!(row(&solve(Equation::IncreasingRun(3), w), 4), want);
        assert_eq!(
            row(&solve(Equation::Consecutive231, w), 4),
            strs(&[8, 6, 0])
        );
        assert_eq!(
            row(&solve(Equation::Consecutive213, w), 3),
            strs(&[4, 1, 0])
        );
        assert_eq!(
            solve(Equation::Consecutive213, Window::new(7, 3)),
            solve(Equation::Consecutive312, Window::new(7, 3))
        );
    }

    #[test]
    fn dashed_patterns_small_rows() {
        let s = solve(Equation::OneThenAscent, Window::new(5, 3));
        let col: Vec<String> = s
            .y_slice(0)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(col, strs(&[1, 1, 2, 4, 9, 21]));
        let s = solve(Equation::TwoThenAscent, Window::new(4, 3));
        assert_eq!(row(&s, 3), strs(&[4, 1, 0, 0]));
    }

    #[test]
    fn restricted_231_rows() {
        let s = solve(Equation::Restricted231, Window::new(5, 2));
        assert_eq!(row(&s, 3), strs(&[3, 1, 0]));
        assert_eq!(row(&s, 4), strs(&[4, 5, 0]));
        assert_eq!(row(&s, 5), strs(&[5, 14, 2]));
    }

    #[test]
    fn float_fixed_point() {
        let s: TruncatedSeries<f64> =
            solve_fixed_point(Equation::Consecutive231, Window::new(6, 0)).unwrap();
        assert_eq!(
            s.y_slice(0).unwrap(),
            vec![1.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0]
        );
    }

    #[test]
    fn run_length_guard() {
        assert!(solve_fixed_point::<f64>(Equation::IncreasingRun(1), Window::new(3, 1)).is_err());
    }
}
