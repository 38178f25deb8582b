//! Finite continued fractions evaluated bottom-up on a truncation window.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{Coeff, TruncatedSeries, Window};

/// The continued-fraction families in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CfShape {
    /// `T_i = 1/(1 - x + x y^{d_i} - x y^{d_i} T_{i+1})`, tail `0`, `d_i = C(i-1, k-2)`.
    AscentChain,
    /// `B_i = 1 - x/(x y^{d_i} - 1/B_{i+1})`, tail `1`, answer `B_1`.
    DescentChain,
    /// `T_j = 1/(1 - x y^{floor((j-1)/2)} T_{j+1})`, tail `0`.
    DoubledLevels,
    /// `T = 1/(1 - x - x^2 (1 - y) - x^2 y T)`, tail `0`.
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CfSpec {
    pub shape: CfShape,
    /// Pattern length; only read by the two chain shapes.
    pub k: usize,
    pub depth: usize,
}

impl CfSpec {
    pub fn new(shape: CfShape, k: usize, depth: usize) -> Result<Self> {
        let chain = matches!(shape, CfShape::AscentChain | CfShape::DescentChain);
        if chain && k < 2 {
            return Err(Error::InvalidCf(format!(
                "chain shapes need k >= 2, got {k}"
            )));
        }
        if depth == 0 {
            return Err(Error::InvalidCf("depth must be at least 1".into()));
        }
        Ok(CfSpec { shape, k, depth })
    }

    /// Depth needed for exactness on `window`.
    pub fn required_depth(window: Window) -> usize {
        window.x_deg + 4
    }

    /// `C(i-1, k-2)`, saturating.
    pub fn level_exponent(&self, i: usize) -> usize {
        binom_usize(i - 1, self.k - 2)
    }
}

fn binom_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

fn y_power<T: Coeff>(e: usize, window: Window) -> TruncatedSeries<T> {
    if e > window.y_deg {
        TruncatedSeries::zero(window)
    } else {
        TruncatedSeries::monomial(T::one(), 0, e, window)
    }
}

/// Evaluates the truncated fraction from level `depth` up to level 1.
pub fn eval_cf<T: Coeff>(spec: &CfSpec, window: Window) -> Result<TruncatedSeries<T>> {
    let required = CfSpec::required_depth(window);
    if spec.depth < required {
        return Err(Error::DepthTooShallow {
            depth: spec.depth,
            required,
        });
    }
    let one = TruncatedSeries::<T>::one(window);
    let x = TruncatedSeries::<T>::x(window);
    let out = match spec.shape {
        CfShape::AscentChain => {
            let mut t = TruncatedSeries::zero(window);
            for i in (1..=spec.depth).rev() {
                let xyd = &x * &y_power(spec.level_exponent(i), window);
                let den = &one - &x + &xyd - &(&xyd * &t);
                t = den.reciprocal()?;
            }
            t
        }
        CfShape::DescentChain => {
            let mut b = one.clone();
            for i in (1..=spec.depth).rev() {
                let xyd = &x * &y_power(spec.level_exponent(i), window);
                // x y^d - 1/B has constant term -1, so it is invertible
                let inner = &xyd - &b.reciprocal()?;
                b = &one - &(&x * &inner.reciprocal()?);
            }
            b
        }
        CfShape::DoubledLevels => {
            let mut t = TruncatedSeries::zero(window);
            for j in (1..=spec.depth).rev() {
                let level = &x * &y_power((j - 1) / 2, window);
                t = (&one - &(&level * &t)).reciprocal()?;
            }
            t
        }
        CfShape::Uniform => {
            let x2 = &x * &x;
            let y = TruncatedSeries::y(window);
            let base = &one - &x - &(&x2 * &(&one - &y));
            let x2y = &x2 * &y;
            let mut t = TruncatedSeries::zero(window);
            for _ in 0..spec.depth {
                t = (&base - &(&x2y * &t)).reciprocal()?;
            }
            t
        }
    };
    Ok(out)
}
