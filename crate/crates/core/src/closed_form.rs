//! Explicit count formulas and Chebyshev-type rational series.
//!
//! The polynomials `u_j(x)` satisfy `u_0 = u_1 = 1`, `u_j = u_{j-1} - x u_{j-2}`
//! and relate to Chebyshev polynomials of the second kind through
//! `U_j(1/(2 sqrt x)) = x^{-j/2} u_j(x)`. Substituting that into a rational
//! expression in `U_j(1/(2 sqrt x))` clears every square root of `x`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfunc::cf::{eval_cf, CfShape, CfSpec};
use crate::series::{Coeff, SeriesError, TruncatedSeries, Window};

/// `C(n, k)`, zero when `k < 0`, `n < 0` or `n < k`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || n < k {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n as i64, n as i64) / BigUint::from(n + 1)
}

/// Motzkin numbers, by the convolution recurrence.
pub fn motzkin(n_max: usize) -> Vec<BigUint> {
    let mut m: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let v = if n < 2 {
            BigUint::one()
        } else {
            let mut acc = m[n - 1].clone();
            for i in 0..=n - 2 {
                acc += &m[i] * &m[n - 2 - i];
            }
            acc
        };
        m.push(v);
    }
    m
}

/// Avoiders of length `n` with exactly `r` adjacent ascents (Narayana numbers).
///
/// `(r+1)/(n(n-r)) C(n, r+1)^2` for `1 <= r <= n-1`; the formula divides by
/// `n - r` and misses `r = 0`, where only the decreasing permutation counts.
pub fn f12_count(n: u64, r: u64) -> BigUint {
    if r == 0 {
        return BigUint::one();
    }
    if r >= n {
        return BigUint::zero();
    }
    let c = binomial(n as i64, r as i64 + 1);
    let num = BigUint::from(r + 1) * &c * &c;
    let den = BigUint::from(n * (n - r));
    let (q, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    q
}

/// Avoiders of length `n` with exactly `r` occurrences of the consecutive pattern 231:
/// `2^(n-2r-1)/(r+1) C(n-1, 2r) C(2r, r)`.
pub fn f231_count(n: u64, r: u64) -> BigUint {
    if n == 0 {
        return if r == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    if 2 * r > n - 1 {
        return BigUint::zero();
    }
    let pow = BigUint::one() << (n - 2 * r - 1) as usize;
    pow * binomial(n as i64 - 1, 2 * r as i64) * catalan(r)
}

/// The printed count for permutations avoiding 1-3-2 and consecutive 123 with
/// `r` consecutive 231s. Verification only: it disagrees with enumeration.
pub fn g123_231_printed(n: u64, r: u64) -> BigUint {
    if r == 0 {
        return if n == 0 {
            BigUint::one()
        } else {
            BigUint::from(n)
        };
    }
    let (n, r) = (n as i64, r as i64);
    catalan(r as u64) * (binomial(n, 2 * r) + binomial(n - 1, 2 * r + 1))
        + catalan(r as u64 - 1) * binomial(n - 2, 2 * r - 1)
}

/// `u_j(x)` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub index: usize,
    pub coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn to_series<T: Coeff>(&self, x_deg: usize) -> TruncatedSeries<T> {
        TruncatedSeries::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(a, c)| (a, 0, big_to_coeff(c))),
            Window::new(x_deg, 0),
        )
    }
}

pub(crate) fn big_to_coeff<T: Coeff>(v: &BigInt) -> T {
    match i64::try_from(v) {
        Ok(small) => T::from_int(small),
        Err(_) => T::from_str_radix(&v.to_string(), 10)
            .unwrap_or_else(|_| panic!("coefficient {v} not representable")),
    }
}

/// Polynomial product, used by the determinant identity checks.
pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn u_poly(j: usize) -> UPoly {
    let mut prev = vec![BigInt::one()];
    let mut cur = vec![BigInt::one()];
    for _ in 1..j {
        let mut next = cur.clone();
        next.resize(cur.len().max(prev.len() + 1), BigInt::zero());
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    while cur.len() > 1 && cur.last().is_some_and(Zero::is_zero) {
        cur.pop();
    }
    UPoly {
        index: j,
        coeffs: cur,
    }
}

/// `R_j`: iterate `T <- 1/(1 - x T)` `j` times from `T = 0`.
pub fn r_series<T: Coeff>(j: usize, x_deg: usize) -> TruncatedSeries<T> {
    let w = Window::new(x_deg, 0);
    let one = TruncatedSeries::one(w);
    let x = TruncatedSeries::x(w);
    let mut t = TruncatedSeries::zero(w);
    for _ in 0..j {
        t = (&one - &(&x * &t))
            .reciprocal()
            .expect("constant term is 1");
    }
    t
}

/// Generating function of avoiders with exactly `r` occurrences of
/// `12-3-...-k`, for `0 <= r <= k-2`:
/// `u_{k-1}/u_k` at `r = 0`, else `x^{k+2r-2} u_{k-2}^{r-1} / ((1-x)^r u_k^{r+1})`.
pub fn f12k_r_series<T: Coeff>(k: usize, r: usize, x_deg: usize) -> Result<TruncatedSeries<T>> {
    if k < 3 || r > k - 2 {
        return Err(Error::OutOfScope(format!(
            "closed form needs k >= 3 and r <= k - 2 (k = {k}, r = {r})"
        )));
    }
    let w = Window::new(x_deg, 0);
    let uk = u_poly(k).to_series::<T>(x_deg);
    if r == 0 {
        return Ok(&u_poly(k - 1).to_series::<T>(x_deg) * &uk.reciprocal()?);
    }
    let one = TruncatedSeries::<T>::one(w);
    let one_minus_x = &one - &TruncatedSeries::x(w);
    let num = TruncatedSeries::monomial(T::one(), k + 2 * r - 2, 0, w)
        * u_poly(k - 2).to_series::<T>(x_deg).pow(r as u32 - 1);
    let den = one_minus_x.pow(r as u32) * uk.pow(r as u32 + 1);
    Ok(num * den.reciprocal()?)
}

fn motzkin_disc<T: Coeff>(w: Window) -> TruncatedSeries<T> {
    TruncatedSeries::from_terms(
        [
            (0, 0, T::one()),
            (1, 0, T::from_int(-2)),
            (2, 0, T::from_int(-3)),
        ],
        w,
    )
}

fn f1_23_r3_numerator<T: Coeff>(w: Window) -> TruncatedSeries<T> {
    let p: [i64; 8] = [-1, 5, 1, -25, -7, 41, 43, 11];
    TruncatedSeries::from_terms(
        p.iter().enumerate().map(|(a, &c)| (a, 0, T::from_int(c))),
        w,
    )
}

/// The four printed series for avoiders with exactly `r` occurrences of `1-23`,
/// expanded from the discriminant `1 - 2x - 3x^2`.
///
/// `r = 3` is evaluated verbatim; it is not a counting series (see
/// [`f1_23_r3_observed`]).
pub fn f1_23_r_series<T: Coeff>(r: usize, x_deg: usize) -> Result<TruncatedSeries<T>> {
    let w2 = Window::new(x_deg + 2, 0);
    let w = Window::new(x_deg, 0);
    let half = T::one() / T::from_int(2);
    let one2 = TruncatedSeries::<T>::one(w2);
    let x2 = TruncatedSeries::<T>::x(w2);
    let root = motzkin_disc::<T>(w2).sqrt_unit()?;
    let inv_root = root.reciprocal()?;
    let out = match r {
        0 => (&one2 - &x2 - &root)
            .monomial_divide(2, 0)?
            .restrict(w)?
            .scale(&half),
        1 => {
            let lead = TruncatedSeries::from_terms(
                [(0, 0, T::one()), (1, 0, T::from_int(-2)), (2, 0, -T::one())],
                w2,
            );
            let num = (&x2 - &one2) + lead * &inv_root;
            num.monomial_divide(1, 0)?.restrict(w)?.scale(&half)
        }
        2 => TruncatedSeries::monomial(T::one(), 4, 0, w2) * inv_root.pow(3),
        3 => {
            let x_sq = TruncatedSeries::monomial(T::one(), 2, 0, w2);
            (x_sq - one2) + f1_23_r3_numerator::<T>(w2) * inv_root.pow(5)
        }
        _ => {
            return Err(Error::OutOfScope(format!(
                "printed 1-23 slices exist for r <= 3, not r = {r}"
            )))
        }
    };
    Ok(out.restrict(w)?)
}

/// A form of the `r = 3` slice for `1-23` that matches enumeration:
/// `(x^2 - 1)/2 - P(x) / (2 (1 - 2x - 3x^2)^{5/2})` with the printed numerator `P`.
pub fn f1_23_r3_observed<T: Coeff>(x_deg: usize) -> Result<TruncatedSeries<T>> {
    let w = Window::new(x_deg, 0);
    let half = T::one() / T::from_int(2);
    let inv_root = motzkin_disc::<T>(w).sqrt_unit()?.reciprocal()?;
    let x_sq = TruncatedSeries::monomial(T::one(), 2, 0, w);
    let tail = f1_23_r3_numerator::<T>(w) * inv_root.pow(5);
    Ok((x_sq - TruncatedSeries::one(w) - tail).scale(&half))
}

/// One candidate closed form compared against the ground-truth slice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub label: String,
    pub agrees: bool,
    /// `(n, candidate, truth)` at the first differing coefficient.
    pub first_mismatch: Option<(usize, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisReport {
    pub k: usize,
    pub r: usize,
    pub x_deg: usize,
    /// `y^r` slice of the descent continued fraction.
    pub truth: Vec<String>,
    pub candidates: Vec<Candidate>,
}

impl HypothesisReport {
    pub fn any_agrees(&self) -> bool {
        self.candidates.iter().any(|c| c.agrees)
    }
}

fn compare_candidate(
    label: String,
    cand: &TruncatedSeries<BigRational>,
    truth: &[BigRational],
) -> Candidate {
    let coeffs = cand.y_slice(0).expect("univariate");
    let first_mismatch = coeffs
        .iter()
        .zip(truth)
        .enumerate()
        .find(|(_, (c, t))| c != t)
        .map(|(n, (c, t))| (n, c.to_string(), t.to_string()));
    Candidate {
        label,
        agrees: first_mismatch.is_none(),
        first_mismatch,
    }
}

/// Compares readings of the printed `21-3-...-k` closed form with the
/// descent continued fraction. Never asserts the printed form.
///
/// For `r >= 1` the printed x-power `(3r + 2k - 3)/2` is fractional when `r`
/// is even; both neighbouring integer powers are tried. The
/// `x^{k+r-1} u_{k-1}^{r-1} / u_k^{r+1}` candidate is an observed fit.
pub fn f21k_hypothesis(k: usize, r: usize, x_deg: usize) -> Result<HypothesisReport> {
    if k < 3 || r > k - 2 {
        return Err(Error::OutOfScope(format!(
            "hypothesis covers k >= 3 and r <= k - 2 (k = {k}, r = {r})"
        )));
    }
    let window = Window::new(x_deg, r);
    let cf: TruncatedSeries<BigRational> =
        eval_cf(&CfSpec::new(CfShape::DescentChain, k, x_deg + 4)?, window)?;
    let truth = cf.y_slice(r)?;
    let w = Window::new(x_deg, 0);
    let u = |j: usize| u_poly(j).to_series::<BigRational>(x_deg);
    let x_pow = |e: usize| TruncatedSeries::monomial(BigRational::one(), e, 0, w);
    let inv_uk = |p: u32| -> std::result::Result<_, SeriesError> { u(k).pow(p).reciprocal() };

    let mut candidates = Vec::new();
    if r == 0 {
        let c = u(k - 1) * inv_uk(1)?;
        candidates.push(compare_candidate("u_{k-1}/u_k".into(), &c, &truth));
    } else {
        let twice = 3 * r + 2 * k - 3;
        let exps: Vec<usize> = if twice.is_multiple_of(2) {
            vec![twice / 2]
        } else {
            vec![twice / 2, twice / 2 + 1]
        };
        for e in exps {
            let c = x_pow(e) * u(k - 2).pow(r as u32 - 1) * inv_uk(r as u32 + 1)?;
            candidates.push(compare_candidate(
                format!("printed reading: x^{e} u_{{k-2}}^{{r-1}} / u_k^{{r+1}}"),
                &c,
                &truth,
            ));
        }
        let c = x_pow(k + r - 1) * u(k - 1).pow(r as u32 - 1) * inv_uk(r as u32 + 1)?;
        candidates.push(compare_candidate(
            format!("observed: x^{} u_{{k-1}}^{{r-1}} / u_k^{{r+1}}", k + r - 1),
            &c,
            &truth,
        ));
    }
    Ok(HypothesisReport {
        k,
        r,
        x_deg,
        truth: truth.iter().map(ToString::to_string).collect(),
        candidates,
    })
}
