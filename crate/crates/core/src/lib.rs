//! Counting 1-3-2-avoiding permutations by occurrences of generalized patterns.
//!
//! Counts come from three independent sources that are checked against each
//! other: brute-force enumeration, exact series expansions of generating
//! functions, and explicit formulas.

pub mod closed_form;
pub mod enumerate;
pub mod error;
pub mod genfunc;
pub mod perm;
pub mod series;
pub mod verify;

use num_rational::BigRational;

pub use enumerate::{table, CountTable, EnumerationError, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use genfunc::{gf_series, gf_series_as, GfName, Route};
pub use perm::{
    avoids, count_occurrences, parse_pattern, GeneralizedPattern, PatternError, Permutation,
};
pub use series::{BiPoly, Coeff, SeriesError, TruncatedSeries, Window};

/// Exact series, the default for every check.
pub type Series = TruncatedSeries<BigRational>;
pub type SeriesF64 = TruncatedSeries<f64>;
pub type SeriesF32 = TruncatedSeries<f32>;
