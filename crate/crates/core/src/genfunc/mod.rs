//! The catalog of named generating functions and the routes that compute them.
//!
//! Every name denotes a bivariate series `F(x, y) = sum f(n, r) x^n y^r` where
//! `f(n, r)` counts 1-3-2-avoiders of length `n` with exactly `r` occurrences of
//! the subject pattern (and, for the `G` names, avoiding a second pattern).

pub mod cf;
pub mod feq;
pub mod surd;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::closed_form::{big_to_coeff, f12_count, f12k_r_series, f1_23_r_series, f231_count};
use crate::error::{Error, Result};
use crate::perm::GeneralizedPattern;
use crate::series::{Coeff, TruncatedSeries, Window};

pub use cf::{eval_cf, CfShape, CfSpec};
pub use feq::{solve_fixed_point, Equation};
pub use surd::{expand_surd, Branch, Surd};

/// Largest pattern length accepted by the parametric names.
pub const MAX_K: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Route {
    Cf,
    Feq,
    Surd,
    Closed,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Cf, Route::Feq, Route::Surd, Route::Closed];
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Cf => "cf",
            Route::Feq => "feq",
            Route::Surd => "surd",
            Route::Closed => "closed",
        })
    }
}

impl FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cf" => Ok(Route::Cf),
            "feq" => Ok(Route::Feq),
            "surd" => Ok(Route::Surd),
            "closed" => Ok(Route::Closed),
            _ => Err(format!(
                "unknown route {s:?}; expected cf, feq, surd or closed"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GfName {
    /// `12-3-...-k`
    F12k(usize),
    /// `21-3-...-k`
    F21k(usize),
    /// consecutive `12...k`
    F12dots(usize),
    /// consecutive `k...21`
    Fkdots21(usize),
    F123,
    F321,
    F231,
    F213,
    F312,
    F1Dash23,
    F2Dash13,
    /// avoid `123`, count `213`
    G123Avoid213,
    /// avoid `321`, count `312`
    G321Avoid312,
    /// avoid `123`, count `231`
    G123Avoid231,
    /// avoid `213`, count `123`
    G213Avoid123,
    /// avoid `312`, count `321`
    G312Avoid321,
}

const PARAMETRIC: [&str; 4] = ["F12k", "F21k", "F12dots", "Fkdots21"];
const FIXED: [(&str, GfName); 12] = [
    ("F123", GfName::F123),
    ("F321", GfName::F321),
    ("F231", GfName::F231),
    ("F213", GfName::F213),
    ("F312", GfName::F312),
    ("F1_23", GfName::F1Dash23),
    ("F2_13", GfName::F2Dash13),
    ("G123_213", GfName::G123Avoid213),
    ("G321_312", GfName::G321Avoid312),
    ("G123_231", GfName::G123Avoid231),
    ("G213_123", GfName::G213Avoid123),
    ("G312_321", GfName::G312Avoid321),
];

fn known_names() -> String {
    let mut v: Vec<String> = PARAMETRIC.iter().map(|p| format!("{p}(k)")).collect();
    v.push("F12".into());
    v.push("F21".into());
    v.extend(FIXED.iter().map(|(s, _)| s.to_string()));
    v.join(", ")
}

impl GfName {
    /// Parses a catalog name. Parametric names take `k` either inline
    /// (`F12k(3)`, `F12k3`) or from `k`; `F12` and `F21` mean `k = 2`.
    pub fn parse(text: &str, k: Option<usize>) -> Result<Self> {
        let t = text.trim();
        let unknown = || Error::UnknownName {
            name: text.to_string(),
            known: known_names(),
        };
        match t {
            "F12" => return Self::with_k("F12k", k.unwrap_or(2)),
            "F21" => return Self::with_k("F21k", k.unwrap_or(2)),
            "F1-23" => return Ok(GfName::F1Dash23),
            "F2-13" => return Ok(GfName::F2Dash13),
            _ => {}
        }
        if let Some(&(_, n)) = FIXED.iter().find(|(s, _)| *s == t) {
            return Ok(n);
        }
        for p in PARAMETRIC {
            if let Some(rest) = t.strip_prefix(p) {
                let inner = rest.trim_start_matches('(').trim_end_matches(')');
                let inline = if inner.is_empty() {
                    None
                } else {
                    Some(inner.parse::<usize>().map_err(|_| unknown())?)
                };
                let k = match (inline, k) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(Error::OutOfScope(format!("{t} conflicts with k = {b}")))
                    }
                    (Some(a), _) | (None, Some(a)) => a,
                    (None, None) => {
                        return Err(Error::OutOfScope(format!("{p} needs a value for k")))
                    }
                };
                return Self::with_k(p, k);
            }
        }
        Err(unknown())
    }

    fn with_k(prefix: &str, k: usize) -> Result<Self> {
        if !(2..=MAX_K).contains(&k) {
            return Err(Error::OutOfScope(format!(
                "{prefix} needs 2 <= k <= {MAX_K}, got {k}"
            )));
        }
        Ok(match prefix {
            "F12k" => GfName::F12k(k),
            "F21k" => GfName::F21k(k),
            "F12dots" => GfName::F12dots(k),
            _ => GfName::Fkdots21(k),
        })
    }

    /// The name whose routes compute this series. Reversal-complement
    /// preserves the 1-3-2 class, so mirrored subjects share one series.
    pub fn canonical(self) -> GfName {
        match self {
            GfName::Fkdots21(k) => GfName::F12dots(k),
            GfName::F321 => GfName::F123,
            GfName::G321Avoid312 => GfName::G123Avoid213,
            GfName::G312Avoid321 => GfName::G213Avoid123,
            other => other,
        }
    }

    pub fn alias_of(self) -> Option<GfName> {
        let c = self.canonical();
        (c != self).then_some(c)
    }

    /// The counted pattern, as pattern text.
    pub fn pattern_text(self) -> String {
        let dashed = |head: &str, k: usize| {
            let mut s = head.to_string();
            for j in 3..=k {
                s.push('-');
                s.push_str(&j.to_string());
            }
            s
        };
        match self {
            GfName::F12k(k) => dashed("12", k),
            GfName::F21k(k) => dashed("21", k),
            GfName::F12dots(k) => (1..=k).map(|j| j.to_string()).collect(),
            GfName::Fkdots21(k) => (1..=k).rev().map(|j| j.to_string()).collect(),
            GfName::F123 | GfName::G213Avoid123 => "123".into(),
            GfName::F321 | GfName::G312Avoid321 => "321".into(),
            GfName::F231 | GfName::G123Avoid231 => "231".into(),
            GfName::F213 | GfName::G123Avoid213 => "213".into(),
            GfName::F312 | GfName::G321Avoid312 => "312".into(),
            GfName::F1Dash23 => "1-23".into(),
            GfName::F2Dash13 => "2-13".into(),
        }
    }

    /// The avoided second pattern, for the restricted names.
    pub fn restriction_text(self) -> Option<&'static str> {
        match self {
            GfName::G123Avoid213 | GfName::G123Avoid231 => Some("123"),
            GfName::G321Avoid312 => Some("321"),
            GfName::G213Avoid123 => Some("213"),
            GfName::G312Avoid321 => Some("312"),
            _ => None,
        }
    }

    pub fn pattern(self) -> GeneralizedPattern {
        GeneralizedPattern::parse(&self.pattern_text()).expect("catalog patterns are valid")
    }

    pub fn restriction(self) -> Option<GeneralizedPattern> {
        self.restriction_text()
            .map(|t| GeneralizedPattern::parse(t).expect("catalog patterns are valid"))
    }

    pub fn routes(self) -> Vec<Route> {
        use Route::*;
        match self.canonical() {
            GfName::F12k(2) | GfName::F21k(2) => vec![Cf, Feq, Surd, Closed],
            GfName::F12k(_) | GfName::F21k(_) => vec![Cf, Closed],
            GfName::F12dots(_) | GfName::G123Avoid231 => vec![Feq],
            GfName::F123 | GfName::F213 | GfName::F312 => vec![Feq, Surd],
            GfName::F231 => vec![Feq, Surd, Closed],
            GfName::F1Dash23 => vec![Feq, Closed],
            GfName::F2Dash13 => vec![Cf, Feq],
            GfName::G123Avoid213 => vec![Cf, Surd],
            GfName::G213Avoid123 => vec![Surd],
            _ => unreachable!("aliases resolve to canonical names"),
        }
    }

    /// Largest `r` the closed route covers, if it only covers some slices.
    pub fn closed_r_limit(self) -> Option<usize> {
        match self.canonical() {
            GfName::F12k(k) if k >= 3 => Some(k - 2),
            GfName::F21k(k) if k >= 3 => Some(0),
            GfName::F1Dash23 => Some(2),
            _ => None,
        }
    }

    /// Window on which `route` is computed when `window` is requested.
    pub fn route_window(self, route: Route, window: Window) -> Window {
        match (route, self.closed_r_limit()) {
            (Route::Closed, Some(r)) => Window::new(window.x_deg, window.y_deg.min(r)),
            _ => window,
        }
    }

    /// Every catalog name, with parametric families expanded for `k` in `ks`.
    pub fn all(ks: &[usize]) -> Vec<GfName> {
        let mut out = Vec::new();
        for &k in ks {
            out.push(GfName::F12k(k));
            out.push(GfName::F21k(k));
        }
        for &k in ks {
            out.push(GfName::F12dots(k));
            out.push(GfName::Fkdots21(k));
        }
        out.extend(FIXED.iter().map(|&(_, n)| n));
        out
    }

    pub fn description(self) -> String {
        let counted = self.pattern_text();
        match self.restriction_text() {
            Some(tau) => format!("avoiders also avoiding {tau}, by occurrences of {counted}"),
            None => format!("avoiders by occurrences of {counted}"),
        }
    }
}

impl fmt::Display for GfName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfName::F12k(k) => write!(f, "F12k({k})"),
            GfName::F21k(k) => write!(f, "F21k({k})"),
            GfName::F12dots(k) => write!(f, "F12dots({k})"),
            GfName::Fkdots21(k) => write!(f, "Fkdots21({k})"),
            other => {
                let (s, _) = FIXED.iter().find(|(_, n)| n == other).expect("fixed name");
                f.write_str(s)
            }
        }
    }
}

/// Row of the catalog listing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub pattern: String,
    pub restriction: Option<String>,
    pub routes: Vec<Route>,
    pub alias_of: Option<String>,
    pub closed_r_limit: Option<usize>,
    pub description: String,
}

/// Every catalog entry, parametric families shown for `k` in `ks`.
pub fn catalog(ks: &[usize]) -> Vec<CatalogEntry> {
    GfName::all(ks)
        .into_iter()
        .map(|n| CatalogEntry {
            name: n.to_string(),
            pattern: n.pattern_text(),
            restriction: n.restriction_text().map(str::to_string),
            routes: n.routes(),
            alias_of: n.alias_of().map(|c| c.to_string()),
            closed_r_limit: n.closed_r_limit(),
            description: n.description(),
        })
        .collect()
}

/// The surd for a canonical name, if it has one.
pub fn surd_for<T: Coeff>(name: GfName) -> Option<Surd<T>> {
    let s = match name.canonical() {
        GfName::F12k(2) | GfName::F21k(2) => Surd::from_ints(
            &[(0, 0, 1), (1, 0, -1), (1, 1, 1)],
            &[
                (0, 0, 1),
                (1, 0, -2),
                (2, 0, 1),
                (1, 1, -2),
                (2, 1, -2),
                (2, 2, 1),
            ],
            &[(1, 1, 2)],
        ),
        GfName::F123 => Surd::from_ints(
            &[(0, 0, 1), (1, 0, -1), (1, 1, 1)],
            &[
                (0, 0, 1),
                (1, 0, -2),
                (2, 0, -3),
                (1, 1, -2),
                (2, 1, 2),
                (2, 2, 1),
            ],
            &[(2, 0, 2), (1, 1, 2), (2, 1, -2)],
        ),
        GfName::F231 => Surd::from_ints(
            &[(0, 0, 1), (1, 0, -2), (1, 1, 2)],
            &[(0, 0, 1), (1, 0, -4), (2, 0, 4), (2, 1, -4)],
            &[(1, 1, 2)],
        ),
        GfName::F213 | GfName::F312 => Surd::from_ints(
            &[(0, 0, 1), (2, 0, -1), (2, 1, 1)],
            &[
                (0, 0, 1),
                (1, 0, -4),
                (2, 0, 2),
                (2, 1, -2),
                (4, 0, 1),
                (4, 1, -2),
                (4, 2, 1),
            ],
            &[(1, 0, 2), (2, 0, -2), (2, 1, 2)],
        ),
        GfName::G123Avoid213 => Surd::from_ints(
            &[(0, 0, 1), (1, 0, -1), (2, 0, -1), (2, 1, 1)],
            &[
                (0, 0, 1),
                (1, 0, -2),
                (2, 0, -1),
                (3, 0, 2),
                (4, 0, 1),
                (2, 1, -2),
                (3, 1, -2),
                (4, 1, -2),
                (4, 2, 1),
            ],
            &[(2, 1, 2)],
        ),
        GfName::G213Avoid123 => Surd::from_ints(
            &[(0, 0, 1), (1, 0, -1), (2, 0, -1), (1, 1, 1)],
            &[
                (0, 0, 1),
                (1, 0, -2),
                (2, 0, -1),
                (3, 0, 2),
                (4, 0, 1),
                (1, 1, -2),
                (2, 1, 2),
                (3, 1, -2),
                (2, 2, 1),
            ],
            &[(1, 1, 2), (2, 1, -2)],
        ),
        _ => return None,
    };
    Some(s)
}

fn cf_for(name: GfName, depth: usize) -> Result<CfSpec> {
    match name.canonical() {
        GfName::F12k(k) => CfSpec::new(CfShape::AscentChain, k, depth),
        GfName::F21k(k) => CfSpec::new(CfShape::DescentChain, k, depth),
        GfName::F2Dash13 => CfSpec::new(CfShape::DoubledLevels, 0, depth),
        GfName::G123Avoid213 => CfSpec::new(CfShape::Uniform, 0, depth),
        other => Err(Error::OutOfScope(format!(
            "{other} has no continued fraction"
        ))),
    }
}

fn equation_for(name: GfName) -> Option<Equation> {
    Some(match name.canonical() {
        GfName::F12k(2) | GfName::F21k(2) => Equation::AdjacentAscents,
        GfName::F12dots(k) => Equation::IncreasingRun(k),
        GfName::F123 => Equation::IncreasingRun(3),
        GfName::F231 => Equation::Consecutive231,
        GfName::F213 => Equation::Consecutive213,
        GfName::F312 => Equation::Consecutive312,
        GfName::F1Dash23 => Equation::OneThenAscent,
        GfName::F2Dash13 => Equation::TwoThenAscent,
        GfName::G123Avoid231 => Equation::Restricted231,
        _ => return None,
    })
}

fn table_series<T: Coeff>(
    window: Window,
    f: impl Fn(u64, u64) -> num_bigint::BigUint,
) -> TruncatedSeries<T> {
    let mut terms = Vec::new();
    for n in 0..=window.x_deg {
        for r in 0..=window.y_deg {
            let c = f(n as u64, r as u64);
            terms.push((n, r, big_to_coeff::<T>(&BigInt::from(c))));
        }
    }
    TruncatedSeries::from_terms(terms, window)
}

fn closed_series<T: Coeff>(name: GfName, window: Window) -> Result<TruncatedSeries<T>> {
    let w = name.route_window(Route::Closed, window);
    let slices = |f: &dyn Fn(usize) -> Result<TruncatedSeries<T>>| -> Result<TruncatedSeries<T>> {
        let mut terms = Vec::new();
        for r in 0..=w.y_deg {
            for (n, c) in f(r)?.y_slice(0)?.into_iter().enumerate() {
                terms.push((n, r, c));
            }
        }
        Ok(TruncatedSeries::from_terms(terms, w))
    };
    match name.canonical() {
        GfName::F12k(2) | GfName::F21k(2) => Ok(table_series(w, f12_count)),
        GfName::F231 => Ok(table_series(w, f231_count)),
        GfName::F12k(k) => slices(&|r| f12k_r_series(k, r, w.x_deg)),
        GfName::F21k(k) => slices(&|_| f12k_r_series(k, 0, w.x_deg)),
        GfName::F1Dash23 => slices(&|r| f1_23_r_series(r, w.x_deg)),
        other => Err(Error::OutOfScope(format!("{other} has no closed form"))),
    }
}

/// Computes `name` through `route` over any scalar type.
///
/// `depth` defaults to the minimum exact depth for continued fractions. The
/// closed route returns the y-window it covers, which may be smaller than
/// `window` (see [`GfName::route_window`]).
pub fn gf_series_as<T: Coeff>(
    name: GfName,
    route: Route,
    window: Window,
    depth: Option<usize>,
) -> Result<TruncatedSeries<T>> {
    let routes = name.routes();
    if !routes.contains(&route) {
        return Err(Error::UnsupportedRoute {
            name: name.to_string(),
            route,
            supported: routes,
        });
    }
    match route {
        Route::Cf => {
            let depth = depth.unwrap_or_else(|| CfSpec::required_depth(window));
            eval_cf(&cf_for(name, depth)?, window)
        }
        Route::Feq => {
            let eq = equation_for(name).expect("feq route has an equation");
            solve_fixed_point(eq, window)
        }
        Route::Surd => {
            let s = surd_for(name).expect("surd route has a surd");
            Ok(expand_surd(&s, window)?.0)
        }
        Route::Closed => closed_series(name, window),
    }
}

/// Exact-rational form of [`gf_series_as`].
pub fn gf_series(
    name: GfName,
    route: Route,
    window: Window,
    depth: Option<usize>,
) -> Result<TruncatedSeries<BigRational>> {
    gf_series_as(name, route, window, depth)
}
