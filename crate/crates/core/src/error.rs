use thiserror::Error;

use crate::enumerate::EnumerationError;
use crate::genfunc::Route;
use crate::perm::PatternError;
use crate::series::SeriesError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("unknown generating function {name:?}; known names: {known}")]
    UnknownName { name: String, known: String },
    #[error("{name} has no {route} route; supported: {}", join_routes(supported))]
    UnsupportedRoute {
        name: String,
        route: Route,
        supported: Vec<Route>,
    },
    #[error("invalid continued fraction: {0}")]
    InvalidCf(String),
    #[error("continued fraction depth {depth} is below the required {required}")]
    DepthTooShallow { depth: usize, required: usize },
    #[error("fixed point for {name} not reached after {rounds} rounds")]
    NoConvergence { name: String, rounds: usize },
    #[error("no surd branch yields a power series: {detail}")]
    NoSurdBranch { detail: String },
    #[error("both surd branches yield power series with constant term 1")]
    AmbiguousSurd,
    #[error("out of scope: {0}")]
    OutOfScope(String),
}

fn join_routes(routes: &[Route]) -> String {
    routes
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
