//! `gpat` command-line front end.
//!
//! Output is assembled in memory and written once by the binary. Exit codes:
//! `0` success, `1` gated mismatch or computation failure, `2` usage error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpat_core::closed_form::catalan;
use gpat_core::enumerate::{table, CountTable, EnumerationError, DEFAULT_BUDGET};
use gpat_core::genfunc::{catalog, GfName, Route, MAX_K};
use gpat_core::verify::{
    verify_all_with_budget, verify_name_with_budget, Status, Verification, VerificationReport,
};
use gpat_core::{gf_series, parse_pattern, Error, GeneralizedPattern, Series, Window};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gpat",
    version,
    about = "Pattern statistics over 1-3-2-avoiding permutations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Occurrence-count table f(n, r)
    Table(TableArgs),
    /// Coefficient grid of a catalog generating function
    Series(SeriesArgs),
    /// Cross-check generating functions against enumeration
    Verify(VerifyArgs),
    /// List catalog names, routes and aliases
    Catalog(FormatArg),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bf,
    Cf,
    Feq,
    Surd,
    Closed,
}

impl Method {
    fn route(self) -> Option<Route> {
        match self {
            Method::Bf => None,
            Method::Cf => Some(Route::Cf),
            Method::Feq => Some(Route::Feq),
            Method::Surd => Some(Route::Surd),
            Method::Closed => Some(Route::Closed),
        }
    }
}

#[derive(Debug, Args)]
pub struct FormatArg {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Counted pattern, e.g. `12-3` or `2-13`
    #[arg(long, visible_alias = "phi")]
    pub pattern: String,
    /// Pattern the permutations must also avoid
    #[arg(long, visible_alias = "tau")]
    pub restriction: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    #[arg(long, default_value_t = 8)]
    pub rmax: usize,
    #[arg(long, value_enum, default_value = "bf")]
    pub method: Method,
    /// Continued-fraction depth override
    #[arg(long)]
    pub depth: Option<usize>,
    /// Largest length enumeration may reach
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub name: String,
    /// Pattern length for the parametric names
    #[arg(long)]
    pub k: Option<usize>,
    /// Defaults to the first route the name supports
    #[arg(long)]
    pub route: Option<Route>,
    #[arg(long, default_value_t = 8)]
    pub xdeg: usize,
    #[arg(long, default_value_t = 8)]
    pub ydeg: usize,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("scope").required(true).args(["all", "name"]))]
pub struct VerifyArgs {
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    #[arg(long, default_value_t = 8)]
    pub rmax: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// What the binary writes and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Pattern(_)
        | Error::Enumeration(EnumerationError::BudgetExceeded { .. })
        | Error::Enumeration(EnumerationError::FilterBoundExceeded { .. })
        | Error::UnknownName { .. }
        | Error::UnsupportedRoute { .. }
        | Error::InvalidCf(_)
        | Error::DepthTooShallow { .. }
        | Error::OutOfScope(_) => EXIT_USAGE,
        _ => EXIT_MISMATCH,
    }
}

fn failure(e: Error) -> Outcome {
    let mut msg = format!("error: {e}\n");
    if let Error::UnknownName { .. } = e {
        msg.push_str("\ncatalog:\n");
        msg.push_str(&render_catalog(Format::Csv));
    }
    Outcome::fail(exit_code_for(&e), msg)
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome::fail(EXIT_USAGE, text),
            };
        }
    };
    let result = match cli.command {
        Command::Table(a) => cmd_table(&a),
        Command::Series(a) => cmd_series(&a),
        Command::Verify(a) => return cmd_verify(&a),
        Command::Catalog(a) => Ok(render_catalog(a.format)),
    };
    match result {
        Ok(s) => Outcome::ok(s),
        Err(e) => failure(e),
    }
}

/// `(n, r, value)` cells in `(n, r)` order.
type Cells = Vec<(usize, usize, String)>;

fn render_cells(
    format: Format,
    value_key: &str,
    cells: &Cells,
    header: serde_json::Map<String, Value>,
) -> String {
    match format {
        Format::Csv => {
            let mut out = format!("n,r,{value_key}\n");
            for (n, r, v) in cells {
                let _ = writeln!(out, "{n},{r},{v}");
            }
            out
        }
        Format::Json => {
            let mut doc = header;
            let list: Vec<Value> = cells
                .iter()
                .map(|(n, r, v)| json!({"n": n.to_string(), "r": r.to_string(), value_key: v}))
                .collect();
            doc.insert("cells".into(), Value::Array(list));
            let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
            s.push('\n');
            s
        }
    }
}

fn table_cells(t: &CountTable) -> Cells {
    let mut cells = Vec::new();
    for (n, row) in t.rows.iter().enumerate() {
        for (r, c) in row.iter().enumerate() {
            cells.push((n, r, c.to_string()));
        }
    }
    cells
}

fn render_table(t: &CountTable, format: Format) -> String {
    let mut header = serde_json::Map::new();
    header.insert("pattern".into(), json!(t.pattern_label));
    header.insert("restriction".into(), json!(t.restriction_label));
    header.insert("n_max".into(), json!(t.n_max.to_string()));
    header.insert("r_max".into(), json!(t.r_max.to_string()));
    header.insert(
        "truncated_rows".into(),
        json!(t
            .truncated_rows()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()),
    );
    render_cells(format, "count", &table_cells(t), header)
}

/// The catalog name counting `phi` over avoiders of `tau`, preferring one that offers `route`.
fn name_for(
    phi: &GeneralizedPattern,
    tau: Option<&GeneralizedPattern>,
    route: Route,
) -> Option<GfName> {
    let ks: Vec<usize> = (2..=MAX_K).collect();
    let matching: Vec<GfName> = GfName::all(&ks)
        .into_iter()
        .filter(|n| &n.pattern() == phi && n.restriction().as_ref() == tau)
        .collect();
    matching
        .iter()
        .copied()
        .find(|n| n.routes().contains(&route))
        .or_else(|| matching.first().copied())
}

fn cmd_table(a: &TableArgs) -> Result<String, Error> {
    let phi = parse_pattern(&a.pattern)?;
    let tau = match a.restriction.as_deref() {
        Some(t) if !t.is_empty() => Some(parse_pattern(t)?),
        _ => None,
    };
    let t = match a.method.route() {
        None => table(&phi, a.nmax, a.rmax, tau.as_ref(), a.budget)?,
        Some(route) => {
            let name = name_for(&phi, tau.as_ref(), route).ok_or_else(|| {
                Error::OutOfScope(format!(
                    "no catalog generating function counts {phi}{}; use --method bf",
                    tau.as_ref()
                        .map(|t| format!(" avoiding {t}"))
                        .unwrap_or_default()
                ))
            })?;
            gf_table(name, route, &phi, tau.as_ref(), a)?
        }
    };
    Ok(render_table(&t, a.format))
}

fn gf_table(
    name: GfName,
    route: Route,
    phi: &GeneralizedPattern,
    tau: Option<&GeneralizedPattern>,
    a: &TableArgs,
) -> Result<CountTable, Error> {
    let s = gf_series(name, route, Window::new(a.nmax, a.rmax), a.depth)?;
    let rows = s.to_counts()?;
    let totals = row_totals(name, route, a)?;
    let truncated = rows
        .iter()
        .zip(&totals)
        .map(|(row, total)| &row.iter().sum::<num_bigint::BigUint>() != total)
        .collect();
    Ok(CountTable {
        pattern_label: phi.to_string(),
        restriction_label: tau.map(ToString::to_string),
        n_max: a.nmax,
        r_max: s.window().y_deg,
        rows,
        truncated,
    })
}

/// Number of permutations of each length the table should account for.
fn row_totals(
    name: GfName,
    route: Route,
    a: &TableArgs,
) -> Result<Vec<num_bigint::BigUint>, Error> {
    if name.restriction().is_none() {
        return Ok((0..=a.nmax as u64).map(catalan).collect());
    }
    // every restricted catalog pattern is consecutive of length 3: at most n - 2 occurrences
    let full = gf_series(
        name,
        route,
        Window::new(a.nmax, a.nmax.max(a.rmax)),
        a.depth,
    )?;
    Ok(full
        .to_counts()?
        .into_iter()
        .map(|row| row.into_iter().sum())
        .collect())
}

fn cmd_series(a: &SeriesArgs) -> Result<String, Error> {
    let name = GfName::parse(&a.name, a.k)?;
    let route = a.route.unwrap_or_else(|| name.routes()[0]);
    let s: Series = gf_series(name, route, Window::new(a.xdeg, a.ydeg), a.depth)?;
    let w = s.window();
    let mut cells = Vec::new();
    for n in 0..=w.x_deg {
        for r in 0..=w.y_deg {
            cells.push((n, r, s.coefficient(n, r)?.to_string()));
        }
    }
    let mut header = serde_json::Map::new();
    header.insert("name".into(), json!(name.to_string()));
    header.insert("route".into(), json!(route.to_string()));
    header.insert("x_deg".into(), json!(w.x_deg.to_string()));
    header.insert("y_deg".into(), json!(w.y_deg.to_string()));
    Ok(render_cells(a.format, "coefficient", &cells, header))
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let run = || -> Result<Verification, Error> {
        if a.all {
            verify_all_with_budget(a.nmax, a.rmax, a.budget)
        } else {
            let name = GfName::parse(a.name.as_deref().unwrap_or_default(), a.k)?;
            let rep = verify_name_with_budget(name, a.nmax, a.rmax, a.budget)?;
            let runtime_secs = rep.runtime_secs;
            Ok(Verification {
                n_max: a.nmax,
                r_max: a.rmax,
                reports: vec![rep],
                properties: Vec::new(),
                runtime_secs,
            })
        }
    };
    match run() {
        Ok(v) => Outcome {
            code: if v.passed() { EXIT_OK } else { EXIT_MISMATCH },
            stdout: render_verification(&v, a.format),
            stderr: String::new(),
        },
        Err(e) => failure(e),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Agree => "agree",
        Status::Disagree => "disagree",
        Status::Partial => "partial",
    }
}

fn report_rows(rep: &VerificationReport, out: &mut String) {
    let mut row = |kind: &str, status: &str, detail: String| {
        let _ = writeln!(
            out,
            "{kind},{},{status},{}",
            csv_field(&rep.subject),
            csv_field(&detail)
        );
    };
    row("report", status_text(rep.status), rep.routes.join(" "));
    for m in &rep.mismatches {
        row(
            "mismatch",
            "disagree",
            format!(
                "n={} r={}: {}={} {}={}",
                m.n, m.r, m.route_a, m.value_a, m.route_b, m.value_b
            ),
        );
    }
    for annex in &rep.annexes {
        row("annex", status_text(annex.status), annex.title.clone());
        for note in &annex.notes {
            row("annex-note", status_text(annex.status), note.clone());
        }
        for m in &annex.mismatches {
            row(
                "annex-mismatch",
                status_text(annex.status),
                format!(
                    "n={} r={}: {}={} {}={}",
                    m.n, m.r, m.route_a, m.value_a, m.route_b, m.value_b
                ),
            );
        }
    }
}

fn render_verification(v: &Verification, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("kind,subject,status,detail\n");
            for rep in &v.reports {
                report_rows(rep, &mut out);
            }
            for p in &v.properties {
                let status = if p.passed { "pass" } else { "fail" };
                let _ = writeln!(
                    out,
                    "property,{},{status},{}",
                    csv_field(&p.name),
                    csv_field(&p.detail)
                );
            }
            out
        }
    }
}

fn route_summary(name: GfName, route: Route) -> String {
    let what = match (route, name.canonical()) {
        (Route::Cf, GfName::F12k(_)) => "continued fraction, ascent chain",
        (Route::Cf, GfName::F21k(_)) => "continued fraction, descent chain",
        (Route::Cf, GfName::F2Dash13) => "continued fraction, doubled levels",
        (Route::Cf, _) => "continued fraction, uniform levels",
        (Route::Feq, GfName::G123Avoid231) => "quadratic equation in an auxiliary series",
        (Route::Feq, _) => "functional equation by fixed-point iteration",
        (Route::Surd, _) => "quadratic surd, power-series branch",
        (Route::Closed, GfName::F12k(2) | GfName::F21k(2)) => "explicit counts (Narayana)",
        (Route::Closed, GfName::F231) => "explicit counts",
        (Route::Closed, GfName::F12k(_)) => "rational slices in u_j, r <= k-2",
        (Route::Closed, GfName::F21k(_)) => "rational slice u_{k-1}/u_k, r = 0",
        (Route::Closed, _) => "radical slices in 1-2x-3x^2, r <= 2",
    };
    format!("{route}: {what}")
}

const VERIFICATION_ONLY: [(&str, &str); 3] = [
    (
        "g123_231_printed",
        "printed count for avoiders of 123 by 231; compared, never gated",
    ),
    (
        "f1_23_r_series(3)",
        "printed r = 3 slice for 1-23; compared, never gated",
    ),
    (
        "f21k_hypothesis",
        "closed-form readings for 21-3-...-k, r >= 1; compared, never gated",
    ),
];

pub fn render_catalog(format: Format) -> String {
    let entries = catalog(&[2, 3]);
    let names = GfName::all(&[2, 3]);
    match format {
        Format::Json => {
            let list: Vec<Value> = entries
                .iter()
                .zip(&names)
                .map(|(e, &n)| {
                    let mut v = serde_json::to_value(e).expect("json");
                    v["route_notes"] = json!(n
                        .routes()
                        .iter()
                        .map(|&r| route_summary(n, r))
                        .collect::<Vec<_>>());
                    v
                })
                .collect();
            let only: Vec<Value> = VERIFICATION_ONLY
                .iter()
                .map(|(n, d)| json!({"name": n, "verification_only": true, "description": d}))
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({
                "parametric_k": format!("2..={MAX_K}"),
                "names": list,
                "verification_only": only,
            }))
            .expect("json");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("name,pattern,restriction,routes,alias_of,notes\n");
            for (e, &n) in entries.iter().zip(&names) {
                let routes: Vec<String> = e.routes.iter().map(ToString::to_string).collect();
                let notes: Vec<String> = n.routes().iter().map(|&r| route_summary(n, r)).collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    e.name,
                    e.pattern,
                    e.restriction.as_deref().unwrap_or(""),
                    routes.join(";"),
                    e.alias_of.as_deref().unwrap_or(""),
                    csv_field(&notes.join("; "))
                );
            }
            for (n, d) in VERIFICATION_ONLY {
                let _ = writeln!(
                    out,
                    "{n},,,,,{}",
                    csv_field(&format!("verification-only: {d}"))
                );
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn help_is_not_an_error() {
        let o = run(["gpat", "--help"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("table"));
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a, b"), "\"a, b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn error_classes() {
        let e = GfName::parse("NOPE", None).unwrap_err();
        assert_eq!(exit_code_for(&e), EXIT_USAGE);
        assert_eq!(
            exit_code_for(&Error::NoConvergence {
                name: "x".into(),
                rounds: 1
            }),
            EXIT_MISMATCH
        );
    }

    #[test]
    fn route_lookup_prefers_supported_name() {
        let p = parse_pattern("123").unwrap();
        assert_eq!(name_for(&p, None, Route::Surd), Some(GfName::F123));
        assert_eq!(name_for(&p, None, Route::Feq), Some(GfName::F12dots(3)));
        let tau = parse_pattern("123").unwrap();
        let phi = parse_pattern("231").unwrap();
        assert_eq!(
            name_for(&phi, Some(&tau), Route::Feq),
            Some(GfName::G123Avoid231)
        );
    }
}
