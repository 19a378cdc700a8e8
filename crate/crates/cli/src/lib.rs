//! Command-line front end: batch verification, registry listing and series
//! expansion. [`run`] takes the catalog as an argument so tests can add
//! fixture entries.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use qbailey::bailey::pairs;
use qbailey::catalog::{Catalog, MockTheta, Side};
use qbailey::qprod::{poch, poch_reciprocal, Length, PochSpec};
use qbailey::{QError, QSeries, ReportSet, Sign, Status, VerifyReport};
use rayon::prelude::*;

/// Environment variable overriding every entry's default order.
pub const ORDER_ENV: &str = "QBAILEY_DEFAULT_ORDER";

pub const EXIT_MATCH: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qbailey",
    version,
    about = "Exact verification of q-series identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeriesFormat {
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare both sides of registered identities.
    Verify {
        /// Identity ids, in any order.
        ids: Vec<String>,
        /// Verify every registered identity.
        #[arg(long, conflicts_with = "ids")]
        all: bool,
        /// Number of lattice coefficients to compare (default: per entry).
        #[arg(long)]
        order: Option<usize>,
        /// Maximum number of identities verified concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// List registered identities.
    List,
    /// Print the coefficients of a named series.
    ///
    /// TARGET is an identity id, `poch`, a mock theta series (`psi`,
    /// `omega-like`, `nu-like`), `pair-alpha` or `pair-beta`.
    Expand {
        target: String,
        /// Identity side.
        #[arg(long, default_value = "lhs")]
        side: String,
        /// Pair name for pair-alpha / pair-beta.
        #[arg(long)]
        name: Option<String>,
        /// Index tuple `n1,n2,..`, or a Pochhammer length (`inf` allowed).
        #[arg(long)]
        n: Option<String>,
        /// Pochhammer sign, 1 or -1.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i64,
        /// Pochhammer start exponent in lattice units.
        #[arg(long, default_value_t = 1)]
        expo: usize,
        /// Pochhammer step in lattice units.
        #[arg(long, default_value_t = 1)]
        base: usize,
        /// Expand the reciprocal of the Pochhammer symbol.
        #[arg(long)]
        reciprocal: bool,
        /// Lattice denominator for `poch`.
        #[arg(long, default_value_t = 1)]
        denom: u32,
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Text)]
        format: SeriesFormat,
    },
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, catalog: &Catalog, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_MATCH
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify {
            ids,
            all,
            order,
            jobs,
            format,
        } => verify(catalog, &ids, all, order, jobs, format, out),
        Command::List => list(catalog, out),
        Command::Expand {
            target,
            side,
            name,
            n,
            sign,
            expo,
            base,
            reciprocal,
            denom,
            order,
            format,
        } => {
            let request = ExpandRequest {
                target,
                side,
                name,
                n,
                sign,
                expo,
                base,
                reciprocal,
                denom,
                order,
            };
            expand(catalog, &request)
                .and_then(|series| {
                    let text = match format {
                        SeriesFormat::Text => format!("{series}\n"),
                        SeriesFormat::Csv => series.to_csv(),
                    };
                    write!(out, "{text}").map_err(|e| e.to_string())
                })
                .map(|()| EXIT_MATCH)
        }
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn env_order() -> Result<Option<usize>, String> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("{ORDER_ENV} must be a positive integer, got `{v}`")),
        Err(_) => Ok(None),
    }
}

fn verify(
    catalog: &Catalog,
    ids: &[String],
    all: bool,
    order: Option<usize>,
    jobs: usize,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let selected: Vec<&str> = if all {
        catalog.ids().collect()
    } else if ids.is_empty() {
        return Err("give identity ids or --all".into());
    } else {
        ids.iter().map(String::as_str).collect()
    };
    let entries = selected
        .iter()
        .map(|id| catalog.get(id))
        .collect::<Result<Vec<_>, QError>>()
        .map_err(|e| e.to_string())?;
    let fallback = env_order()?;
    if order == Some(0) || fallback == Some(0) {
        return Err(QError::ZeroTruncation.to_string());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    let reports: Vec<VerifyReport> = pool.install(|| {
        entries
            .par_iter()
            .map(|entry| entry.verify(order.or(fallback).unwrap_or(entry.default_order)))
            .collect()
    });

    let text = match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&ReportSet::new(reports.clone()))
                .map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.summary());
                s.push('\n');
                if let (false, Some(note)) = (r.is_match(), &r.annotation) {
                    s.push_str(&format!("    note: {note}\n"));
                }
            }
            let matched = reports.iter().filter(|r| r.is_match()).count();
            s.push_str(&format!("{matched}/{} match\n", reports.len()));
            s
        }
    };
    write!(out, "{text}").map_err(|e| e.to_string())?;

    Ok(if reports.iter().any(|r| r.status == Status::Error) {
        EXIT_USAGE
    } else if reports.iter().any(|r| r.status == Status::Mismatch) {
        EXIT_MISMATCH
    } else {
        EXIT_MATCH
    })
}

fn list(catalog: &Catalog, out: &mut dyn Write) -> Result<i32, String> {
    let mut s = String::new();
    for entry in catalog.entries() {
        s.push_str(&format!(
            "{:<16} ({:<4}) D={} order {:>3}  {}\n",
            entry.id,
            entry.equation().unwrap_or("-"),
            entry.denom,
            entry.default_order,
            entry.description
        ));
    }
    write!(out, "{s}").map_err(|e| e.to_string())?;
    Ok(EXIT_MATCH)
}

struct ExpandRequest {
    target: String,
    side: String,
    name: Option<String>,
    n: Option<String>,
    sign: i64,
    expo: usize,
    base: usize,
    reciprocal: bool,
    denom: u32,
    order: usize,
}

fn parse_index(raw: Option<&str>) -> Result<Vec<usize>, String> {
    let Some(raw) = raw else {
        return Ok(Vec::new());
    };
    raw.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| format!("malformed index `{raw}`: expected n1,n2,..."))
        })
        .collect()
}

fn parse_length(raw: Option<&str>) -> Result<Length, String> {
    match raw {
        None => Err("poch needs --n <length|inf>".into()),
        Some("inf") => Ok(Length::Infinite),
        Some(v) => v
            .parse()
            .map(Length::Finite)
            .map_err(|_| format!("malformed length `{v}`")),
    }
}

fn expand(catalog: &Catalog, req: &ExpandRequest) -> Result<QSeries, String> {
    let text = |e: QError| e.to_string();
    if req.order == 0 {
        return Err(text(QError::ZeroTruncation));
    }
    match req.target.as_str() {
        "poch" => {
            let sign = Sign::from_i64(req.sign).map_err(text)?;
            let spec = PochSpec::new(sign, req.expo, req.base, parse_length(req.n.as_deref())?)
                .map_err(text)?;
            if req.reciprocal {
                poch_reciprocal(spec, req.denom, req.order).map_err(text)
            } else {
                poch(spec, req.denom, req.order).map_err(text)
            }
        }
        "pair-alpha" | "pair-beta" => {
            let name = req.name.as_deref().ok_or("pair expansion needs --name")?;
            let pair = pairs::by_name(name).map_err(text)?;
            let index = parse_index(req.n.as_deref())?;
            if index.len() != pair.folds {
                return Err(format!(
                    "{name} is a {}-fold pair; --n has {} entries",
                    pair.folds,
                    index.len()
                ));
            }
            if req.target == "pair-alpha" {
                pair.alpha(&index, req.order).map_err(text)
            } else {
                pair.beta(&index, req.order).map_err(text)
            }
        }
        other => {
            if let Ok(mock) = other.parse::<MockTheta>() {
                return mock.build(req.order).map_err(text);
            }
            let entry = catalog.get(other).map_err(text)?;
            let side: Side = req.side.parse().map_err(text)?;
            let index = parse_index(req.n.as_deref())?;
            entry
                .build_at(side, &index, req.order)
                .map(|b| b.series)
                .map_err(text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_and_length_parsing() {
        assert_eq!(parse_index(Some("2, 3")).unwrap(), [2, 3]);
        assert_eq!(parse_index(None).unwrap(), Vec::<usize>::new());
        assert!(parse_index(Some("2,-1")).is_err());
        assert_eq!(parse_length(Some("inf")).unwrap(), Length::Infinite);
        assert_eq!(parse_length(Some("-2")).unwrap(), Length::Finite(-2));
        assert!(parse_length(None).is_err());
    }

    #[test]
    fn help_is_not_an_error() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(["qbailey", "--help"], &Catalog::empty(), &mut out, &mut err);
        assert_eq!(code, EXIT_MATCH);
        assert!(String::from_utf8(out).unwrap().contains("verify"));
    }
}
