//! Command-line front end: symbolic determinants, the identity verification
//! suite, and the exact geometric predicates over distance-matrix files.
//!
//! Results go to standard output, diagnostics to standard error. Exit code 0
//! means success (and, for `verify`, that every check passed); 1 means a
//! verification failure; 2 means a usage or input error. Output for
//! identical inputs is byte-identical across runs.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cmdet::cm::{CmCache, DEFAULT_SYMBOLIC_CAP};
use cmdet::geometry::{
    self, parse_distance_matrix, DistanceMatrix, GeometryError, GeometryResult,
};
use cmdet::rational::{parse_rational, Rational};
use cmdet::verify::{SuiteId, Verifier};
use cmdet::Polynomial;

#[derive(Parser)]
#[command(
    name = "cmdet",
    version,
    about = "Exact Cayley-Menger determinants, identity verification, and rational distance-geometry predicates"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Override the symbolic dimension cap (runtime grows combinatorially
    /// with the dimension)
    #[arg(long, global = true)]
    cap: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Record,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Cayley-Menger determinant of n+1 points
    Gamma {
        #[arg(short)]
        n: u32,
    },
    /// Print the inner-block determinant of n+1 points
    Delta {
        #[arg(short)]
        n: u32,
    },
    /// Print the isosceles-tower specialization over a p-dimensional base
    Lambda {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        p: u32,
    },
    /// Run the identity verification suite and print the report
    Verify {
        /// Largest dimension to verify; defaults to the symbolic cap
        #[arg(long)]
        max_n: Option<u32>,
        /// Comma-separated subset of check families
        /// (closed,heron,ptolemy,base,collapse,recurrence,homog,content,mod2,p1)
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
    },
    /// Squared simplex volume of the points in FILE
    Volume { file: PathBuf },
    /// Whether the distances in FILE embed as a nondegenerate simplex
    Realizable { file: PathBuf },
    /// Whether the points in FILE lie in a proper affine subspace
    Degenerate { file: PathBuf },
    /// Squared circumradius of the simplex in FILE
    Circumradius { file: PathBuf },
    /// Whether the points in FILE lie on a common sphere or hyperplane
    Cospherical { file: PathBuf },
    /// Squared volume of the tower built over the base simplex in FILE
    Isosceles {
        file: PathBuf,
        /// Comma-separated apex distances, innermost first
        #[arg(long, value_delimiter = ',', required = true)]
        tau: Vec<String>,
        /// Recompute through the recurrence and fail on disagreement
        #[arg(long)]
        audit: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage<E: std::fmt::Display>(error: E) -> Failure {
        Failure {
            code: 2,
            message: error.to_string(),
        }
    }
}

impl From<cmdet::CmError> for Failure {
    fn from(e: cmdet::CmError) -> Failure {
        Failure::usage(e)
    }
}

impl From<geometry::DmParseError> for Failure {
    fn from(e: geometry::DmParseError) -> Failure {
        Failure::usage(e)
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Failure {
        let code = match e {
            // a failed audit is a verification failure, not bad input
            GeometryError::AuditMismatch { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            // a closed pipe on the read side is not our error
            return Failure {
                code: 0,
                message: String::new(),
            };
        }
        Failure::usage(e)
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            }
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(failure) => {
            if !failure.message.is_empty() {
                let _ = writeln!(err, "error: {}", failure.message);
            }
            failure.code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let cap = cli.cap.unwrap_or(DEFAULT_SYMBOLIC_CAP);
    if cap > DEFAULT_SYMBOLIC_CAP {
        let _ = writeln!(
            err,
            "warning: symbolic cap raised to {cap}; runtime and memory grow combinatorially with the dimension"
        );
    }
    let cache = CmCache::with_cap(cap);
    match cli.command {
        Command::Gamma { n } => {
            let poly = cache.gamma(n)?;
            print_polynomial(out, cli.format, "gamma", n, None, &poly)
        }
        Command::Delta { n } => {
            let poly = cache.delta(n)?;
            print_polynomial(out, cli.format, "delta", n, None, &poly)
        }
        Command::Lambda { n, p } => {
            let poly = cache.lambda(n, p)?;
            print_polynomial(out, cli.format, "lambda", n, Some(p), &poly)
        }
        Command::Verify { max_n, suite } => {
            let max_n = max_n.unwrap_or(cache.cap());
            let suites = parse_suites(&suite)?;
            let verifier = Verifier::new(cache);
            let report = verifier.run_selected(max_n, &suites)?;
            match cli.format {
                Format::Text => out.write_all(report.to_text().as_bytes())?,
                Format::Record => out.write_all(report.to_json().as_bytes())?,
            }
            let failed = report.failures().count();
            let _ = writeln!(
                err,
                "{} checks, {} failed",
                report.checks.len(),
                failed
            );
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Volume { file } => {
            let dm = load_matrix(&file)?;
            let result = geometry::volume_squared(&dm)?;
            print_value(out, cli.format, "volume", &result, None)
        }
        Command::Realizable { file } => {
            let dm = load_matrix(&file)?;
            let result = geometry::is_realizable(&dm)?;
            print_bool(out, cli.format, "realizable", &result)
        }
        Command::Degenerate { file } => {
            let dm = load_matrix(&file)?;
            let result = geometry::is_degenerate(&dm)?;
            print_bool(out, cli.format, "degenerate", &result)
        }
        Command::Circumradius { file } => {
            let dm = load_matrix(&file)?;
            let result = geometry::circumradius_squared(&dm)?;
            print_value(out, cli.format, "circumradius", &result, None)
        }
        Command::Cospherical { file } => {
            let dm = load_matrix(&file)?;
            let result = geometry::is_cospherical(&dm)?;
            print_bool(out, cli.format, "cospherical", &result)
        }
        Command::Isosceles { file, tau, audit } => {
            let dm = load_matrix(&file)?;
            let taus = parse_taus(&tau)?;
            let result = if audit {
                let r = geometry::isosceles_volume_squared_audited(&dm, &taus)?;
                let _ = writeln!(err, "audit: recurrence route agrees");
                r
            } else {
                geometry::isosceles_volume_squared(&dm, &taus)?
            };
            print_value(out, cli.format, "isosceles", &result, audit.then_some(true))
        }
    }
}

fn load_matrix(path: &Path) -> Result<DistanceMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(parse_distance_matrix(&text)?)
}

fn parse_suites(names: &[String]) -> Result<Vec<SuiteId>, Failure> {
    if names.is_empty() {
        return Ok(SuiteId::ALL.to_vec());
    }
    names
        .iter()
        .map(|name| SuiteId::from_str(name).map_err(Failure::usage))
        .collect()
}

fn parse_taus(texts: &[String]) -> Result<Vec<Rational>, Failure> {
    texts
        .iter()
        .map(|t| parse_rational(t).map_err(Failure::usage))
        .collect()
}

#[derive(Serialize)]
struct PolynomialRecord<'a> {
    command: &'a str,
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    polynomial: String,
}

#[derive(Serialize)]
struct ValueRecord<'a> {
    command: &'a str,
    value: String,
    certificate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<bool>,
}

#[derive(Serialize)]
struct BoolRecord<'a> {
    command: &'a str,
    value: bool,
    certificate: String,
}

fn print_polynomial(
    out: &mut dyn Write,
    format: Format,
    command: &str,
    n: u32,
    p: Option<u32>,
    poly: &Polynomial,
) -> Result<i32, Failure> {
    match format {
        Format::Text => {
            // stream term by term; the full string can be large
            poly.write_canonical(out)?;
            out.write_all(b"\n")?;
        }
        Format::Record => {
            let record = PolynomialRecord {
                command,
                n,
                p,
                polynomial: poly.canonical_string(),
            };
            write_record(out, &record)?;
        }
    }
    Ok(0)
}

fn print_value(
    out: &mut dyn Write,
    format: Format,
    command: &str,
    result: &GeometryResult<Rational>,
    audit: Option<bool>,
) -> Result<i32, Failure> {
    match format {
        Format::Text => writeln!(out, "{}", result.value)?,
        Format::Record => write_record(
            out,
            &ValueRecord {
                command,
                value: result.value.to_string(),
                certificate: result.certificate.to_string(),
                audit,
            },
        )?,
    }
    Ok(0)
}

fn print_bool(
    out: &mut dyn Write,
    format: Format,
    command: &str,
    result: &GeometryResult<bool>,
) -> Result<i32, Failure> {
    match format {
        Format::Text => writeln!(out, "{}", result.value)?,
        Format::Record => write_record(
            out,
            &BoolRecord {
                command,
                value: result.value,
                certificate: result.certificate.to_string(),
            },
        )?,
    }
    Ok(0)
}

fn write_record<T: Serialize>(out: &mut dyn Write, record: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(record).expect("record serializes");
    text.push('\n');
    out.write_all(text.as_bytes())?;
    Ok(())
}
