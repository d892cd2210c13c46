//! Command-line front end: spec files in, text reports and CSV out.
//!
//! Exit codes: 0 on success, 1 for usage, parse, domain and I/O errors,
//! 2 when a computed result breaks an internal invariant.

mod report;
mod spec;

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::model::FunctionModel;
use crate::numeric::{parse_rational, Rational};

pub use report::{ReportDocument, ReportError, Section, Table};
pub use spec::{parse_spec, print_spec, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "semicont", version, about = "Semicontinuity envelopes and Riemann/Lebesgue integrals of piecewise polynomials")]
struct Cli {
    /// Also write the report table as CSV.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Do not print the text report.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify usc/lsc/one-sided continuity at the given points.
    Classify {
        spec: PathBuf,
        /// Points, space- or comma-separated.
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_point)]
        at: Vec<Rational>,
    },
    /// Tabulate the envelopes on a uniform grid or at given points.
    Envelope {
        spec: PathBuf,
        /// Number of subintervals; the grid has n + 1 points.
        #[arg(long, conflicts_with = "at", required_unless_present = "at",
              value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
        grid: Option<u32>,
        /// Points, space- or comma-separated.
        #[arg(long, value_delimiter = ',', value_parser = parse_point)]
        at: Vec<Rational>,
    },
    /// Report exceptional points and the measurability certificate.
    Analyze { spec: PathBuf },
    /// Enclose the Darboux and Lebesgue integrals.
    Integrate {
        spec: PathBuf,
        #[command(flatten)]
        precision: Precision,
    },
    /// Decide Riemann integrability and compare with the Lebesgue integral.
    Compare {
        spec: PathBuf,
        #[command(flatten)]
        precision: Precision,
    },
}

#[derive(Debug, clap::Args)]
struct Precision {
    /// Positive rational tolerance such as 1/1000.
    #[arg(long, default_value = "1/1000000", value_parser = parse_tol)]
    tol: Rational,
    /// Deepest dyadic partition to try.
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(0..=64))]
    max_depth: u32,
}

/// Rewrites `--at a b c` as `--at=a --at=b --at=c` so that negative
/// fractions such as `-1/2` are not mistaken for flags.
fn attach_points(argv: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(argv.len());
    let mut iter = argv.iter().peekable();
    while let Some(arg) = iter.next() {
        if arg != "--at" {
            out.push(arg.clone());
            continue;
        }
        let mut taken = 0;
        while let Some(next) = iter.peek() {
            if next.split(',').any(|t| parse_rational(t).is_err()) {
                break;
            }
            out.push(format!("--at={next}"));
            iter.next();
            taken += 1;
        }
        if taken == 0 {
            out.push(arg.clone());
        }
    }
    out
}

fn parse_point(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_tol(s: &str) -> Result<Rational, String> {
    let q = parse_point(s)?;
    if q <= Rational::from_integer(0.into()) {
        return Err("tolerance must be positive".into());
    }
    Ok(q)
}

pub fn run(argv: &[String]) -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// `run` with explicit output streams.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(attach_points(argv)) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_ERROR
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
        Err(Failure::Spec(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_ERROR
        }
        Err(Failure::Invariant(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INVARIANT
        }
    }
}

enum Failure {
    Usage(String),
    /// Already formatted as `path:line:col: message`.
    Spec(String),
    Invariant(String),
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Engine(e) => Failure::Usage(e.to_string()),
            ReportError::Invariant(m) => Failure::Invariant(m),
        }
    }
}

fn load(path: &Path) -> Result<FunctionModel, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: cannot read spec: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| Failure::Spec(format!("{}:{e}", path.display())))
}

/// `n + 1` equally spaced points covering the domain.
fn uniform_grid(f: &FunctionModel, n: u32) -> Vec<Rational> {
    let lo = f.domain_lo();
    let step = (f.domain_hi() - lo) / Rational::from_integer(n.into());
    (0..=n).map(|i| lo + &step * Rational::from_integer(i.into())).collect()
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let doc = match &cli.command {
        Command::Classify { spec, at } => report::classification(&load(spec)?, at)?,
        Command::Envelope { spec, grid, at } => {
            let f = load(spec)?;
            let points = match grid {
                Some(n) => uniform_grid(&f, *n),
                None => at.clone(),
            };
            report::envelopes(&f, &points)?
        }
        Command::Analyze { spec } => report::analysis(&load(spec)?)?,
        Command::Integrate { spec, precision } => {
            report::integration(&load(spec)?, &precision.tol, precision.max_depth)?
        }
        Command::Compare { spec, precision } => report::comparison(&load(spec)?, &precision.tol, precision.max_depth)?,
    };
    if !cli.quiet {
        out.write_all(doc.to_text().as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write report: {e}")))?;
    }
    if let Some(path) = &cli.csv {
        let file = File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        doc.write_csv(io::BufWriter::new(file))
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("semicont").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn spec_file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    const STEP: &str = "domain -1 1\nbreakpoints -1 0 1\npiece 0 coeffs 0\npiece 1 coeffs 1\nvalues 0 1 1\n";

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&["--version"]).0, 0);
        assert_eq!(call(&["frobnicate"]).0, 1);
    }

    #[test]
    fn classify_accepts_negative_points() {
        let f = spec_file(STEP);
        let path = f.path().to_str().unwrap();
        let (code, out, err) = call(&["classify", path, "--at", "-1/2", "0", "--quiet"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.is_empty());
        let (_, out, _) = call(&["classify", path, "--at", "-1/2,0"]);
        assert!(out.contains("x = -1/2 (~-0.5): usc=yes lsc=yes left=yes right=yes cont=yes"), "{out}");
        assert!(out.contains("x = 0 (~0): usc=yes lsc=no left=no right=yes cont=no"), "{out}");
    }

    #[test]
    fn out_of_domain_point_is_named() {
        let f = spec_file(STEP);
        let (code, _, err) = call(&["classify", f.path().to_str().unwrap(), "--at", "3"]);
        assert_eq!(code, 1);
        assert!(err.contains("point 3 lies outside"), "{err}");
    }

    #[test]
    fn parse_errors_carry_position() {
        let f = spec_file("domain 0 1\nbreakpoints 0 1\npiece 0 coeffs 1 x\nvalues 0 0\n");
        let (code, _, err) = call(&["analyze", f.path().to_str().unwrap()]);
        assert_eq!(code, 1);
        assert!(err.contains(":3:"), "{err}");
    }

    #[test]
    fn envelope_grid_writes_csv() {
        let f = spec_file(STEP);
        let dir = tempfile::tempdir().unwrap();
        let csv = dir.path().join("env.csv");
        let (code, _, err) =
            call(&["envelope", f.path().to_str().unwrap(), "--grid", "4", "--quiet", "--csv", csv.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
        let text = std::fs::read_to_string(csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,f,fstar,flstar,fstar_left,finf_left,fstar_right,finf_right,osc");
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[1], "-1,0,0,0,,,0,0,0");
        assert_eq!(lines[3], "0,1,1,0,0,0,1,1,1");
    }

    #[test]
    fn compare_headline_is_exact() {
        let f = spec_file(STEP);
        let (code, out, err) = call(&["compare", f.path().to_str().unwrap(), "--tol", "1/1000"]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out.lines().next().unwrap(), "riemann: integrable (value=[1, 1025/1024]), lebesgue: 1");
    }

    #[test]
    fn bad_tolerance_is_rejected() {
        let f = spec_file(STEP);
        assert_eq!(call(&["integrate", f.path().to_str().unwrap(), "--tol", "0"]).0, 1);
        assert_eq!(call(&["envelope", f.path().to_str().unwrap()]).0, 1);
    }
}
