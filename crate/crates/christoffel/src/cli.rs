//! The `christoffel` command line.
//!
//! Exit codes: 0 success, 2 invalid input or usage, 3 numeric failure,
//! 4 a `verify` suite ran but did not pass.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use christoffel_core::cdkernel::{christoffel, kernel_cd, kernel_zeros};
use christoffel_core::measure::GJMeasure;
use christoffel_core::orthopoly::{recurrence_table, RecurrenceTable};
use christoffel_core::potential::{
    density_at_eq, edge_constant, equilibrium_density, inverse_image, inverse_image_density, AdmissiblePolynomial,
    EquilibriumDensity, IntervalSystem,
};
use christoffel_core::specfun::{kernel_j, kernel_l_entire_real, KernelVariant};
use christoffel_core::universality::{scan_bulk, scan_edge, ScanConfig, ScanMode, ScanReport};
use christoffel_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::io::{self, fmt_f64, FormatError};
use crate::suites::{run_suite, SuiteOptions, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_ACCEPTANCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "christoffel", version, about = "Christoffel-Darboux kernels and their universality limits")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Recurrence table `k,b_k,a_k` of size `n` for a measure.
    Recur {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// `K_n(x, y)` for a measure, or a limit kernel `L*_alpha(a, b)` / `J*_alpha(a, b)`.
    Kernel {
        #[arg(long, value_enum, default_value = "cd")]
        kind: KernelKind,
        #[arg(long)]
        measure: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        /// Second point; defaults to `x`.
        #[arg(long, allow_negative_numbers = true)]
        y: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        /// Defaults to `a`.
        #[arg(long, allow_negative_numbers = true)]
        b: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// `lambda_n(x)` at one point or on a grid.
    Christoffel {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
        #[command(flatten)]
        out: Output,
    },
    /// Equilibrium density of the support of a measure or of `T^{-1}([-1, 1])`.
    Equilibrium {
        #[arg(long, conflicts_with = "poly")]
        measure: Option<PathBuf>,
        /// Coefficients `c0,c1,...` of an admissible polynomial.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<Coeffs>,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
        /// Band endpoint at which to report `M(K, x0)`.
        #[arg(long, allow_negative_numbers = true)]
        edge: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Bands of `T^{-1}([-1, 1])` as a measure document, or its density at a point.
    InverseImage {
        #[arg(long, allow_hyphen_values = true)]
        poly: Coeffs,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// Bulk scan `n^{alpha+1} lambda_n(x0 + a/n)` or kernel ratios at an interior point.
    ScanBulk(ScanArgs),
    /// Hard-edge scan `n^{2alpha+2} lambda_n(x0 -+ a/(2n^2))` or kernel ratios at an endpoint.
    ScanEdge(ScanArgs),
    /// Runs a named acceptance suite and prints its JSON summary.
    Verify {
        /// One of the suite names, or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long)]
        nmax: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Zeros `t_k` of `psi_n(xi, .)` around `xi`.
    Zeros {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        n: usize,
        /// The point `xi`.
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 5)]
        window: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    /// `K_n(x, y)` of a measure.
    Cd,
    /// `L*_alpha(a, b)`.
    Bulk,
    /// `J*_alpha(a, b)`.
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Lambda,
    Ratio,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    measure: PathBuf,
    /// The point `x0`.
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// Exponent at `x0`; defaults to the one in the measure.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Degrees `n1,n2,...`.
    #[arg(long, conflicts_with = "nmax")]
    n: Option<NList>,
    /// Shorthand for `n = nmax/8, nmax/4, nmax/2, nmax`.
    #[arg(long)]
    nmax: Option<usize>,
    /// Grid of `a` values.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "a")]
    grid: Option<Grid>,
    /// Explicit `a` values `a1,a2,...`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<Coeffs>,
    /// `b` values for ratio scans; defaults to the `a` values.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<Coeffs>,
    #[arg(long, value_enum, default_value = "lambda")]
    quantity: Quantity,
    /// Sets `pass` in the JSON summary to `max rel_err <= tol`.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    out: Output,
}

/// `lo:hi:step`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl std::str::FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number")))
            .collect::<Result<_, _>>()?;
        let [lo, hi, step] = parts[..] else {
            return Err("grid must be lo:hi:step".into());
        };
        if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
            return Err("grid needs lo <= hi and step > 0".into());
        }
        let m = ((hi - lo) / step * (1.0 + 1e-12)).floor();
        if m > 1e6 {
            return Err("grid has more than a million points".into());
        }
        Ok(Grid((0..=m as usize).map(|i| lo + i as f64 * step).collect()))
    }
}

/// Comma-separated reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Coeffs(pub Vec<f64>);

impl std::str::FromStr for Coeffs {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number")))
            .collect::<Result<_, _>>()
            .map(Coeffs)
    }
}

/// Comma-separated positive integers.
#[derive(Debug, Clone, PartialEq)]
pub struct NList(pub Vec<usize>);

impl std::str::FromStr for NList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| format!("`{p}` is not a positive integer")))
            .collect::<Result<_, _>>()
            .map(NList)
    }
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Numeric(String),
    Acceptance,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(m) | Failure::Numeric(m) => f.write_str(m),
            Failure::Acceptance => f.write_str("acceptance suite failed"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Invalid(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Core(e) => e.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

/// Runs the command line with `argv[0]` the program name, writing data to
/// `stdout` and diagnostics to `stderr`.
pub fn run_with(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.verb, argv, stdout) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            match f {
                Failure::Invalid(_) => EXIT_INVALID,
                Failure::Numeric(_) => EXIT_NUMERIC,
                Failure::Acceptance => EXIT_ACCEPTANCE,
            }
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn read_measure(path: &PathBuf) -> Result<GJMeasure, Failure> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    io::parse_measure(&text).map_err(|e| match e {
        FormatError::Core(c) => c.into(),
        other => invalid(format!("{}: {other}", path.display())),
    })
}

fn emit(out: &Output, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &out.out {
        Some(p) => fs::write(p, text).map_err(|e| invalid(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| invalid(format!("cannot write output: {e}"))),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data always serializes") + "\n"
}

/// Table with room for `p_n`, so that the Christoffel-Darboux formula applies.
fn table_for(mu: &GJMeasure, n: usize) -> Result<RecurrenceTable, Failure> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    Ok(recurrence_table(mu, n + 1)?)
}

/// `x,value` CSV or a JSON list of pairs.
fn emit_pairs(out: &Output, header: &str, rows: &[(f64, f64)], stdout: &mut dyn Write) -> Result<(), Failure> {
    let text = match out.format {
        Format::Csv => {
            let mut s = format!("{header}\n");
            for (x, v) in rows {
                s.push_str(&format!("{},{}\n", fmt_f64(*x), fmt_f64(*v)));
            }
            s
        }
        Format::Json => json(&rows),
    };
    emit(out, &text, stdout)
}

fn emit_scalar(out: &Output, value: f64, stdout: &mut dyn Write) -> Result<(), Failure> {
    let text = match out.format {
        Format::Csv => format!("{value}\n"),
        Format::Json => json(&value),
    };
    emit(out, &text, stdout)
}

fn execute(verb: Verb, argv: &[String], stdout: &mut dyn Write) -> Result<(), Failure> {
    match verb {
        Verb::Recur { measure, n, out } => {
            let mu = read_measure(&measure)?;
            if n == 0 {
                return Err(invalid("n must be positive"));
            }
            let table = recurrence_table(&mu, n)?;
            let text = match out.format {
                Format::Csv => io::table_to_csv(&table),
                Format::Json => json(&serde_json::json!({
                    "mass": table.mass(),
                    "b": table.diag(),
                    "a": table.offdiag(),
                })),
            };
            emit(&out, &text, stdout)
        }
        Verb::Kernel { kind, measure, n, x, y, alpha, a, b, out } => {
            let value = match kind {
                KernelKind::Cd => {
                    let (Some(measure), Some(n), Some(x)) = (measure, n, x) else {
                        return Err(invalid("kernel --kind cd needs --measure, --n and --x"));
                    };
                    let mu = read_measure(&measure)?;
                    kernel_cd(&table_for(&mu, n)?, n, x, y.unwrap_or(x))?
                }
                KernelKind::Bulk | KernelKind::Edge => {
                    let (Some(alpha), Some(a)) = (alpha, a) else {
                        return Err(invalid("limit kernels need --alpha and --a"));
                    };
                    let b = b.unwrap_or(a);
                    if kind == KernelKind::Bulk {
                        kernel_l_entire_real(alpha, a, b)?
                    } else {
                        kernel_j(alpha, a, b, KernelVariant::Entire)?
                    }
                }
            };
            emit_scalar(&out, value, stdout)
        }
        Verb::Christoffel { measure, n, x, grid, out } => {
            let mu = read_measure(&measure)?;
            let table = table_for(&mu, n)?;
            match (x, grid) {
                (Some(x), None) => emit_scalar(&out, christoffel(&table, n, x)?, stdout),
                (None, Some(Grid(xs))) => {
                    let rows =
                        xs.iter().map(|&x| Ok((x, christoffel(&table, n, x)?))).collect::<Result<Vec<_>, Error>>()?;
                    emit_pairs(&out, "x,lambda", &rows, stdout)
                }
                _ => Err(invalid("christoffel needs exactly one of --x and --grid")),
            }
        }
        Verb::Equilibrium { measure, poly, at, grid, edge, out } => {
            let system = match (measure, poly) {
                (Some(m), None) => IntervalSystem::new(read_measure(&m)?.intervals().to_vec())?,
                (None, Some(Coeffs(c))) => inverse_image(&AdmissiblePolynomial::new(c)?)?,
                _ => return Err(invalid("equilibrium needs --measure or --poly")),
            };
            let eq = equilibrium_density(&system)?;
            match (at, grid, edge) {
                (Some(x), None, None) => emit_scalar(&out, density_at_eq(&eq, x)?, stdout),
                (None, Some(Grid(xs)), None) => {
                    let rows =
                        xs.iter().map(|&x| Ok((x, density_at_eq(&eq, x)?))).collect::<Result<Vec<_>, Error>>()?;
                    emit_pairs(&out, "x,omega", &rows, stdout)
                }
                (None, None, Some(x0)) => emit_scalar(&out, edge_constant(&eq, x0)?, stdout),
                (None, None, None) => emit(&out, &bands_json(&eq), stdout),
                _ => Err(invalid("give at most one of --at, --grid and --edge")),
            }
        }
        Verb::InverseImage { poly: Coeffs(c), at, out } => {
            let t = AdmissiblePolynomial::new(c)?;
            match at {
                Some(x) => emit_scalar(&out, inverse_image_density(&t, x)?, stdout),
                None => emit(&out, &io::intervals_to_json(inverse_image(&t)?.intervals()), stdout),
            }
        }
        Verb::ScanBulk(args) => scan(args, false, argv, stdout),
        Verb::ScanEdge(args) => scan(args, true, argv, stdout),
        Verb::Verify { suite, alpha, nmax, out } => {
            let opts = SuiteOptions { alpha, nmax };
            let names: Vec<&str> =
                if suite == "all" { SUITES.iter().map(|s| s.1).collect() } else { vec![suite.as_str()] };
            let mut outcomes = Vec::new();
            for name in names {
                outcomes.push(run_suite(name, &opts)?);
            }
            let pass = outcomes.iter().all(|o| o.pass);
            let text = if outcomes.len() == 1 {
                json(&outcomes[0])
            } else {
                json(&serde_json::json!({ "pass": pass, "suites": outcomes }))
            };
            emit(&out, &text, stdout)?;
            if pass {
                Ok(())
            } else {
                Err(Failure::Acceptance)
            }
        }
        Verb::Zeros { measure, n, x, window, out } => {
            let mu = read_measure(&measure)?;
            let zs = kernel_zeros(&table_for(&mu, n)?, n, x, window)?;
            let text = match out.format {
                Format::Csv => {
                    let mut s = String::from("k,t\n");
                    for (k, t) in zs.indexed() {
                        s.push_str(&format!("{k},{}\n", fmt_f64(t)));
                    }
                    s
                }
                Format::Json => json(&serde_json::json!({
                    "center": zs.center,
                    "k_min": zs.k_min,
                    "zeros": zs.zeros,
                    "exterior": zs.exterior,
                })),
            };
            emit(&out, &text, stdout)
        }
    }
}

fn bands_json(eq: &EquilibriumDensity) -> String {
    let bands: Vec<[f64; 2]> = eq.bands().iter().map(|b| [b.lo, b.hi]).collect();
    json(&serde_json::json!({ "bands": bands, "total": eq.total() }))
}

fn scan(args: ScanArgs, edge: bool, argv: &[String], stdout: &mut dyn Write) -> Result<(), Failure> {
    let mu = read_measure(&args.measure)?;
    let n_list = match (args.n, args.nmax) {
        (Some(NList(v)), None) => v,
        (None, Some(nmax)) => {
            let mut v: Vec<usize> = [8, 4, 2, 1].iter().map(|d| nmax / d).filter(|&n| n > 0).collect();
            v.dedup();
            v
        }
        _ => return Err(invalid("scans need --n or --nmax")),
    };
    let a_grid = match (args.grid, args.a) {
        (Some(Grid(g)), None) => g,
        (None, Some(Coeffs(a))) => a,
        (None, None) => vec![0.0],
        _ => unreachable!("clap rejects --grid with --a"),
    };
    let b_grid = args.b.map_or_else(|| a_grid.clone(), |Coeffs(b)| b);
    let alpha = args.alpha.unwrap_or_else(|| mu.singularity_at(args.x).map_or(0.0, |s| s.exponent));
    let mode = match (edge, args.quantity) {
        (false, Quantity::Lambda) => ScanMode::BulkLambda,
        (false, Quantity::Ratio) => ScanMode::BulkRatio,
        (true, Quantity::Lambda) => ScanMode::EdgeLambda,
        (true, Quantity::Ratio) => ScanMode::EdgeRatio,
    };
    let nmax = *n_list.iter().max().ok_or_else(|| invalid("empty --n"))?;
    let table = table_for(&mu, nmax)?;
    let eq = equilibrium_density(&IntervalSystem::new(mu.intervals().to_vec())?)?;
    let cfg = ScanConfig { measure: mu, x0: args.x, alpha, a_grid, b_grid, n_list, mode };
    let report: ScanReport = if edge { scan_edge(&cfg, &table, &eq)? } else { scan_bulk(&cfg, &table, &eq)? };
    let text = match args.out.format {
        Format::Csv => io::scan_to_csv(&report, Some(&argv[1..].join(" "))),
        Format::Json => io::scan_summary_json(&report, args.tol),
    };
    emit(&args.out, &text, stdout)
}
