//! Measure documents (JSON), recurrence tables and scan reports (CSV), scan
//! summaries (JSON).
//!
//! CSV numbers are written with 17 significant digits so that every double
//! survives a round trip; lines end in `\n`. Lines starting with `#` carry
//! metadata and are skipped by the data readers.

use std::fmt;

use christoffel_core::measure::{AlgebraicSingularity, GJMeasure, Interval, SmoothFactor};
use christoffel_core::orthopoly::RecurrenceTable;
use christoffel_core::poly::Polynomial;
use christoffel_core::universality::{ScanReport, ScanRow};
use christoffel_core::Error;
use serde::{Deserialize, Serialize};

pub const SCAN_HEADER: &str = "n,a,b,measured,predicted,abs_err,rel_err";
pub const TABLE_HEADER: &str = "k,b_k,a_k";

#[derive(Debug)]
pub enum FormatError {
    Json(serde_json::Error),
    Csv { line: usize, message: String },
    Core(Error),
}

impl FormatError {
    fn csv(line: usize, message: impl Into<String>) -> Self {
        FormatError::Csv { line, message: message.into() }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json(e) => write!(f, "malformed document: {e}"),
            FormatError::Csv { line, message } => write!(f, "line {line}: {message}"),
            FormatError::Core(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

impl From<Error> for FormatError {
    fn from(e: Error) -> Self {
        FormatError::Core(e)
    }
}

/// A double in scientific notation with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureDoc {
    intervals: Vec<[f64; 2]>,
    #[serde(default)]
    singularities: Vec<SingularityDoc>,
    #[serde(default)]
    smooth: SmoothDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SingularityDoc {
    x0: f64,
    alpha: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum SmoothDoc {
    Const(f64),
    Poly(Vec<f64>),
}

impl Default for SmoothDoc {
    fn default() -> Self {
        SmoothDoc::Const(1.0)
    }
}

/// Parses a measure document; `singularities` defaults to none and `smooth`
/// to the constant 1.
pub fn parse_measure(text: &str) -> Result<GJMeasure, FormatError> {
    let doc: MeasureDoc = serde_json::from_str(text)?;
    let intervals = doc
        .intervals
        .iter()
        .map(|&[lo, hi]| Interval::new(lo, hi))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Error::schema("intervals", e.to_string()))?;
    let singularities =
        doc.singularities.iter().map(|s| AlgebraicSingularity { location: s.x0, exponent: s.alpha }).collect();
    let smooth = match doc.smooth {
        SmoothDoc::Const(c) => SmoothFactor::Constant(c),
        SmoothDoc::Poly(c) => {
            SmoothFactor::Polynomial(Polynomial::new(c).map_err(|e| Error::schema("smooth.poly", e.to_string()))?)
        }
    };
    Ok(GJMeasure::new(intervals, singularities, smooth)?)
}

pub fn measure_to_json(mu: &GJMeasure) -> String {
    let doc = MeasureDoc {
        intervals: mu.intervals().iter().map(|iv| [iv.lo, iv.hi]).collect(),
        singularities: mu
            .singularities()
            .iter()
            .map(|s| SingularityDoc { x0: s.location, alpha: s.exponent })
            .collect(),
        smooth: match mu.smooth() {
            SmoothFactor::Constant(c) => SmoothDoc::Const(*c),
            SmoothFactor::Polynomial(p) => SmoothDoc::Poly(p.coeffs().to_vec()),
        },
    };
    serde_json::to_string_pretty(&doc).expect("measure documents always serialize") + "\n"
}

/// Interval list as a measure document with the default weight.
pub fn intervals_to_json(intervals: &[Interval]) -> String {
    let doc = MeasureDoc {
        intervals: intervals.iter().map(|iv| [iv.lo, iv.hi]).collect(),
        singularities: Vec::new(),
        smooth: SmoothDoc::default(),
    };
    serde_json::to_string_pretty(&doc).expect("interval documents always serialize") + "\n"
}

/// `k,b_k,a_k` rows, preceded by a `# mass=...` line: the mass is part of
/// the table but has no column.
pub fn table_to_csv(table: &RecurrenceTable) -> String {
    let mut s = format!("# mass={}\n{TABLE_HEADER}\n", fmt_f64(table.mass()));
    for k in 0..table.size() {
        let a = if k == 0 { String::new() } else { fmt_f64(table.a(k)) };
        s.push_str(&format!("{k},{},{a}\n", fmt_f64(table.b(k))));
    }
    s
}

fn parse_num(line: usize, field: &str, v: &str) -> Result<f64, FormatError> {
    v.trim().parse().map_err(|_| FormatError::csv(line, format!("`{field}` is not a number: `{v}`")))
}

type Records<'a> = Vec<(usize, Vec<&'a str>)>;
type Metadata<'a> = Vec<(&'a str, &'a str)>;

/// Splits into `(line number, fields)` after checking the header; collects
/// `key=value` pairs from `#` lines.
fn csv_records<'a>(text: &'a str, header: &str) -> Result<(Records<'a>, Metadata<'a>), FormatError> {
    let mut meta = Vec::new();
    let mut rows = Vec::new();
    let mut seen_header = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if let Some(rest) = raw.strip_prefix('#') {
            meta.extend(rest.split_whitespace().filter_map(|kv| kv.split_once('=')));
            continue;
        }
        if raw.trim().is_empty() {
            continue;
        }
        if !seen_header {
            if raw.trim() != header {
                return Err(FormatError::csv(line, format!("expected header `{header}`")));
            }
            seen_header = true;
            continue;
        }
        rows.push((line, raw.split(',').collect()));
    }
    if !seen_header {
        return Err(FormatError::csv(1, format!("missing header `{header}`")));
    }
    Ok((rows, meta))
}

pub fn table_from_csv(text: &str) -> Result<RecurrenceTable, FormatError> {
    let (rows, meta) = csv_records(text, TABLE_HEADER)?;
    let mass = meta
        .iter()
        .find(|kv| kv.0 == "mass")
        .ok_or_else(|| FormatError::csv(1, "missing `# mass=` line"))
        .and_then(|kv| parse_num(1, "mass", kv.1))?;
    let mut diag = Vec::with_capacity(rows.len());
    let mut offdiag = Vec::with_capacity(rows.len());
    for (k, (line, f)) in rows.iter().enumerate() {
        if f.len() != 3 {
            return Err(FormatError::csv(*line, "expected 3 fields"));
        }
        if f[0].trim() != k.to_string() {
            return Err(FormatError::csv(*line, format!("expected k = {k}")));
        }
        diag.push(parse_num(*line, "b_k", f[1])?);
        match (k, f[2].trim()) {
            (0, "") => {}
            (0, _) => return Err(FormatError::csv(*line, "a_0 must be empty")),
            (_, v) => offdiag.push(parse_num(*line, "a_k", v)?),
        }
    }
    Ok(RecurrenceTable::new(mass, diag, offdiag)?)
}

pub fn scan_to_csv(report: &ScanReport, metadata: Option<&str>) -> String {
    let mut s = String::new();
    if let Some(m) = metadata {
        s.push_str(&format!("# {m}\n"));
    }
    s.push_str(SCAN_HEADER);
    s.push('\n');
    for r in &report.rows {
        let fields = [r.a, r.b, r.measured, r.predicted, r.abs_err, r.rel_err].map(fmt_f64);
        s.push_str(&format!("{},{}\n", r.n, fields.join(",")));
    }
    s
}

pub fn scan_rows_from_csv(text: &str) -> Result<Vec<ScanRow>, FormatError> {
    let (rows, _) = csv_records(text, SCAN_HEADER)?;
    rows.iter()
        .map(|(line, f)| {
            if f.len() != 7 {
                return Err(FormatError::csv(*line, "expected 7 fields"));
            }
            let n = f[0].trim().parse().map_err(|_| FormatError::csv(*line, "`n` is not a positive integer"))?;
            let names = ["a", "b", "measured", "predicted", "abs_err", "rel_err"];
            let mut v = [0.0; 6];
            for (i, name) in names.iter().enumerate() {
                v[i] = parse_num(*line, name, f[i + 1])?;
            }
            Ok(ScanRow { n, a: v[0], b: v[1], measured: v[2], predicted: v[3], abs_err: v[4], rel_err: v[5] })
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct ConstantsDoc {
    omega: Option<f64>,
    edge_constant: Option<f64>,
    local_weight: f64,
    eta: Vec<(usize, f64)>,
}

#[derive(Debug, Serialize)]
struct SummaryDoc<'a> {
    mode: &'a str,
    x0: f64,
    alpha: f64,
    rows: usize,
    max_abs_err_by_n: Vec<(usize, f64)>,
    max_rel_err: f64,
    fitted_order: Option<f64>,
    constants: ConstantsDoc,
    pass: Option<bool>,
}

/// Summary of a scan; `pass` is set when a tolerance on the largest
/// relative error was requested.
pub fn scan_summary_json(report: &ScanReport, tol: Option<f64>) -> String {
    let c = &report.constants;
    let doc = SummaryDoc {
        mode: report.mode.name(),
        x0: report.x0,
        alpha: report.alpha,
        rows: report.rows.len(),
        max_abs_err_by_n: report.max_abs_err_by_n(),
        max_rel_err: report.max_rel_err(),
        fitted_order: report.fitted_order,
        constants: ConstantsDoc {
            omega: c.omega,
            edge_constant: c.edge_constant,
            local_weight: c.local_weight,
            eta: c.eta.clone(),
        },
        pass: tol.map(|t| report.max_rel_err() <= t),
    };
    serde_json::to_string_pretty(&doc).expect("summaries always serialize") + "\n"
}
