//! Command implementations and output emitters. Every emitter renders the
//! same records: numeric payloads are rounded to the requested significant
//! digits once, up front, so the CSV, JSON, and markdown forms carry
//! identical values field for field.

use crate::config::{Format, Settings};
use boxwell::maf::maf_eigenvalue;
use boxwell::model::{EigenResult, Geometry, Method, Parity, Potential};
use boxwell::oracle::{oracle_convergence_report, oracle_eigenvalue, MeshSpec};
use boxwell::wkb::wkb_eigenvalue;
use boxwell::{maf_residual, wkb_residual};
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Solver(boxwell::Error),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `digits` significant digits; plain decimal for moderate magnitudes,
/// scientific outside them. Stable across runs by construction.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..9).contains(&exponent) {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.prec$e}", prec = digits - 1)
    }
}

// Round-trip through the formatter so serialized JSON numbers equal the
// CSV/markdown strings exactly.
fn round_sig(x: f64, digits: usize) -> f64 {
    fmt_sig(x, digits).parse().unwrap_or(x)
}

#[derive(Serialize)]
pub struct Record {
    table: String,
    b: f64,
    parity: &'static str,
    n: usize,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scaled_energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regime: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl Record {
    #[allow(clippy::too_many_arguments)]
    fn from_result(
        table: &str,
        b: f64,
        parity: Parity,
        n: usize,
        method: Method,
        outcome: Result<&EigenResult, &boxwell::Error>,
        unit: f64,
        reference: Option<f64>,
        digits: usize,
    ) -> Self {
        match outcome {
            Ok(r) => {
                let scaled = round_sig(r.energy / unit, digits);
                Record {
                    table: table.to_string(),
                    b,
                    parity: parity.label(),
                    n,
                    method: method.label(),
                    energy: Some(round_sig(r.energy, digits)),
                    scaled_energy: Some(scaled),
                    residual: Some(round_sig(r.residual, digits)),
                    regime: Some(r.regime.label()),
                    reference,
                    deviation: reference.map(|v| round_sig((r.energy / unit - v).abs(), digits)),
                    error: None,
                }
            }
            Err(e) => Record {
                table: table.to_string(),
                b,
                parity: parity.label(),
                n,
                method: method.label(),
                energy: None,
                scaled_energy: None,
                residual: None,
                regime: None,
                reference,
                deviation: None,
                error: Some(e.class().to_string()),
            },
        }
    }
}

pub struct Meta {
    entries: Vec<(&'static str, String)>,
}

impl Meta {
    pub fn new(settings: &Settings) -> Self {
        let mut entries = vec![
            ("tool", format!("boxwell {}", env!("CARGO_PKG_VERSION"))),
            ("tol", format!("{:e}", settings.tol)),
            ("digits", settings.digits.to_string()),
            ("mesh_points", settings.mesh_points.to_string()),
            ("config_digest", settings.digest()),
        ];
        if !settings.deterministic {
            let now = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            entries.push(("generated_unix", now.to_string()));
        }
        Meta { entries }
    }

    fn comment_lines(&self, out: &mut String) {
        for (k, v) in &self.entries {
            let _ = writeln!(out, "# {k}: {v}");
        }
    }

    fn html_comment_lines(&self, out: &mut String) {
        for (k, v) in &self.entries {
            let _ = writeln!(out, "<!-- {k}: {v} -->");
        }
    }

    fn json_object(&self) -> serde_json::Map<String, serde_json::Value> {
        self.entries
            .iter()
            .map(|(k, v)| ((*k).to_string(), serde_json::Value::String(v.clone())))
            .collect()
    }
}

pub const CSV_HEADER: &str =
    "table,b,parity,n,method,energy,scaled_energy,residual,regime,reference,deviation";

fn opt_num(v: Option<f64>, digits: usize) -> String {
    v.map(|x| fmt_sig(x, digits)).unwrap_or_default()
}

// The energy column doubles as the per-cell error marker so failed cells
// stay visible in every format.
fn energy_cell(r: &Record, digits: usize) -> String {
    match (&r.error, r.energy) {
        (Some(class), _) => format!("error:{class}"),
        (None, e) => opt_num(e, digits),
    }
}

pub fn emit_records(records: &[Record], meta: &Meta, format: Format, digits: usize) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            meta.comment_lines(&mut out);
            out.push_str(CSV_HEADER);
            out.push('\n');
            for r in records {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.table,
                    r.b,
                    r.parity,
                    r.n,
                    r.method,
                    energy_cell(r, digits),
                    opt_num(r.scaled_energy, digits),
                    opt_num(r.residual, digits),
                    r.regime.unwrap_or(""),
                    r.reference.map(|v| v.to_string()).unwrap_or_default(),
                    opt_num(r.deviation, digits),
                );
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "metadata": meta.json_object(),
                "rows": records,
            });
            out = serde_json::to_string_pretty(&doc).expect("static schema");
            out.push('\n');
        }
        Format::Md => {
            meta.html_comment_lines(&mut out);
            out.push_str(
                "| table | b | parity | n | method | energy | scaled_energy | residual | regime | reference | deviation |\n",
            );
            out.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
            for r in records {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                    r.table,
                    r.b,
                    r.parity,
                    r.n,
                    r.method,
                    energy_cell(r, digits),
                    opt_num(r.scaled_energy, digits),
                    opt_num(r.residual, digits),
                    r.regime.unwrap_or(""),
                    r.reference.map(|v| v.to_string()).unwrap_or_default(),
                    opt_num(r.deviation, digits),
                );
            }
        }
    }
    out
}

pub fn write_out(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn solve_one(
    method: Method,
    potential: &Potential,
    geometry: &Geometry,
    parity: Parity,
    n: usize,
    settings: &Settings,
) -> Result<EigenResult, boxwell::Error> {
    match method {
        Method::Wkb => wkb_eigenvalue(potential, geometry, parity, n, settings.tol),
        Method::Maf => maf_eigenvalue(potential, geometry, parity, n, settings.tol),
        Method::Oracle => oracle_eigenvalue(
            potential,
            geometry,
            parity,
            n,
            MeshSpec {
                points: settings.mesh_points,
            },
        ),
    }
}

pub fn run_solve(
    potential: &Potential,
    geometry: &Geometry,
    parity: Parity,
    n: usize,
    method: Method,
    settings: &Settings,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let result =
        solve_one(method, potential, geometry, parity, n, settings).map_err(CliError::Solver)?;
    let record = Record::from_result(
        "solve",
        geometry.b,
        parity,
        n,
        method,
        Ok(&result),
        1.0,
        None,
        settings.digits,
    );
    let meta = Meta::new(settings);
    let text = emit_records(&[record], &meta, settings.format, settings.digits);
    write_out(&text, out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    T1,
    T2,
    T3,
}

impl TableId {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "t1" => Ok(TableId::T1),
            "t2" => Ok(TableId::T2),
            "t3" => Ok(TableId::T3),
            other => Err(usage(format!(
                "unknown table {other:?}; expected t1, t2, or t3"
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            TableId::T1 => "t1",
            TableId::T2 => "t2",
            TableId::T3 => "t3",
        }
    }

    /// Potential, geometry mode, reporting unit, and (b, parity, ordinal)
    /// row list defining each built-in benchmark table.
    pub fn spec(self) -> (Potential, bool, f64, Vec<(f64, Parity, usize)>) {
        match self {
            TableId::T1 => (
                Potential::harmonic(),
                false,
                1.0,
                [0.5, 1.0, 1.5, 2.0, 3.0, 5.0]
                    .iter()
                    .map(|&b| (b, Parity::Antisymmetric, 0))
                    .collect(),
            ),
            TableId::T2 => (
                Potential::quartic(),
                false,
                PI * PI / 8.0,
                vec![
                    (1.0, Parity::Symmetric, 0),
                    (1.0, Parity::Antisymmetric, 0),
                    (1.0, Parity::Symmetric, 1),
                    (1.0, Parity::Antisymmetric, 1),
                ],
            ),
            TableId::T3 => (
                Potential::linear(),
                true,
                1.0,
                [0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0]
                    .iter()
                    .map(|&b| (b, Parity::HalfLine, 0))
                    .collect(),
            ),
        }
    }
}

// Published benchmark energies bundled as data; see the file header for the
// schema. Parsed on demand — the table is tiny.
const REFERENCE_DATA: &str = include_str!("../data/reference_values.txt");

pub fn reference_value(
    table: &str,
    b: f64,
    parity: Parity,
    n: usize,
    method: Method,
) -> Option<f64> {
    let state = format!("{}{n}", parity.label());
    let column = match method {
        Method::Wkb => "wkb",
        Method::Maf => "maf",
        Method::Oracle => "exact",
    };
    let b_key = format!("{b}");
    for line in REFERENCE_DATA.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split(',');
        let (t, bv, st, col, val) = (
            fields.next()?,
            fields.next()?,
            fields.next()?,
            fields.next()?,
            fields.next()?,
        );
        if t == table && bv == b_key && st == state && col == column {
            return val.trim().parse().ok();
        }
    }
    None
}

pub fn run_table(
    id: TableId,
    methods: &[Method],
    settings: &Settings,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let (potential, half_line, unit, rows) = id.spec();
    let digits = settings.digits;
    // One worker per row; assembly order is the declaration order, so the
    // output is deterministic regardless of scheduling.
    let computed: Vec<Vec<Record>> = std::thread::scope(|scope| {
        let handles: Vec<_> = rows
            .iter()
            .map(|&(b, parity, n)| {
                let potential = &potential;
                scope.spawn(move || {
                    let geometry = if half_line {
                        Geometry::half_line(b).expect("table widths are valid")
                    } else {
                        Geometry::symmetric(b).expect("table widths are valid")
                    };
                    methods
                        .iter()
                        .map(|&method| {
                            let outcome =
                                solve_one(method, potential, &geometry, parity, n, settings);
                            let reference = reference_value(id.label(), b, parity, n, method);
                            Record::from_result(
                                id.label(),
                                b,
                                parity,
                                n,
                                method,
                                outcome.as_ref(),
                                unit,
                                reference,
                                digits,
                            )
                        })
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("row worker"))
            .collect()
    });
    let records: Vec<Record> = computed.into_iter().flatten().collect();
    let meta = Meta::new(settings);
    let text = emit_records(&records, &meta, settings.format, digits);
    write_out(&text, out)
}

#[derive(Serialize)]
struct ScanRecord {
    energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub struct ScanGrid {
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

pub fn run_scan(
    potential: &Potential,
    geometry: &Geometry,
    parity: Parity,
    method: Method,
    grid: &ScanGrid,
    settings: &Settings,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let ScanGrid { from, to, points } = *grid;
    if !from.is_finite() || !to.is_finite() || from <= 0.0 || to <= from {
        return Err(usage(format!(
            "scan range must satisfy 0 < from < to, got {from}..{to}"
        )));
    }
    if points < 2 {
        return Err(usage(format!("scan needs at least 2 points, got {points}")));
    }
    let digits = settings.digits;
    let records: Vec<ScanRecord> = (0..points)
        .map(|i| {
            let e = from + (to - from) * i as f64 / (points - 1) as f64;
            let value = match method {
                Method::Wkb => wkb_residual(potential, geometry, parity, e),
                Method::Maf => maf_residual(potential, geometry, parity, e),
                Method::Oracle => unreachable!("rejected during argument parsing"),
            };
            match value {
                Ok(r) => ScanRecord {
                    energy: round_sig(e, digits),
                    residual: Some(round_sig(r, digits)),
                    error: None,
                },
                Err(err) => ScanRecord {
                    energy: round_sig(e, digits),
                    residual: None,
                    error: Some(err.class().to_string()),
                },
            }
        })
        .collect();
    let meta = Meta::new(settings);
    let mut text = String::new();
    match settings.format {
        Format::Csv => {
            meta.comment_lines(&mut text);
            text.push_str("energy,residual\n");
            for r in &records {
                let cell = match (&r.error, r.residual) {
                    (Some(class), _) => format!("error:{class}"),
                    (None, v) => opt_num(v, digits),
                };
                let _ = writeln!(text, "{},{}", fmt_sig(r.energy, digits), cell);
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "metadata": meta.json_object(),
                "rows": records,
            });
            text = serde_json::to_string_pretty(&doc).expect("static schema");
            text.push('\n');
        }
        Format::Md => {
            meta.html_comment_lines(&mut text);
            text.push_str("| energy | residual |\n|---|---|\n");
            for r in &records {
                let cell = match (&r.error, r.residual) {
                    (Some(class), _) => format!("error:{class}"),
                    (None, v) => opt_num(v, digits),
                };
                let _ = writeln!(text, "| {} | {} |", fmt_sig(r.energy, digits), cell);
            }
        }
    }
    write_out(&text, out)
}

#[derive(Serialize)]
struct ConvergenceRecord {
    h: f64,
    energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<f64>,
}

pub fn run_convergence(
    potential: &Potential,
    geometry: &Geometry,
    n: usize,
    mesh_points: &[usize],
    settings: &Settings,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mut points: Vec<usize> = mesh_points.to_vec();
    points.sort_unstable();
    points.dedup();
    if points.len() < 3 {
        return Err(usage(format!(
            "convergence study needs at least 3 distinct mesh sizes, got {points:?}"
        )));
    }
    let meshes: Vec<MeshSpec> = points.iter().map(|&p| MeshSpec { points: p }).collect();
    let report =
        oracle_convergence_report(potential, geometry, n, &meshes).map_err(CliError::Solver)?;
    let digits = settings.digits;
    let records: Vec<ConvergenceRecord> = report
        .rows
        .iter()
        .map(|r| ConvergenceRecord {
            h: round_sig(r.h, digits),
            energy: round_sig(r.energy, digits),
            order: r.order.map(|o| round_sig(o, digits)),
        })
        .collect();
    let limit = round_sig(report.limit, digits);
    let meta = Meta::new(settings);
    let mut text = String::new();
    match settings.format {
        Format::Csv => {
            meta.comment_lines(&mut text);
            let _ = writeln!(text, "# limit: {}", fmt_sig(limit, digits));
            for w in &report.warnings {
                let _ = writeln!(text, "# warning: {w}");
            }
            text.push_str("h,energy,order\n");
            for r in &records {
                let _ = writeln!(
                    text,
                    "{},{},{}",
                    fmt_sig(r.h, digits),
                    fmt_sig(r.energy, digits),
                    opt_num(r.order, digits)
                );
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "metadata": meta.json_object(),
                "rows": records,
                "limit": limit,
                "warnings": report.warnings,
            });
            text = serde_json::to_string_pretty(&doc).expect("static schema");
            text.push('\n');
        }
        Format::Md => {
            meta.html_comment_lines(&mut text);
            let _ = writeln!(text, "<!-- limit: {} -->", fmt_sig(limit, digits));
            for w in &report.warnings {
                let _ = writeln!(text, "<!-- warning: {w} -->");
            }
            text.push_str("| h | energy | order |\n|---|---|---|\n");
            for r in &records {
                let _ = writeln!(
                    text,
                    "| {} | {} | {} |",
                    fmt_sig(r.h, digits),
                    fmt_sig(r.energy, digits),
                    opt_num(r.order, digits)
                );
            }
        }
    }
    write_out(&text, out)
}
