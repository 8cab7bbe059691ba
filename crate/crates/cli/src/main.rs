//! `boxwell` — eigenenergies of power-law wells under hard-wall confinement.
//!
//! Exit codes: 0 success (including tables with per-cell errors), 1 solver
//! failure, 2 usage error.

mod config;
mod run;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{Format, Overrides, Settings};
use run::{usage, CliError, TableId};
use std::path::PathBuf;

use boxwell::model::{Geometry, Method, Parity, Potential};

#[derive(Parser)]
#[command(
    name = "boxwell",
    version,
    about = "Spectra of box-confined power-law wells via phase-integral and uniform-Airy quantization, checked against a finite-difference reference"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one eigenstate and print a single record
    Solve(SolveArgs),
    /// Regenerate a built-in benchmark table (t1, t2, or t3)
    Table(TableArgs),
    /// Tabulate a quantization residual over an energy grid
    Scan(ScanArgs),
    /// Mesh-refinement study of the finite-difference reference
    OracleConvergence(ConvergenceArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Convergence target for root refinement
    #[arg(long)]
    tol: Option<f64>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Significant digits in numeric output (1..=12)
    #[arg(long)]
    digits: Option<usize>,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the timestamp so repeated runs are byte-identical
    #[arg(long)]
    deterministic: bool,
    /// key=value defaults file; flags given here still win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Wkb,
    Maf,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Wkb => Method::Wkb,
            MethodArg::Maf => Method::Maf,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Sym,
    Anti,
    Half,
}

#[derive(Args)]
struct SolveArgs {
    /// Well shape: "power:p=2,s=1" (s defaults to 1) or "free"
    #[arg(long)]
    pot: String,
    /// Confinement: "sym:b=1" (walls at ±b) or "half:b=1" (walls at 0 and b)
    #[arg(long = "box")]
    box_spec: String,
    /// Solution route
    #[arg(long, value_enum)]
    method: MethodArg,
    /// State family; inferred for half-line boxes, required for symmetric ones
    #[arg(long, value_enum)]
    parity: Option<ParityArg>,
    /// Ordinal within the parity family (0 = lowest)
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Interior grid points for the reference solver
    #[arg(long)]
    mesh_points: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Which benchmark table: t1, t2, or t3
    table: String,
    /// Restrict to these methods (repeatable); default is all three
    #[arg(long, value_enum)]
    method: Vec<MethodArg>,
    /// Interior grid points for the reference solver
    #[arg(long)]
    mesh_points: Option<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ScanArgs {
    /// Well shape: "power:p=2,s=1" (s defaults to 1) or "free"
    #[arg(long)]
    pot: String,
    /// Confinement: "sym:b=1" or "half:b=1"
    #[arg(long = "box")]
    box_spec: String,
    /// Residual to tabulate: wkb or maf
    #[arg(long, value_enum)]
    method: MethodArg,
    /// State family; inferred for half-line boxes
    #[arg(long, value_enum)]
    parity: Option<ParityArg>,
    /// Low end of the energy grid (must be positive)
    #[arg(long)]
    from: f64,
    /// High end of the energy grid
    #[arg(long)]
    to: f64,
    /// Grid size including both endpoints
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ConvergenceArgs {
    /// Well shape: "power:p=2,s=1" (s defaults to 1) or "free"
    #[arg(long)]
    pot: String,
    /// Confinement: "sym:b=1" or "half:b=1"
    #[arg(long = "box")]
    box_spec: String,
    /// Global state index on the mesh (0 = ground state)
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Mesh sizes to refine through (needs at least 3 distinct values)
    #[arg(long, value_delimiter = ',', default_values_t = [256, 512, 1024, 2048])]
    mesh_points: Vec<usize>,
    #[command(flatten)]
    common: CommonArgs,
}

fn parse_pot(spec: &str) -> Result<Potential, CliError> {
    if spec == "free" {
        return Ok(Potential::Free);
    }
    let Some(body) = spec.strip_prefix("power:") else {
        return Err(usage(format!(
            "unknown potential {spec:?}; expected \"free\" or \"power:p=<exp>,s=<strength>\""
        )));
    };
    let mut exponent = None;
    let mut strength = 1.0;
    for part in body.split(',') {
        let Some((key, value)) = part.split_once('=') else {
            return Err(usage(format!(
                "malformed potential field {part:?}; expected key=value"
            )));
        };
        let value: f64 = value
            .parse()
            .map_err(|_| usage(format!("potential field {key}={value:?} is not a number")))?;
        match key {
            "p" => exponent = Some(value),
            "s" => strength = value,
            other => {
                return Err(usage(format!(
                    "unknown potential field {other:?}; expected p or s"
                )))
            }
        }
    }
    let Some(exponent) = exponent else {
        return Err(usage("power potential needs p=<exponent>".to_string()));
    };
    Potential::power(strength, exponent).map_err(|e| usage(e.to_string()))
}

fn parse_box(spec: &str) -> Result<Geometry, CliError> {
    let (make, body): (fn(f64) -> boxwell::Result<Geometry>, _) =
        if let Some(rest) = spec.strip_prefix("sym:") {
            (Geometry::symmetric, rest)
        } else if let Some(rest) = spec.strip_prefix("half:") {
            (Geometry::half_line, rest)
        } else {
            return Err(usage(format!(
                "unknown box {spec:?}; expected \"sym:b=<width>\" or \"half:b=<width>\""
            )));
        };
    let Some(value) = body.strip_prefix("b=") else {
        return Err(usage(format!("box {spec:?} needs b=<width>")));
    };
    let b: f64 = value
        .parse()
        .map_err(|_| usage(format!("box width {value:?} is not a number")))?;
    make(b).map_err(|e| usage(e.to_string()))
}

fn resolve_parity(geometry: &Geometry, arg: Option<ParityArg>) -> Result<Parity, CliError> {
    let half_box = matches!(geometry.mode, boxwell::model::BoxMode::HalfLineBox);
    match (half_box, arg) {
        (true, None) | (true, Some(ParityArg::Half)) => Ok(Parity::HalfLine),
        (true, Some(_)) => Err(usage(
            "a half-line box only carries half-line states; drop --parity or pass half".to_string(),
        )),
        (false, Some(ParityArg::Sym)) => Ok(Parity::Symmetric),
        (false, Some(ParityArg::Anti)) => Ok(Parity::Antisymmetric),
        (false, Some(ParityArg::Half)) => Err(usage(
            "half-line states need a half-line box; use --box half:b=<width>".to_string(),
        )),
        (false, None) => Err(usage(
            "a symmetric box needs --parity sym or --parity anti".to_string(),
        )),
    }
}

fn build_settings(common: &CommonArgs, mesh_points: Option<usize>) -> Result<Settings, CliError> {
    let overrides = Overrides {
        tol: common.tol,
        digits: common.digits,
        format: common.format,
        deterministic: common.deterministic,
        mesh_points,
    };
    Settings::resolve(common.config.as_deref(), &overrides).map_err(CliError::Usage)
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Cmd::Solve(args) => {
            let settings = build_settings(&args.common, args.mesh_points)?;
            let potential = parse_pot(&args.pot)?;
            let geometry = parse_box(&args.box_spec)?;
            let parity = resolve_parity(&geometry, args.parity)?;
            run::run_solve(
                &potential,
                &geometry,
                parity,
                args.n,
                Method::from(args.method),
                &settings,
                args.common.out.as_deref(),
            )
        }
        Cmd::Table(args) => {
            let settings = build_settings(&args.common, args.mesh_points)?;
            let id = TableId::parse(&args.table)?;
            let methods: Vec<Method> = if args.method.is_empty() {
                vec![Method::Wkb, Method::Maf, Method::Oracle]
            } else {
                args.method.iter().map(|&m| Method::from(m)).collect()
            };
            run::run_table(id, &methods, &settings, args.common.out.as_deref())
        }
        Cmd::Scan(args) => {
            let settings = build_settings(&args.common, None)?;
            if matches!(args.method, MethodArg::Oracle) {
                return Err(usage(
                    "scan tabulates quantization residuals; only wkb and maf have one".to_string(),
                ));
            }
            let potential = parse_pot(&args.pot)?;
            let geometry = parse_box(&args.box_spec)?;
            let parity = resolve_parity(&geometry, args.parity)?;
            run::run_scan(
                &potential,
                &geometry,
                parity,
                Method::from(args.method),
                &run::ScanGrid {
                    from: args.from,
                    to: args.to,
                    points: args.points,
                },
                &settings,
                args.common.out.as_deref(),
            )
        }
        Cmd::OracleConvergence(args) => {
            let settings = build_settings(&args.common, None)?;
            let potential = parse_pot(&args.pot)?;
            let geometry = parse_box(&args.box_spec)?;
            run::run_convergence(
                &potential,
                &geometry,
                args.n,
                &args.mesh_points,
                &settings,
                args.common.out.as_deref(),
            )
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Solver(e)) => {
            eprintln!("error[{}]: {e}", e.class());
            std::process::exit(1);
        }
        Err(CliError::Io(e)) => {
            eprintln!("error[io]: {e}");
            std::process::exit(1);
        }
    }
}
