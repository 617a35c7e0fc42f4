//! `zetaspec` command line: extension spectra, boundary-set kernels,
//! verification suites, and plot-ready data.
//!
//! Exit codes: 0 ok, 2 numeric failure, 3 degenerate input, 4 group-membership
//! failure, 64 usage.

mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;
use zetaspec::kernel::{
    extension_spectrum, gram, is_in_gf, matrix_from_rows, matrix_rows, vandermonde_det,
    BoundarySet, GROUP_TOL,
};
use zetaspec::spectral::{self, ExtensionParameter};
use zetaspec::{Error, SeriesControl};

const EXIT_NUMERIC: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_GROUP: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "zetaspec",
    about = "Spectra of selfadjoint extensions of z d/dz"
)]
struct Cli {
    /// Optional key=value config file providing defaults for missing flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalue table of the extension with angle theta.
    Spectrum(SpectrumArgs),
    /// Gram kernel of a finite boundary set, its eigenvalues, and the
    /// Vandermonde determinant magnitude.
    Kernel(KernelArgs),
    /// Per-interval spectrum of the extension H_M of a boundary-set
    /// restriction.
    ExtensionSpectrum(ExtArgs),
    /// Run a module invariant suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Sampled curves behind the figures (poles masked).
    Plotdata(PlotArgs),
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    /// Extension angle in (-pi, pi].
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct KernelArgs {
    /// Comma-separated boundary angles in [0, 1).
    #[arg(long)]
    points: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct ExtArgs {
    #[arg(long)]
    points: Option<String>,
    /// JSON file with the candidate matrix as row-major [re, im] pairs.
    #[arg(long)]
    matrix_file: Option<PathBuf>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[arg(long, value_enum)]
    kind: Option<PlotKind>,
    /// Sampling range "lo:hi".
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Suite {
    Specfun,
    Spectral,
    Kernel,
    Boundary,
    Forms,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum PlotKind {
    G,
    Z,
    LambdaVsTheta,
    ProjectionNorm,
}

/// 17 significant digits, lowercase scientific.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn numeric_error(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::DegenerateSet { .. } => ExitCode::from(EXIT_DEGENERATE),
        Error::GroupMembership { .. } => ExitCode::from(EXIT_GROUP),
        Error::Domain(_) | Error::Dimension { .. } => ExitCode::from(EXIT_USAGE),
        _ => ExitCode::from(EXIT_NUMERIC),
    }
}

/// Defaults from a `key=value` config file, applied to flags left unset.
fn load_config(path: &Option<PathBuf>) -> Result<HashMap<String, String>, String> {
    let mut map = HashMap::new();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line is not key=value: {line}"))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    Ok(map)
}

fn fill<T: std::str::FromStr>(
    slot: Option<T>,
    key: &str,
    cfg: &HashMap<String, String>,
) -> Result<Option<T>, String> {
    if slot.is_some() {
        return Ok(slot);
    }
    match cfg.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| format!("config value for {key} is invalid: {raw}")),
    }
}

fn parse_points(raw: &str) -> Result<BoundarySet, String> {
    let mut angles = Vec::new();
    for part in raw.split(',') {
        angles.push(
            part.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid angle: {part}"))?,
        );
    }
    BoundarySet::new(angles).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cfg = match load_config(&cli.config) {
        Ok(cfg) => cfg,
        Err(msg) => return usage(&msg),
    };
    match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args, &cfg),
        Command::Kernel(args) => cmd_kernel(args, &cfg),
        Command::ExtensionSpectrum(args) => cmd_extension_spectrum(args, &cfg),
        Command::Verify(args) => cmd_verify(args, &cfg),
        Command::Plotdata(args) => cmd_plotdata(args, &cfg),
    }
}

#[derive(Serialize)]
struct SpectrumRow {
    n: u32,
    lambda: f64,
    lo: Option<f64>,
    hi: f64,
    residual: f64,
}

fn cmd_spectrum(args: SpectrumArgs, cfg: &HashMap<String, String>) -> ExitCode {
    let theta = match fill(args.theta, "theta", cfg) {
        Ok(Some(t)) => t,
        Ok(None) => return usage("--theta is required"),
        Err(m) => return usage(&m),
    };
    let n_max = match fill(args.n_max, "n_max", cfg) {
        Ok(v) => v.unwrap_or(10),
        Err(m) => return usage(&m),
    };
    let format = args.format.unwrap_or(Format::Csv);
    let param = match ExtensionParameter::new(theta) {
        Ok(p) => p,
        Err(e) => return usage(&e.to_string()),
    };
    let table = match spectral::spectrum(param, n_max) {
        Ok(t) => t,
        Err(e) => return numeric_error(&e),
    };
    let rows: Vec<SpectrumRow> = table
        .entries
        .iter()
        .map(|e| SpectrumRow {
            n: e.n,
            lambda: e.lambda,
            lo: if e.bracket.0.is_finite() {
                Some(e.bracket.0)
            } else {
                None
            },
            hi: e.bracket.1,
            residual: e.residual,
        })
        .collect();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                theta: f64,
                residual_bound: f64,
                entries: Vec<SpectrumRow>,
            }
            let out = Out {
                theta,
                residual_bound: table.residual_bound,
                entries: rows,
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            println!("n,lambda,lo,hi,residual");
            for r in rows {
                let lo = r.lo.map(num).unwrap_or_default();
                println!(
                    "{},{},{},{},{}",
                    r.n,
                    num(r.lambda),
                    lo,
                    num(r.hi),
                    num(r.residual)
                );
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_kernel(args: KernelArgs, cfg: &HashMap<String, String>) -> ExitCode {
    let points = match fill(args.points, "points", cfg) {
        Ok(Some(p)) => p,
        Ok(None) => return usage("--points is required"),
        Err(m) => return usage(&m),
    };
    let format = args.format.unwrap_or(Format::Json);
    let boundary = match parse_points(&points) {
        Ok(b) => b,
        Err(m) => return usage(&m),
    };
    let kernel = match gram(&boundary, &SeriesControl::default()) {
        Ok(k) => k,
        Err(e) => return numeric_error(&e),
    };
    let (det, product) = vandermonde_det(&boundary);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                angles: Vec<String>,
                gram: Vec<Vec<[f64; 2]>>,
                eigenvalues: &'a [f64],
                vandermonde_det: f64,
                vandermonde_product: f64,
            }
            let out = Out {
                angles: boundary.angles().iter().map(|a| format!("{a}")).collect(),
                gram: matrix_rows(&kernel.matrix),
                eigenvalues: &kernel.eigenvalues,
                vandermonde_det: det,
                vandermonde_product: product,
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            println!("entry,i,j,re,im");
            let m = kernel.dim();
            for i in 0..m {
                for j in 0..m {
                    let v = kernel.matrix[(i, j)];
                    println!("gram,{i},{j},{},{}", num(v.re), num(v.im));
                }
            }
            for (i, ev) in kernel.eigenvalues.iter().enumerate() {
                println!("eigenvalue,{i},,{},", num(*ev));
            }
            println!("vandermonde_det,,,{},", num(det));
            println!("vandermonde_product,,,{},", num(product));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_extension_spectrum(args: ExtArgs, cfg: &HashMap<String, String>) -> ExitCode {
    let points = match fill(args.points, "points", cfg) {
        Ok(Some(p)) => p,
        Ok(None) => return usage("--points is required"),
        Err(m) => return usage(&m),
    };
    let matrix_file = match fill(args.matrix_file, "matrix_file", cfg) {
        Ok(Some(p)) => p,
        Ok(None) => return usage("--matrix-file is required"),
        Err(m) => return usage(&m),
    };
    let n_max = match fill(args.n_max, "n_max", cfg) {
        Ok(v) => v.unwrap_or(5),
        Err(m) => return usage(&m),
    };
    let format = args.format.unwrap_or(Format::Json);
    let boundary = match parse_points(&points) {
        Ok(b) => b,
        Err(m) => return usage(&m),
    };
    let text = match std::fs::read_to_string(&matrix_file) {
        Ok(t) => t,
        Err(e) => return usage(&format!("cannot read {}: {e}", matrix_file.display())),
    };
    let value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return usage(&format!("invalid matrix file: {e}")),
    };
    let rows: Vec<Vec<[f64; 2]>> =
        match serde_json::from_value(value.get("matrix").cloned().unwrap_or(value)) {
            Ok(r) => r,
            Err(e) => return usage(&format!("invalid matrix rows: {e}")),
        };
    let matrix: DMatrix<Complex64> = match matrix_from_rows(&rows) {
        Ok(m) => m,
        Err(e) => return usage(&e.to_string()),
    };
    let kernel = match gram(&boundary, &SeriesControl::default()) {
        Ok(k) => k,
        Err(e) => return numeric_error(&e),
    };
    let member = match is_in_gf(&matrix, &kernel, GROUP_TOL) {
        Ok(m) => m,
        Err(e) => return numeric_error(&e),
    };
    let spectrum = match extension_spectrum(&boundary, &member, n_max) {
        Ok(s) => s,
        Err(e) => return numeric_error(&e),
    };
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct RootOut {
                lambda: f64,
                residual: f64,
            }
            #[derive(Serialize)]
            struct CellOut {
                index: Option<u32>,
                lo: f64,
                hi: f64,
                roots: Vec<RootOut>,
            }
            #[derive(Serialize)]
            struct Out {
                defect: f64,
                cells: Vec<CellOut>,
            }
            let out = Out {
                defect: member.defect,
                cells: spectrum
                    .cells
                    .iter()
                    .map(|c| CellOut {
                        index: c.index,
                        lo: c.interval.0,
                        hi: c.interval.1,
                        roots: c
                            .roots
                            .iter()
                            .map(|r| RootOut {
                                lambda: r.lambda,
                                residual: r.residual,
                            })
                            .collect(),
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            println!("cell,lo,hi,lambda,residual");
            for c in &spectrum.cells {
                let idx = c.index.map(|n| n.to_string()).unwrap_or_default();
                for r in &c.roots {
                    println!(
                        "{idx},{},{},{},{}",
                        num(c.interval.0),
                        num(c.interval.1),
                        num(r.lambda),
                        num(r.residual)
                    );
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: VerifyArgs, cfg: &HashMap<String, String>) -> ExitCode {
    let suite = match args.suite {
        Some(s) => s,
        None => match cfg.get("suite").map(|s| s.as_str()) {
            Some("specfun") => Suite::Specfun,
            Some("spectral") => Suite::Spectral,
            Some("kernel") => Suite::Kernel,
            Some("boundary") => Suite::Boundary,
            Some("forms") => Suite::Forms,
            Some("all") | None => Suite::All,
            Some(other) => return usage(&format!("unknown suite: {other}")),
        },
    };
    let seed = match fill(args.seed, "seed", cfg) {
        Ok(v) => v.unwrap_or(0),
        Err(m) => return usage(&m),
    };
    let suites: Vec<&str> = match suite {
        Suite::Specfun => vec!["specfun"],
        Suite::Spectral => vec!["spectral"],
        Suite::Kernel => vec!["kernel"],
        Suite::Boundary => vec!["boundary"],
        Suite::Forms => vec!["forms"],
        Suite::All => vec!["specfun", "spectral", "kernel", "boundary", "forms"],
    };
    let report = verify::run(&suites, seed);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NUMERIC)
    }
}

fn cmd_plotdata(args: PlotArgs, cfg: &HashMap<String, String>) -> ExitCode {
    let kind = match args.kind {
        Some(k) => k,
        None => match cfg.get("kind").map(|s| s.as_str()) {
            Some("g") => PlotKind::G,
            Some("z") => PlotKind::Z,
            Some("lambda-vs-theta") => PlotKind::LambdaVsTheta,
            Some("projection-norm") => PlotKind::ProjectionNorm,
            None => return usage("--kind is required"),
            Some(other) => return usage(&format!("unknown plot kind: {other}")),
        },
    };
    let samples = match fill(args.samples, "samples", cfg) {
        Ok(v) => v.unwrap_or(1000).max(2),
        Err(m) => return usage(&m),
    };
    let n_max = match fill(args.n_max, "n_max", cfg) {
        Ok(v) => v.unwrap_or(5),
        Err(m) => return usage(&m),
    };
    let range_raw = match fill(args.range, "range", cfg) {
        Ok(v) => v,
        Err(m) => return usage(&m),
    };
    let default_range = match kind {
        PlotKind::G => (-3.0, 5.0),
        PlotKind::Z => (0.0, 1.0),
        PlotKind::LambdaVsTheta => (-3.1, 3.1),
        PlotKind::ProjectionNorm => (-3.0, 3.0),
    };
    let (lo, hi) = match range_raw {
        None => default_range,
        Some(raw) => match raw.split_once(':') {
            Some((a, b)) => match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
                (Ok(a), Ok(b)) if a < b => (a, b),
                _ => return usage(&format!("invalid range: {raw}")),
            },
            None => return usage(&format!("range must be lo:hi, got {raw}")),
        },
    };
    let format = args.format.unwrap_or(Format::Csv);
    let ctl = SeriesControl::default();

    // Rows of (x, columns...) with None for masked poles.
    let mut header: Vec<String> = vec!["x".into()];
    let mut rows: Vec<(f64, Vec<Option<f64>>)> = Vec::new();
    match kind {
        PlotKind::G => {
            header.push("g".into());
            for i in 0..samples {
                let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                let v = spectral::g(x).ok();
                rows.push((x, vec![v]));
            }
        }
        PlotKind::Z => {
            header.push("re".into());
            header.push("im".into());
            for i in 0..samples {
                let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                let z = zetaspec::specfun::hurwitz_z(x, &ctl);
                rows.push((x, vec![Some(z.re), Some(z.im)]));
            }
        }
        PlotKind::LambdaVsTheta => {
            for n in 0..=n_max {
                header.push(format!("lambda_{n}"));
            }
            for i in 0..samples {
                let theta = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                let cols = match ExtensionParameter::new(theta) {
                    Ok(p) => (0..=n_max)
                        .map(|n| spectral::eigenvalue(p, n).ok())
                        .collect(),
                    Err(_) => vec![None; n_max as usize + 1],
                };
                rows.push((theta, cols));
            }
        }
        PlotKind::ProjectionNorm => {
            header.push("norm_sq".into());
            for i in 0..samples {
                let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
                rows.push((x, vec![Some(zetaspec::forms::projection_norm(x))]));
            }
        }
    }

    match format {
        Format::Csv => {
            println!("{}", header.join(","));
            for (x, cols) in rows {
                let mut line = num(x);
                for c in cols {
                    line.push(',');
                    if let Some(v) = c {
                        line.push_str(&num(v));
                    }
                }
                println!("{line}");
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                columns: Vec<String>,
                rows: Vec<Vec<Option<f64>>>,
            }
            let out = Out {
                columns: header,
                rows: rows
                    .into_iter()
                    .map(|(x, mut cols)| {
                        let mut row = vec![Some(x)];
                        row.append(&mut cols);
                        row
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    ExitCode::SUCCESS
}
