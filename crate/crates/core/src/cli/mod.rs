//! The `orientgraph` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 strict
//! verification found deviations.

mod format;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::lattice::{
    band_structure, dispersion_sheets, factored_determinant, secular_matrix, BlochPoint,
    EnergyWindow, LatticeKind, LatticeModel, RangeMode,
};
use crate::numerics::{det_complex, ToleranceConfig};
use crate::star::bound_states;
use crate::verify::{strict_ok, verify_hexagonal, verify_inconsistencies, verify_square, ClaimRecord};
use crate::vertex::{s_matrix, VertexCoupling};

pub use format::real;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_STRICT: i32 = 3;

/// Largest accepted determinant mismatch, relative to the Hadamard bound.
const DETCHECK_LIMIT: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "orientgraph", version, about = "Spectra of quantum graphs with cyclic vertex coupling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Range {
    Derived,
    Paper,
}

impl From<Range> for RangeMode {
    fn from(r: Range) -> Self {
        match r {
            Range::Derived => RangeMode::Derived,
            Range::Paper => RangeMode::Published,
        }
    }
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound states of the star graph.
    Star {
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        out: Output,
    },
    /// On-shell scattering matrix of one vertex.
    Smatrix {
        #[arg(long)]
        degree: usize,
        #[arg(long, allow_negative_numbers = true)]
        k: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Band structure in an energy window.
    Bands {
        #[arg(long)]
        lattice: LatticeKind,
        #[arg(long)]
        length: f64,
        #[arg(long, allow_negative_numbers = true)]
        emin: f64,
        #[arg(long, allow_negative_numbers = true)]
        emax: f64,
        #[arg(long, value_enum, default_value = "derived")]
        range: Range,
        #[command(flatten)]
        out: Output,
    },
    /// Band-condition roots on a Bloch grid.
    Dispersion {
        #[arg(long)]
        lattice: LatticeKind,
        #[arg(long)]
        length: f64,
        #[arg(long)]
        grid: usize,
        #[arg(long, allow_negative_numbers = true)]
        emax: f64,
        /// Lower energy bound; defaults to `-emax`.
        #[arg(long, allow_negative_numbers = true)]
        emin: Option<f64>,
        #[command(flatten)]
        out: Output,
    },
    /// JSON report comparing published claims with computation.
    Verify {
        #[arg(long)]
        lattice: LatticeKind,
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<f64>,
        /// Exit with code 3 if a claim deviates outside the known inconsistencies.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare assembled secular determinants with the factored forms.
    Detcheck {
        #[arg(long)]
        lattice: LatticeKind,
        #[arg(long)]
        length: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
    Strict,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Tolerances with `ORIENTGRAPH_*` environment overrides applied.
fn tolerances() -> std::result::Result<ToleranceConfig, Failure> {
    let mut tol = ToleranceConfig::default();
    let var = |name: &str| std::env::var(name).ok().filter(|v| !v.is_empty());
    let bad = |name: &str, v: &str| Failure::Usage(format!("cannot parse {name}={v}"));
    for (name, slot) in [
        ("ORIENTGRAPH_ROOT_ABS", &mut tol.root_abs),
        ("ORIENTGRAPH_RESIDUAL_ZERO", &mut tol.residual_zero),
        ("ORIENTGRAPH_DEGENERATE_WIDTH", &mut tol.degenerate_width),
    ] {
        if let Some(v) = var(name) {
            *slot = v.parse().map_err(|_| bad(name, &v))?;
        }
    }
    if let Some(v) = var("ORIENTGRAPH_SCAN_DENSITY") {
        tol.scan_density = v.parse().map_err(|_| bad("ORIENTGRAPH_SCAN_DENSITY", &v))?;
    }
    tol.validate()?;
    Ok(tol)
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(
    out: &Output,
    header: &[&str],
    rows: &[Vec<String>],
    json: &impl Serialize,
) -> CliResult {
    let mut w = sink(&out.output)?;
    match out.format {
        Format::Csv => format::write_csv(&mut w, header, rows)?,
        Format::Json => format::write_json(&mut w, json)?,
    }
    w.flush()?;
    Ok(())
}

fn cmd_star(degree: usize, out: &Output) -> CliResult {
    let tol = tolerances()?;
    let s = bound_states(degree, &tol)?;
    let rows: Vec<Vec<String>> = s
        .kappas
        .iter()
        .zip(&s.energies)
        .enumerate()
        .map(|(i, (k, e))| vec![(i + 1).to_string(), real(*k), real(*e)])
        .collect();
    let states: Vec<_> = s
        .kappas
        .iter()
        .zip(&s.energies)
        .enumerate()
        .map(|(i, (k, e))| json!({"m": i + 1, "kappa": k, "energy": e}))
        .collect();
    emit(out, &["m", "kappa", "energy"], &rows, &json!({"degree": degree, "states": states}))
}

fn cmd_smatrix(degree: usize, k: f64, out: &Output) -> CliResult {
    let c = VertexCoupling::cyclic(degree)?;
    let s = s_matrix(&c, k)?;
    let residual = s.unitarity_residual();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for i in 0..degree {
        for j in 0..degree {
            let z: Complex64 = s.s[(i, j)];
            rows.push(vec![i.to_string(), j.to_string(), real(z.re), real(z.im), real(residual)]);
            entries.push(json!({"row": i, "col": j, "re": z.re, "im": z.im}));
        }
    }
    emit(
        out,
        &["row", "col", "re", "im", "unitarity_residual"],
        &rows,
        &json!({"degree": degree, "k": k, "unitarity_residual": residual, "entries": entries}),
    )
}

fn cmd_bands(
    lattice: LatticeKind,
    length: f64,
    emin: f64,
    emax: f64,
    range: Range,
    out: &Output,
) -> CliResult {
    let tol = tolerances()?;
    let model = LatticeModel::new(lattice, length)?;
    let window = EnergyWindow::new(emin, emax)?;
    let bs = band_structure(&model, &window, range.into(), &tol)?;
    let rows: Vec<Vec<String>> = bs
        .segments
        .iter()
        .enumerate()
        .map(|(i, s)| {
            vec![
                i.to_string(),
                s.kind.name().to_string(),
                s.degenerate.to_string(),
                real(s.e_lo),
                real(s.e_hi),
            ]
        })
        .collect();
    emit(out, &["index", "kind", "degenerate", "e_lo", "e_hi"], &rows, &bs)
}

fn cmd_dispersion(
    lattice: LatticeKind,
    length: f64,
    grid: usize,
    emin: f64,
    emax: f64,
    out: &Output,
) -> CliResult {
    let tol = tolerances()?;
    let model = LatticeModel::new(lattice, length)?;
    let window = EnergyWindow::new(emin, emax)?;
    if grid < 2 {
        return Err(Failure::Usage(format!("grid must be at least 2, got {grid}")));
    }
    let sheets = dispersion_sheets(&model, grid, &window, &tol)?;
    let rows: Vec<Vec<String>> = sheets
        .iter()
        .map(|s| {
            vec![
                real(s.theta1),
                real(s.theta2),
                s.branch.to_string(),
                real(s.momentum),
                real(s.energy),
                real(s.residual),
            ]
        })
        .collect();
    emit(
        out,
        &["theta1", "theta2", "branch", "momentum", "energy", "residual"],
        &rows,
        &json!({"model": model, "window": window, "points": sheets}),
    )
}

#[derive(Serialize)]
struct Report<'a> {
    model: serde_json::Value,
    claims: &'a [ClaimRecord],
}

fn cmd_verify(lattice: LatticeKind, lengths: &[f64], strict: bool, output: &Option<PathBuf>) -> CliResult {
    let tol = tolerances()?;
    if let Some(&bad) = lengths.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        return Err(Error::InvalidLength(bad).into());
    }
    let mut claims = match lattice {
        LatticeKind::Square => verify_square(lengths, &tol)?,
        LatticeKind::Hexagonal => verify_hexagonal(lengths, &tol)?,
    };
    claims.extend(verify_inconsistencies(&tol)?);
    claims.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    let report = Report {
        model: json!({"lattice": lattice, "lengths": lengths}),
        claims: &claims,
    };
    let mut w = sink(output)?;
    format::write_json(&mut w, &report)?;
    w.flush()?;
    if strict && !strict_ok(&claims) {
        return Err(Failure::Strict);
    }
    Ok(())
}

/// Largest `|assembled − factored|` over random samples, relative to the
/// Hadamard bound of the assembled matrix.
pub fn determinant_mismatch(model: &LatticeModel, samples: usize, seed: u64) -> f64 {
    let mut rng = StdRng::seed_from_u64(seed);
    let pi = std::f64::consts::PI;
    (0..samples)
        .map(|_| {
            let k = rng.gen_range(0.05..6.0);
            let p = BlochPoint::new(rng.gen_range(-pi..pi), rng.gen_range(-pi..pi));
            let m = secular_matrix(model, k, &p);
            (det_complex(&m) - factored_determinant(model, k, &p)).norm() / m.hadamard_bound()
        })
        .fold(0.0, f64::max)
}

fn cmd_detcheck(lattice: LatticeKind, length: f64, samples: usize, seed: u64, out: &Output) -> CliResult {
    if samples == 0 {
        return Err(Failure::Usage("samples must be at least 1".into()));
    }
    let model = LatticeModel::new(lattice, length)?;
    let worst = determinant_mismatch(&model, samples, seed);
    let pass = worst < DETCHECK_LIMIT;
    emit(
        out,
        &["lattice", "length", "samples", "max_relative_deviation", "pass"],
        &[vec![
            lattice.name().to_string(),
            real(length),
            samples.to_string(),
            real(worst),
            pass.to_string(),
        ]],
        &json!({
            "lattice": lattice,
            "length": length,
            "samples": samples,
            "max_relative_deviation": worst,
            "pass": pass,
        }),
    )?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Numeric(format!("determinant mismatch {worst:e} exceeds {DETCHECK_LIMIT:e}")))
    }
}

fn dispatch(cli: Cli) -> CliResult {
    match cli.command {
        Command::Star { degree, out } => cmd_star(degree, &out),
        Command::Smatrix { degree, k, out } => cmd_smatrix(degree, k, &out),
        Command::Bands { lattice, length, emin, emax, range, out } => {
            cmd_bands(lattice, length, emin, emax, range, &out)
        }
        Command::Dispersion { lattice, length, grid, emax, emin, out } => {
            cmd_dispersion(lattice, length, grid, emin.unwrap_or(-emax), emax, &out)
        }
        Command::Verify { lattice, lengths, strict, output } => cmd_verify(lattice, &lengths, strict, &output),
        Command::Detcheck { lattice, length, samples, seed, out } => {
            cmd_detcheck(lattice, length, samples, seed, &out)
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand, returning
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            EXIT_NUMERIC
        }
        Err(Failure::Strict) => {
            eprintln!("strict verification failed: deviations outside the known inconsistencies");
            EXIT_STRICT
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors() {
        assert_eq!(run(["orientgraph", "star", "--degree", "2"]), EXIT_USAGE);
        assert_eq!(run(["orientgraph", "smatrix", "--degree", "3", "--k", "-1"]), EXIT_USAGE);
        assert_eq!(run(["orientgraph", "bogus"]), EXIT_USAGE);
        assert_eq!(run(["orientgraph", "detcheck", "--lattice", "square", "--length", "1", "--samples", "0"]), EXIT_USAGE);
    }

    #[test]
    fn determinant_mismatch_is_small() {
        for kind in [LatticeKind::Square, LatticeKind::Hexagonal] {
            let m = LatticeModel::new(kind, 1.3).unwrap();
            assert!(determinant_mismatch(&m, 100, 7) < DETCHECK_LIMIT);
        }
    }
}
