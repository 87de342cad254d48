//! Command-line front end: builds catalog algebras, reads and writes the
//! algebra document format, runs checks and reproduces the Peirce table.

pub mod document;
mod table;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use coneforge::analysis::{
    full_report, killing_metrized_check, nonradial_hsiang_check, pseudocomposition_check, quasicomposition_check,
    radial_hsiang_check, verify_polar, AnalysisError, FullOptions, SweepOptions,
};
use coneforge::catalog::{self, CatalogError};
use coneforge::cubic::{algebra_from_cubic, cartan_munzner_check, cubic_from_algebra};
use coneforge::{Algebra, CubicForm, Matrix, Polynomial, Report, Scalar, Subspace};
use thiserror::Error;

pub use document::AlgebraDocument;

/// Exit status: the check passed.
pub const EXIT_PASS: u8 = 0;
/// Exit status: the check ran and failed.
pub const EXIT_FAIL: u8 = 1;
/// Exit status: invalid input.
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid document: {0}")]
    Document(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("invalid cubic: {0}")]
    Cubic(String),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error(transparent)]
    Analysis(AnalysisError),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "coneforge", version, about = "Exact workbench for metrized nonassociative algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a catalog algebra, e.g. `triple(cross7)`, or `from-cubic --cubic <poly>`.
    Construct {
        spec: String,
        /// Cubic polynomial for `from-cubic`, e.g. "x1*x2*x3".
        #[arg(long)]
        cubic: Option<String>,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run one check on an algebra document.
    Verify {
        check: Check,
        input: PathBuf,
        /// Zero block for `polar`: comma-separated 0-based coordinate indices.
        #[arg(long, value_delimiter = ',')]
        zero_block: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check identities exhaustively even above the size threshold.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
        /// Constant c in |Du|² = c|x|⁴ for `cartan-munzner`.
        #[arg(long, default_value = "9")]
        constant: String,
    },
    /// Run every applicable check.
    Report {
        input: PathBuf,
        /// Search idempotents and report Peirce data.
        #[arg(long)]
        peirce: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Sweep the built-in catalog and compare against the expected Peirce table.
    Table {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Metrized,
    Hsiang,
    Nonradial,
    Quasicomposition,
    Polar,
    Killing,
    Eikonal,
    CartanMunzner,
}

pub fn read_algebra(path: &Path) -> Result<Algebra, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    AlgebraDocument::from_json(&text)?.to_algebra()
}

pub fn write_algebra(alg: &Algebra, path: &Path) -> Result<(), CliError> {
    fs::write(path, AlgebraDocument::from_algebra(alg).to_json())
        .map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Runs a parsed command, writing human or JSON output to `out`, and
/// returns the exit status.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Construct { spec, cubic, out: path } => construct(&spec, cubic.as_deref(), path.as_deref(), out),
        Command::Verify { check, input, zero_block, seed, exhaustive, json, constant } => {
            let alg = read_algebra(&input)?;
            let opts = SweepOptions { seed, exhaustive };
            let report = verify(&alg, check, zero_block.as_deref(), opts, &constant)?;
            emit(out, std::slice::from_ref(&report), json)?;
            Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Report { input, peirce, seed, restarts, exhaustive, json } => {
            let alg = read_algebra(&input)?;
            let source = triple_source(&alg);
            let opts = FullOptions { seed, exhaustive, peirce, restarts };
            let full = full_report(&alg, source.as_ref(), opts).map_err(CliError::Analysis)?;
            if !json {
                writeln!(out, "{} (dim {})", full.name, full.dim)?;
            }
            emit(out, &full.to_reports(), json)?;
            Ok(EXIT_PASS)
        }
        Command::Table { seed } => table::run(seed, out),
    }
}

fn construct(spec: &str, cubic: Option<&str>, path: Option<&Path>, out: &mut dyn Write) -> Result<u8, CliError> {
    let alg = if spec == "from-cubic" {
        let text = cubic.ok_or_else(|| CliError::Usage("from-cubic requires --cubic".into()))?;
        let p: Polynomial = text.parse().map_err(|e| CliError::Cubic(format!("{e}")))?;
        let u = CubicForm::new(p).map_err(|e| CliError::Cubic(e.to_string()))?;
        algebra_from_cubic(&u, &Matrix::identity(u.nvars()), text).map_err(|e| CliError::Cubic(e.to_string()))?
    } else {
        if cubic.is_some() {
            return Err(CliError::Usage("--cubic is only valid with from-cubic".into()));
        }
        catalog::from_name(spec)?
    };
    match path {
        Some(p) => write_algebra(&alg, p)?,
        None => write!(out, "{}", AlgebraDocument::from_algebra(&alg).to_json())?,
    }
    Ok(EXIT_PASS)
}

/// Precondition failures of a check (wrong kind of algebra) are reported
/// as a failed check; anything else is an input error.
fn failed_precondition(check: &str, e: AnalysisError) -> Result<Report, CliError> {
    match e {
        AnalysisError::NotEuclidean | AnalysisError::NotCommutative | AnalysisError::NotMetrized(_) => {
            Ok(Report::new(check, false).with_witness(e.to_string()))
        }
        other => Err(CliError::Analysis(other)),
    }
}

pub fn verify(
    alg: &Algebra,
    check: Check,
    zero_block: Option<&[usize]>,
    opts: SweepOptions,
    constant: &str,
) -> Result<Report, CliError> {
    let report = match check {
        Check::Metrized => alg.check_metrized(),
        Check::Hsiang => match radial_hsiang_check(alg, opts) {
            Ok(r) => r.to_report("hsiang"),
            Err(e) => failed_precondition("hsiang", e)?,
        },
        Check::Nonradial => match nonradial_hsiang_check(alg, opts) {
            Ok(r) => r.to_report("nonradial"),
            Err(e) => failed_precondition("nonradial", e)?,
        },
        Check::Quasicomposition => match quasicomposition_check(alg, opts) {
            Ok(r) => r.to_report(),
            Err(e) => failed_precondition("quasicomposition", e)?,
        },
        Check::Polar => {
            let block = zero_block.ok_or_else(|| CliError::Usage("polar requires --zero-block".into()))?;
            if let Some(&bad) = block.iter().find(|&&i| i >= alg.dim()) {
                return Err(CliError::Usage(format!("zero-block index {bad} out of range for dim {}", alg.dim())));
            }
            match verify_polar(alg, &Subspace::coordinate(alg.dim(), block)) {
                Ok(r) => r.to_report(),
                Err(AnalysisError::Precondition(m)) => return Err(CliError::Usage(m)),
                Err(e) => failed_precondition("polar", e)?,
            }
        }
        Check::Killing => killing_metrized_check(alg, None).to_report(),
        Check::Eikonal => match pseudocomposition_check(alg) {
            Ok(r) => r.to_report(),
            Err(e) => failed_precondition("eikonal", e)?,
        },
        Check::CartanMunzner => {
            let c: Scalar = constant.parse().map_err(|e| CliError::Usage(format!("--constant: {e}")))?;
            let u = cubic_from_algebra(alg).map_err(|e| CliError::Cubic(e.to_string()))?;
            cartan_munzner_check(&u, &c)
        }
    };
    Ok(report)
}

/// The catalog source of a document named `triple(X)`, when `X` is a
/// catalog name whose triple matches the document.
fn triple_source(alg: &Algebra) -> Option<Algebra> {
    let inner = alg.name().strip_prefix("triple(")?.strip_suffix(')')?;
    let src = catalog::from_name(inner).ok()?;
    let rebuilt = catalog::triple(&src);
    (AlgebraDocument::from_algebra(&rebuilt) == AlgebraDocument::from_algebra(alg)).then_some(src)
}

fn emit(out: &mut dyn Write, reports: &[Report], json: bool) -> Result<(), CliError> {
    if json {
        let text = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(reports)
        }
        .expect("reports serialize");
        writeln!(out, "{text}")?;
    } else {
        for r in reports {
            writeln!(out, "{r}")?;
        }
    }
    Ok(())
}
