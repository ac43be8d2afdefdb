//! `schurlab`: Schur multipliers, exterior squares and bound checks from the command line.

mod document;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{debug, info};
use sha2::{Digest, Sha256};

use schurlab_core::catalog::{catalog_get, CatalogEntry, CatalogError, MAX_ENUMERATION_DIM};
use schurlab_core::dsl::{parse_presentation, DslError};
use schurlab_core::free::FreeError;
use schurlab_core::linalg::parse_scalar;
use schurlab_core::multiplier::{MultiplierError, MultiplierReport};
use schurlab_core::theorems::{
    classification_sweep, gamma_images, run_checks, Facts, TheoremError, TheoremId,
};
use schurlab_core::{Execution, LieAlgebra, LieError, Scalar};

use document::{AlgebraIdentity, CheckDocument, ReportDocument, SweepDocument};

#[derive(Parser)]
#[command(
    name = "schurlab",
    version,
    about = "Exact Schur multipliers of nilpotent Lie algebras over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure invariants together with the multiplier report.
    Info(AlgebraArgs),
    /// dim M(L), dim L∧L and the exterior center.
    Multiplier(AlgebraArgs),
    /// Whether L is capable, with a basis of Z^∧(L).
    Capable(AlgebraArgs),
    /// The two upper bounds for dim M(L) and whether the class-aware one is attained.
    Bounds(AlgebraArgs),
    /// Attainment sweep over the catalog.
    Sweep(SweepArgs),
    /// Statement checks over the catalog or a single algebra.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Catalog name such as L5_7, H(1)+A(2), A3 or L6_22(eps=1/2).
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    name: Option<String>,
    /// Presentation file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Catalog parameter, e.g. eps=1/2.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 6)]
    max_dim: usize,
    /// Evaluate catalog entries concurrently (output order is unchanged).
    #[arg(long)]
    parallel: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    /// 2.1, 2.2, 2.3, 2.5, 2.6, 2.7, 2.8, 2.9, 2.10, 3.1, 3.7 or all.
    #[arg(long, default_value = "all")]
    theorem: String,
    /// Catalog dimension limit when no single algebra is given.
    #[arg(long, default_value_t = 6)]
    max_dim: usize,
    #[arg(long, conflicts_with = "file")]
    name: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long)]
    parallel: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Failure with its exit status.
#[derive(Debug)]
enum Failure {
    Input(String),
    Resource(String),
    Inconsistent(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
            Failure::Inconsistent(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Resource(m) | Failure::Inconsistent(m) => m,
        }
    }
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::TooLarge { .. } => Failure::Resource(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<MultiplierError> for Failure {
    fn from(e: MultiplierError) -> Self {
        match e {
            MultiplierError::Free(FreeError::ResourceCap { .. }) => {
                Failure::Resource(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<LieError> for Failure {
    fn from(e: LieError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::Multiplier(m) => m.into(),
            TheoremError::Catalog(c) => c.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, Scalar>, Failure> {
    raw.iter()
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| {
                Failure::Input(format!("parameter '{p}' must look like KEY=VALUE"))
            })?;
            let value = parse_scalar(v).ok_or_else(|| {
                Failure::Input(format!("parameter '{k}': '{v}' is not a rational number"))
            })?;
            Ok((k.trim().to_string(), value))
        })
        .collect()
}

fn load_file(path: &Path) -> Result<(LieAlgebra, AlgebraIdentity), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let digest = Sha256::digest(text.as_bytes());
    let algebra = parse_presentation(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let identity = AlgebraIdentity::File {
        path: path.display().to_string(),
        sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        name: algebra.name().unwrap_or_default().to_string(),
    };
    Ok((algebra, identity))
}

/// The selected algebra, plus its catalog entry when it came from the catalog.
fn select(
    name: Option<&str>,
    file: Option<&Path>,
    params: &[String],
) -> Result<(LieAlgebra, AlgebraIdentity, Option<CatalogEntry>), Failure> {
    match (name, file) {
        (Some(name), _) => {
            let entry = catalog_get(name, &parse_params(params)?)?;
            let identity = AlgebraIdentity::Catalog {
                name: entry.name.clone(),
            };
            Ok((entry.algebra.clone(), identity, Some(entry)))
        }
        (None, Some(path)) => {
            let (l, id) = load_file(path)?;
            Ok((l, id, None))
        }
        (None, None) => Err(Failure::Input("either --name or --file is required".into())),
    }
}

fn emit<T: serde::Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    write_out(&format!("{text}\n"));
}

/// Writes to stdout, ignoring a closed pipe (e.g. `| head`).
fn write_out(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("schurlab: cannot write output: {e}");
        }
    }
}

fn execution(parallel: bool) -> Execution {
    if parallel {
        Execution::default()
    } else {
        Execution::Sequential
    }
}

fn algebra_command(kind: &'static str, args: &AlgebraArgs) -> Result<(), Failure> {
    let (algebra, identity, _) = select(args.name.as_deref(), args.file.as_deref(), &args.params)?;
    info!("{kind}: {algebra}");
    let report = MultiplierReport::compute(&algebra)?;
    let (series, gammas) = if kind == "info" {
        (
            Some(algebra.series()?.report()),
            Some(gamma_images(&algebra)?),
        )
    } else {
        (None, None)
    };
    let doc = ReportDocument::new(kind, identity, report, series, gammas);
    match args.format {
        Format::Json => emit(&doc),
        Format::Table => write_out(&doc.table()),
    }
    Ok(())
}

fn sweep_command(args: &SweepArgs) -> Result<(), Failure> {
    if args.max_dim > MAX_ENUMERATION_DIM {
        return Err(Failure::Resource(format!(
            "--max-dim {} exceeds the limit of {MAX_ENUMERATION_DIM}",
            args.max_dim
        )));
    }
    let report = classification_sweep(args.max_dim, execution(args.parallel))?;
    debug!("{} rows", report.rows.len());
    let consistent = report.consistent;
    let summary = report.summary.clone();
    let doc = SweepDocument::new(report);
    match args.format {
        Format::Json => emit(&doc),
        Format::Table => write_out(&doc.table()),
    }
    if consistent {
        Ok(())
    } else {
        Err(Failure::Inconsistent(summary))
    }
}

fn check_command(args: &CheckArgs) -> Result<(), Failure> {
    let theorems: Vec<TheoremId> = if args.theorem.trim() == "all" {
        TheoremId::ALL.to_vec()
    } else {
        args.theorem
            .split(',')
            .map(|t| t.parse::<TheoremId>())
            .collect::<Result<_, _>>()?
    };
    let exec = execution(args.parallel);
    let (scope, reports) = if args.name.is_some() || args.file.is_some() {
        let (algebra, identity, entry) =
            select(args.name.as_deref(), args.file.as_deref(), &args.params)?;
        let mut facts = match &entry {
            Some(e) => Facts::from_entry(e, exec)?,
            None => Facts::compute(identity.label(), &algebra, exec)?,
        };
        facts.name = identity.label().to_string();
        let mut reports = Vec::new();
        for &t in &theorems {
            reports.extend(schurlab_core::theorems::check(t, &facts)?);
        }
        (Some(identity), reports)
    } else {
        if args.max_dim > MAX_ENUMERATION_DIM {
            return Err(Failure::Resource(format!(
                "--max-dim {} exceeds the limit of {MAX_ENUMERATION_DIM}",
                args.max_dim
            )));
        }
        let entries = schurlab_core::catalog::enumerate(args.max_dim)?;
        (None, run_checks(&theorems, &entries, exec)?)
    };
    let doc = CheckDocument::new(scope, &theorems, reports);
    let failures = doc.violations;
    match args.format {
        Format::Json => emit(&doc),
        Format::Table => write_out(&doc.table()),
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Inconsistent(format!(
            "{failures} statement checks failed"
        )))
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Info(a) => algebra_command("info", a),
        Command::Multiplier(a) => algebra_command("multiplier", a),
        Command::Capable(a) => algebra_command("capable", a),
        Command::Bounds(a) => algebra_command("bounds", a),
        Command::Sweep(a) => sweep_command(a),
        Command::Check(a) => check_command(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("SCHURLAB_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("schurlab: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
