//! Command-line front end.
//!
//! Three subcommands mirror the module boundaries:
//!
//! * `verify` — run the identity suite on a catalog surface;
//! * `gate` — check the classification-theorem gates;
//! * `catalog` — list the surface families.
//!
//! Exit codes: 0 all applicable checks pass, 1 usage error, 2 verification
//! failure (residual over tolerance, pmc violation, inconsistent theorem
//! conclusion), 3 internal numeric error (degenerate metric and similar).
//! `PMC_VERIFY_THREADS` (integer ≥ 1) caps grid parallelism.

use std::path::PathBuf;
use std::sync::OnceLock;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::catalog::{list_catalog, make_surface, CatalogSpec, Family};
use crate::gates::{check_gate, GateConfig, GateReport, Theorem};
use crate::identities::{run_suite, IdentityKind, SuiteConfig, SuiteResult};
use crate::report::{
    fingerprint, gate_json, gates_csv, gates_text, suite_csv, suite_reports_json,
    suite_summary_json, suite_text, Json,
};
use crate::surface::GridSpec;
use crate::thresholds::{DEFAULT_JET_DEGREE, IDENTITY_TOL, PMC_RESIDUAL_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION_FAILED: i32 = 2;
pub const EXIT_NUMERIC_ERROR: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    fn name(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "pmc-verify",
    version,
    about = "Verification engine for pmc surfaces in product spaces M^n(c) x R"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Run the identity suite on a catalog surface
    Verify(VerifyArgs),
    /// Check the classification-theorem gates on a catalog surface
    Gate(GateArgs),
    /// List the surface catalog
    Catalog(CatalogArgs),
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    /// Surface family (run `catalog` for the list)
    #[arg(long)]
    surface: String,
    /// Sectional curvature of the base space form
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    c: f64,
    /// Radius parameter of the torus or cylinder families
    #[arg(long)]
    r: Option<f64>,
    /// Geodesic radius of the round sphere
    #[arg(long)]
    rho: Option<f64>,
    /// Graph amplitude of the perturbed graph
    #[arg(long)]
    eps: Option<f64>,
    /// Grid density N for an N x N midpoint sampling grid
    #[arg(long, default_value_t = 8)]
    grid: usize,
    /// Retained jet degree
    #[arg(long, default_value_t = DEFAULT_JET_DEGREE)]
    degree: usize,
    /// Residual tolerance
    #[arg(long, default_value_t = IDENTITY_TOL)]
    tol: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Comma-separated identity kinds, or "all"
    #[arg(long, default_value = "all")]
    identities: String,
}

#[derive(Args, Debug)]
struct GateArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Comma-separated theorem names, or "all"
    #[arg(long, default_value = "all")]
    theorem: String,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

/// What a run does, after validation.
#[derive(Debug, Clone)]
pub enum RunCommand {
    Verify { kinds: Vec<IdentityKind> },
    Gate { theorems: Vec<Theorem> },
    Catalog,
}

/// A validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: RunCommand,
    pub spec: Option<CatalogSpec>,
    pub grid: GridSpec,
    pub degree: usize,
    pub tol: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

/// A usage error: printed to stderr, exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Outcome of argument parsing: a config, informational text (--help,
/// --version), or a usage error.
pub enum ParseOutcome {
    Run(Box<RunConfig>),
    Info(String),
    Usage(UsageError),
}

fn valid_families() -> String {
    Family::ALL
        .iter()
        .map(|f| f.name())
        .collect::<Vec<_>>()
        .join(", ")
}

fn validate_surface(args: &SurfaceArgs) -> Result<CatalogSpec, UsageError> {
    let family = Family::parse(&args.surface).map_err(|_| {
        UsageError(format!(
            "--surface: unknown family '{}'; valid families: {}",
            args.surface,
            valid_families()
        ))
    })?;
    // reject parameters that the family does not accept
    let reject = |given: Option<f64>, flag: &str| -> Result<(), UsageError> {
        if given.is_some() {
            return Err(UsageError(format!(
                "--{flag} is not accepted by family {}",
                family.name()
            )));
        }
        Ok(())
    };
    let param = match family {
        Family::CliffordTorus | Family::VerticalCylinder => {
            reject(args.rho, "rho")?;
            reject(args.eps, "eps")?;
            args.r
        }
        Family::MinimalCliffordTorus | Family::Slice | Family::Horosphere => {
            reject(args.r, "r")?;
            reject(args.rho, "rho")?;
            reject(args.eps, "eps")?;
            None
        }
        Family::RoundSphere => {
            reject(args.r, "r")?;
            reject(args.eps, "eps")?;
            args.rho
        }
        Family::PerturbedGraph => {
            reject(args.r, "r")?;
            reject(args.rho, "rho")?;
            args.eps
        }
    };
    let spec = CatalogSpec::new(family, args.c, param);
    // validate parameter domains eagerly so bad values are usage errors
    make_surface(&spec).map_err(|e| UsageError(e.to_string()))?;
    Ok(spec)
}

fn validate_common(args: &SurfaceArgs) -> Result<(), UsageError> {
    if args.grid == 0 {
        return Err(UsageError("--grid must be at least 1".into()));
    }
    if args.degree < 2 {
        return Err(UsageError("--degree must be at least 2".into()));
    }
    if !args.tol.is_finite() || args.tol <= 0.0 {
        return Err(UsageError("--tol must be positive".into()));
    }
    Ok(())
}

fn parse_kinds(list: &str) -> Result<Vec<IdentityKind>, UsageError> {
    if list == "all" {
        return Ok(IdentityKind::ALL.to_vec());
    }
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| {
            IdentityKind::parse(name).ok_or_else(|| {
                let valid = IdentityKind::ALL
                    .iter()
                    .map(|k| k.name())
                    .collect::<Vec<_>>()
                    .join(", ");
                UsageError(format!(
                    "--identities: unknown kind '{name}'; valid kinds: all, {valid}"
                ))
            })
        })
        .collect()
}

fn parse_theorems(list: &str) -> Result<Vec<Theorem>, UsageError> {
    if list == "all" {
        return Ok(Theorem::ALL.to_vec());
    }
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| {
            Theorem::parse(name).ok_or_else(|| {
                let valid = Theorem::ALL
                    .iter()
                    .map(|t| t.name())
                    .collect::<Vec<_>>()
                    .join(", ");
                UsageError(format!(
                    "--theorem: unknown theorem '{name}'; valid theorems: all, {valid}"
                ))
            })
        })
        .collect()
}

/// Parses and validates an argument vector (without the program name).
pub fn parse_args<I, S>(argv: I) -> ParseOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut full: Vec<String> = vec!["pmc-verify".into()];
    full.extend(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(&full) {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    ParseOutcome::Info(err.to_string())
                }
                _ => ParseOutcome::Usage(UsageError(err.to_string())),
            };
        }
    };
    let config = match cli.command {
        CliCommand::Verify(args) => {
            if let Err(e) = validate_common(&args.surface) {
                return ParseOutcome::Usage(e);
            }
            let spec = match validate_surface(&args.surface) {
                Ok(spec) => spec,
                Err(e) => return ParseOutcome::Usage(e),
            };
            let kinds = match parse_kinds(&args.identities) {
                Ok(kinds) => kinds,
                Err(e) => return ParseOutcome::Usage(e),
            };
            RunConfig {
                command: RunCommand::Verify { kinds },
                spec: Some(spec),
                grid: GridSpec::new(args.surface.grid, args.surface.grid),
                degree: args.surface.degree,
                tol: args.surface.tol,
                format: args.surface.format,
                output: args.surface.output,
            }
        }
        CliCommand::Gate(args) => {
            if let Err(e) = validate_common(&args.surface) {
                return ParseOutcome::Usage(e);
            }
            let spec = match validate_surface(&args.surface) {
                Ok(spec) => spec,
                Err(e) => return ParseOutcome::Usage(e),
            };
            let theorems = match parse_theorems(&args.theorem) {
                Ok(theorems) => theorems,
                Err(e) => return ParseOutcome::Usage(e),
            };
            RunConfig {
                command: RunCommand::Gate { theorems },
                spec: Some(spec),
                grid: GridSpec::new(args.surface.grid, args.surface.grid),
                degree: args.surface.degree,
                tol: args.surface.tol,
                format: args.surface.format,
                output: args.surface.output,
            }
        }
        CliCommand::Catalog(args) => RunConfig {
            command: RunCommand::Catalog,
            spec: None,
            grid: GridSpec::default(),
            degree: DEFAULT_JET_DEGREE,
            tol: IDENTITY_TOL,
            format: args.format,
            output: args.output,
        },
    };
    ParseOutcome::Run(Box::new(config))
}

/// A finished run: the serialized report plus the process exit code.
pub struct Execution {
    pub report: String,
    pub exit_code: i32,
}

fn config_json(config: &RunConfig) -> Json {
    let command = match &config.command {
        RunCommand::Verify { .. } => "verify",
        RunCommand::Gate { .. } => "gate",
        RunCommand::Catalog => "catalog",
    };
    let mut fields = vec![
        ("tool".into(), Json::Str("pmc-verify".into())),
        (
            "version".into(),
            Json::Str(env!("CARGO_PKG_VERSION").into()),
        ),
        ("command".into(), Json::Str(command.into())),
    ];
    if let Some(spec) = &config.spec {
        fields.push((
            "surface".into(),
            Json::Obj(vec![
                ("family".into(), Json::Str(spec.family.name().into())),
                ("c".into(), Json::Float(spec.c)),
                (
                    "param".into(),
                    spec.param.map_or(Json::Null, Json::Float),
                ),
            ]),
        ));
    }
    fields.push((
        "grid".into(),
        Json::Arr(vec![
            Json::Int(config.grid.nu as i64),
            Json::Int(config.grid.nv as i64),
        ]),
    ));
    fields.push(("degree".into(), Json::Int(config.degree as i64)));
    fields.push(("tol".into(), Json::Float(config.tol)));
    fields.push(("pmc_tol".into(), Json::Float(PMC_RESIDUAL_TOL)));
    match &config.command {
        RunCommand::Verify { kinds } => {
            fields.push((
                "identities".into(),
                Json::Arr(kinds.iter().map(|k| Json::Str(k.name().into())).collect()),
            ));
        }
        RunCommand::Gate { theorems } => {
            fields.push((
                "theorems".into(),
                Json::Arr(
                    theorems
                        .iter()
                        .map(|t| Json::Str(t.name().into()))
                        .collect(),
                ),
            ));
        }
        RunCommand::Catalog => {}
    }
    fields.push(("format".into(), Json::Str(config.format.name().into())));
    // fingerprint over the config rendered without the fingerprint itself
    let partial = Json::Obj(fields.clone()).render();
    fields.push((
        "fingerprint".into(),
        Json::Str(fingerprint(partial.as_bytes())),
    ));
    Json::Obj(fields)
}

fn verify_exit_code(result: &SuiteResult) -> i32 {
    let failed: usize = result.summary.per_kind.iter().map(|s| s.failed).sum();
    if failed > 0 {
        EXIT_NUMERIC_ERROR
    } else if result.summary.pass {
        EXIT_OK
    } else {
        EXIT_VERIFICATION_FAILED
    }
}

fn gates_exit_code(reports: &[GateReport]) -> i32 {
    if reports.iter().any(GateReport::verification_failed) {
        EXIT_VERIFICATION_FAILED
    } else {
        EXIT_OK
    }
}

fn catalog_rows_json() -> Json {
    Json::Arr(
        list_catalog()
            .iter()
            .map(|info| {
                Json::Obj(vec![
                    ("family".into(), Json::Str(info.family.name().into())),
                    ("parameter".into(), Json::Str(info.parameter.into())),
                    (
                        "curvature_sign".into(),
                        Json::Str(info.curvature_sign.into()),
                    ),
                    ("witnesses".into(), Json::Str(info.witnesses.into())),
                    ("constraint".into(), Json::Str(info.constraint.into())),
                ])
            })
            .collect(),
    )
}

fn catalog_text() -> String {
    let mut out = String::from("surface catalog\n");
    for info in list_catalog() {
        out.push_str(&format!(
            "  {:<24} param: {:<28} {}\n    witnesses: {}\n    constraint: {}\n",
            info.family.name(),
            info.parameter,
            info.curvature_sign,
            info.witnesses,
            info.constraint
        ));
    }
    out
}

fn catalog_csv() -> String {
    let mut out = String::from("family,parameter,curvature_sign,witnesses,constraint\n");
    for info in list_catalog() {
        let quote = |s: &str| {
            if s.contains(',') {
                format!("\"{s}\"")
            } else {
                s.to_string()
            }
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            info.family.name(),
            quote(info.parameter),
            quote(info.curvature_sign),
            quote(info.witnesses),
            quote(info.constraint)
        ));
    }
    out
}

static THREAD_POOL_INIT: OnceLock<Result<(), String>> = OnceLock::new();

/// Applies PMC_VERIFY_THREADS to the global rayon pool. The first call in
/// the process wins; later calls with a different value are ignored.
fn configure_threads() -> Result<(), UsageError> {
    let Ok(raw) = std::env::var("PMC_VERIFY_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.parse().map_err(|_| {
        UsageError(format!(
            "PMC_VERIFY_THREADS must be an integer >= 1, got '{raw}'"
        ))
    })?;
    if threads < 1 {
        return Err(UsageError(
            "PMC_VERIFY_THREADS must be an integer >= 1".into(),
        ));
    }
    THREAD_POOL_INIT.get_or_init(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())
    });
    Ok(())
}

/// Executes a validated configuration and renders its report.
pub fn execute(config: &RunConfig) -> Result<Execution, UsageError> {
    configure_threads()?;
    match &config.command {
        RunCommand::Catalog => {
            let report = match config.format {
                Format::Json => Json::Obj(vec![
                    ("config".into(), config_json(config)),
                    (
                        "summary".into(),
                        Json::Obj(vec![(
                            "families".into(),
                            Json::Int(list_catalog().len() as i64),
                        )]),
                    ),
                    ("reports".into(), catalog_rows_json()),
                ])
                .render(),
                Format::Csv => catalog_csv(),
                Format::Text => catalog_text(),
            };
            Ok(Execution {
                report,
                exit_code: EXIT_OK,
            })
        }
        RunCommand::Verify { kinds } => {
            let spec = config.spec.as_ref().expect("verify requires a surface");
            let (im, _) = make_surface(spec).map_err(|e| UsageError(e.to_string()))?;
            let suite_config = SuiteConfig {
                grid: config.grid,
                kinds: kinds.clone(),
                degree: config.degree,
                tol: config.tol,
                ..SuiteConfig::default()
            };
            let result = run_suite(&im, &suite_config);
            let exit_code = verify_exit_code(&result);
            let report = match config.format {
                Format::Json => Json::Obj(vec![
                    ("config".into(), config_json(config)),
                    ("summary".into(), suite_summary_json(&result)),
                    ("reports".into(), suite_reports_json(&result)),
                ])
                .render(),
                Format::Csv => suite_csv(&result),
                Format::Text => suite_text(&result),
            };
            Ok(Execution { report, exit_code })
        }
        RunCommand::Gate { theorems } => {
            let spec = config.spec.as_ref().expect("gate requires a surface");
            let (im, _) = make_surface(spec).map_err(|e| UsageError(e.to_string()))?;
            let gate_config = GateConfig {
                grid: config.grid,
                degree: config.degree,
                tol: config.tol,
                ..GateConfig::default()
            };
            let mut reports = Vec::with_capacity(theorems.len());
            for &theorem in theorems {
                match check_gate(theorem, &im, &gate_config) {
                    Ok(report) => reports.push(report),
                    Err(err) => {
                        return Ok(Execution {
                            report: format!("numeric error: {err}\n"),
                            exit_code: EXIT_NUMERIC_ERROR,
                        });
                    }
                }
            }
            let exit_code = gates_exit_code(&reports);
            let report = match config.format {
                Format::Json => Json::Obj(vec![
                    ("config".into(), config_json(config)),
                    (
                        "summary".into(),
                        Json::Obj(vec![
                            (
                                "pass".into(),
                                Json::Bool(exit_code == EXIT_OK),
                            ),
                            ("gates".into(), Json::Int(reports.len() as i64)),
                        ]),
                    ),
                    (
                        "reports".into(),
                        Json::Arr(reports.iter().map(gate_json).collect()),
                    ),
                ])
                .render(),
                Format::Csv => gates_csv(&reports),
                Format::Text => gates_text(&reports),
            };
            Ok(Execution { report, exit_code })
        }
    }
}

fn emit(config_output: &Option<PathBuf>, report: &str) -> Result<(), String> {
    match config_output {
        Some(path) => std::fs::write(path, report).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

/// Full CLI entry point; returns the process exit code.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    run_with_args(args)
}

/// CLI entry with explicit arguments (no program name).
pub fn run_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    match parse_args(args) {
        ParseOutcome::Info(text) => {
            println!("{text}");
            EXIT_OK
        }
        ParseOutcome::Usage(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
        ParseOutcome::Run(config) => match execute(&config) {
            Ok(execution) => {
                if let Err(err) = emit(&config.output, &execution.report) {
                    eprintln!("error writing report: {err}");
                    return EXIT_NUMERIC_ERROR;
                }
                execution.exit_code
            }
            Err(err) => {
                eprintln!("error: {err}");
                EXIT_USAGE
            }
        },
    }
}
