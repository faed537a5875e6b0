//! Command-line front end: argument and config resolution, command
//! execution, and CSV emission.
//!
//! Exit codes: 0 success, 1 runtime or verification failure, 2 usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::model::{
    closed_form_spectra, coherence_closed_form, coherence_numeric, detector_state,
    nu_squared_from_physical, numeric_spectra, q_from_acceleration, ClosedFormSpectra, ModelParams,
    PhysicalParams,
};
use crate::sweep::{run_sweep, verify_grid, Sweep, SweepRecord, SweepSpec, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const CSV_HEADER: &str =
    "nu,q,alpha,beta,gamma,c_total,c_collective,c_localized,triangle_slack,path_gap";

/// Why argument resolution stopped.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag, missing flag, unparseable or out-of-range value.
    Usage(String),
    /// A file named on the command line could not be read.
    Io(String),
    /// `--help` / `--version`: print to standard output and exit 0.
    Info(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_FAILURE,
            CliError::Info(_) => EXIT_OK,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Info(m) => f.write_str(m),
        }
    }
}

/// A fully resolved and validated invocation.
#[derive(Clone, Debug, PartialEq)]
pub enum CliCommand {
    Eval(ModelParams),
    Sweep {
        spec: SweepSpec,
        out: Option<PathBuf>,
    },
    Verify {
        grid: usize,
        tol: f64,
    },
    Spectra(ModelParams),
    Convert(PhysicalParams),
}

#[derive(Parser, Debug)]
#[command(
    name = "unruh-coherence",
    version,
    about = "Basis-independent coherence of two Unruh-DeWitt detectors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coherence measures at one (q, nu) point
    Eval(PointArgs),
    /// Evaluate a (q, nu) grid and write CSV
    Sweep(SweepArgs),
    /// Check the triangle inequality and path agreement over an N x N grid
    Verify(VerifyArgs),
    /// Closed-form spectra next to eigensolver spectra
    Spectra(PointArgs),
    /// Physical parameters to (q, nu^2)
    Convert(ConvertArgs),
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    /// key=value file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    q_min: Option<f64>,
    #[arg(long)]
    q_max: Option<f64>,
    #[arg(long)]
    q_steps: Option<usize>,
    #[arg(long)]
    nu_min: Option<f64>,
    #[arg(long)]
    nu_max: Option<f64>,
    #[arg(long)]
    nu_steps: Option<usize>,
    /// Output file (standard output when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Grid size per axis over [0, 1] x [0, 1]
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    accel: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Flat `key=value` settings; `#` starts a comment.
#[derive(Debug, Default)]
struct ConfigFile {
    path: String,
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = Self {
            path: path.display().to_string(),
            values: BTreeMap::new(),
        };
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "{}:{}: expected key=value, got '{raw}'",
                    cfg.path,
                    n + 1
                ))
            })?;
            let key = key.trim().replace('_', "-");
            cfg.values.insert(key, value.trim().to_string());
        }
        Ok(cfg)
    }

    /// Flag value if given, else the config value; consumes the key either way.
    fn resolve<T: FromStr>(&mut self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        let from_file = match self.values.remove(key) {
            Some(text) => Some(text.parse::<T>().map_err(|_| {
                CliError::Usage(format!("{}: invalid value '{text}' for '{key}'", self.path))
            })?),
            None => None,
        };
        Ok(flag.or(from_file))
    }

    fn finish(self) -> Result<(), CliError> {
        match self.values.keys().next() {
            Some(key) => Err(CliError::Usage(format!(
                "{}: unknown key '{key}'",
                self.path
            ))),
            None => Ok(()),
        }
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required flag --{flag}")))
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn resolve_point(args: PointArgs) -> Result<ModelParams, CliError> {
    let mut cfg = ConfigFile::load(args.config.as_deref())?;
    let q = cfg.resolve(args.q, "q")?;
    let nu = cfg.resolve(args.nu, "nu")?;
    cfg.finish()?;
    ModelParams::new(require(q, "q")?, require(nu, "nu")?).map_err(usage)
}

/// Parses `argv` (without the program name) into a validated command.
pub fn parse_args<I, T>(argv: I) -> Result<CliCommand, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let full =
        std::iter::once(OsString::from("unruh-coherence")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(full).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    })?;

    match cli.command {
        Command::Eval(args) => Ok(CliCommand::Eval(resolve_point(args)?)),
        Command::Spectra(args) => Ok(CliCommand::Spectra(resolve_point(args)?)),
        Command::Sweep(args) => {
            let mut cfg = ConfigFile::load(args.config.as_deref())?;
            let d = SweepSpec::default();
            let spec = SweepSpec {
                q_min: cfg.resolve(args.q_min, "q-min")?.unwrap_or(d.q_min),
                q_max: cfg.resolve(args.q_max, "q-max")?.unwrap_or(d.q_max),
                q_steps: cfg.resolve(args.q_steps, "q-steps")?.unwrap_or(d.q_steps),
                nu_min: cfg.resolve(args.nu_min, "nu-min")?.unwrap_or(d.nu_min),
                nu_max: cfg.resolve(args.nu_max, "nu-max")?.unwrap_or(d.nu_max),
                nu_steps: cfg
                    .resolve(args.nu_steps, "nu-steps")?
                    .unwrap_or(d.nu_steps),
                include_endpoints: true,
            };
            let out = cfg.resolve(args.out, "out")?;
            cfg.finish()?;
            spec.validate().map_err(usage)?;
            Ok(CliCommand::Sweep { spec, out })
        }
        Command::Verify(args) => {
            let mut cfg = ConfigFile::load(args.config.as_deref())?;
            let grid = cfg.resolve(args.grid, "grid")?.unwrap_or(101);
            let tol = cfg.resolve(args.tol, "tol")?.unwrap_or(1e-9);
            cfg.finish()?;
            if grid == 0 {
                return Err(CliError::Usage("--grid must be at least 1".into()));
            }
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(CliError::Usage("--tol must be positive and finite".into()));
            }
            Ok(CliCommand::Verify { grid, tol })
        }
        Command::Convert(args) => {
            let mut cfg = ConfigFile::load(args.config.as_deref())?;
            let p = PhysicalParams {
                omega: require(cfg.resolve(args.omega, "omega")?, "omega")?,
                accel: require(cfg.resolve(args.accel, "accel")?, "accel")?,
                eps: require(cfg.resolve(args.eps, "eps")?, "eps")?,
                delta: require(cfg.resolve(args.delta, "delta")?, "delta")?,
                kappa: require(cfg.resolve(args.kappa, "kappa")?, "kappa")?,
            };
            cfg.finish()?;
            p.validate().map_err(usage)?;
            Ok(CliCommand::Convert(p))
        }
    }
}

/// `%.12g`: 12 significant digits, trailing zeros trimmed, exponent form
/// outside `[1e-4, 1e12)`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (11 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn csv_row(r: &SweepRecord) -> String {
    [
        r.nu,
        r.q,
        r.alpha,
        r.beta,
        r.gamma,
        r.c_total,
        r.c_collective,
        r.c_localized,
        r.triangle_slack,
        r.path_gap,
    ]
    .map(format_number)
    .join(",")
}

pub fn write_csv<W: Write>(records: &[SweepRecord], w: &mut W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", csv_row(r))?;
    }
    Ok(())
}

pub fn write_report<W: Write>(report: &VerificationReport, w: &mut W) -> io::Result<()> {
    let (q_at, nu_at) = report.argmin_c_total;
    writeln!(w, "points_checked           = {}", report.points_checked)?;
    writeln!(w, "points_skipped           = {}", report.points_skipped)?;
    writeln!(
        w,
        "max_triangle_violation   = {}",
        format_number(report.max_triangle_violation)
    )?;
    writeln!(
        w,
        "max_path_gap             = {}",
        format_number(report.max_path_gap)
    )?;
    writeln!(
        w,
        "min_c_total              = {} (q = {}, nu = {})",
        format_number(report.min_c_total),
        format_number(q_at),
        format_number(nu_at)
    )?;
    writeln!(
        w,
        "monotonic_fraction_in_nu = {}",
        format_number(report.monotonic_fraction_in_nu)
    )?;
    writeln!(
        w,
        "monotonic_fraction_in_q  = {}",
        format_number(report.monotonic_fraction_in_q)
    )?;
    writeln!(
        w,
        "tolerance                = {}",
        format_number(report.tolerance)
    )?;
    writeln!(w, "pass                     = {}", report.pass)
}

fn write_spectra<W: Write>(
    closed: &ClosedFormSpectra,
    numeric: &ClosedFormSpectra,
    w: &mut W,
) -> io::Result<()> {
    writeln!(
        w,
        "{:<12} {:>20} {:>20} {:>12}",
        "matrix", "closed_form", "eigensolver", "gap"
    )?;
    for ((label, c), n) in ClosedFormSpectra::LABELS
        .iter()
        .zip(closed.as_array())
        .zip(numeric.as_array())
    {
        for (a, b) in c.values().iter().zip(n.values()) {
            writeln!(
                w,
                "{label:<12} {:>20} {:>20} {:>12}",
                format_number(*a),
                format_number(*b),
                format_number((a - b).abs())
            )?;
        }
    }
    Ok(())
}

/// Executes a command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run_command<O: Write, E: Write>(cmd: &CliCommand, out: &mut O, err: &mut E) -> i32 {
    match execute(cmd, out, err) {
        Ok(code) => code,
        Err(e) => {
            if e.downcast_ref::<io::Error>().map(io::Error::kind) == Some(io::ErrorKind::BrokenPipe)
            {
                return EXIT_OK;
            }
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn execute<O: Write, E: Write>(
    cmd: &CliCommand,
    out: &mut O,
    err: &mut E,
) -> Result<i32, Box<dyn std::error::Error>> {
    match cmd {
        CliCommand::Eval(p) => {
            let point = detector_state(p)?;
            let t = coherence_closed_form(p)?;
            let gap = t.max_gap(&coherence_numeric(p)?);
            let warnings = p.warnings();
            for wn in &warnings {
                writeln!(err, "warning: {wn}")?;
            }
            let pop = point.populations;
            let rows = [
                ("q", p.q()),
                ("nu", p.nu()),
                ("alpha", pop.alpha),
                ("beta", pop.beta),
                ("gamma", pop.gamma),
                ("c_total", t.c_total),
                ("c_collective", t.c_collective),
                ("c_localized", t.c_localized),
                ("triangle_slack", t.triangle_slack),
                ("path_gap", gap),
            ];
            for (k, v) in rows {
                writeln!(out, "{k:<14} = {}", format_number(v))?;
            }
            let validity = if warnings.is_empty() {
                "ok"
            } else {
                "perturbative bound exceeded"
            };
            writeln!(out, "{:<14} = {validity}", "validity")?;
            Ok(EXIT_OK)
        }
        CliCommand::Sweep { spec, out: path } => {
            let Sweep { records, skipped } = run_sweep(spec)?;
            for s in &skipped {
                writeln!(
                    err,
                    "notice: skipped degenerate point q = {}, nu = {} (limits do not commute)",
                    format_number(s.q),
                    format_number(s.nu)
                )?;
            }
            for wn in records
                .iter()
                .filter_map(|r| ModelParams::new(r.q, r.nu).ok())
                .flat_map(|p| p.warnings())
                .take(1)
            {
                writeln!(err, "warning: grid includes points where {wn}")?;
            }
            match path {
                Some(path) => {
                    let mut buf = Vec::new();
                    write_csv(&records, &mut buf)?;
                    fs::write(path, buf)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                }
                None => write_csv(&records, out)?,
            }
            Ok(EXIT_OK)
        }
        CliCommand::Verify { grid, tol } => {
            let report = verify_grid(&SweepSpec::square(*grid), *tol)?;
            write_report(&report, out)?;
            if report.min_c_total > 0.0 {
                writeln!(
                    err,
                    "note: c_total stays strictly positive on this grid (minimum {})",
                    format_number(report.min_c_total)
                )?;
            }
            Ok(if report.pass { EXIT_OK } else { EXIT_FAILURE })
        }
        CliCommand::Spectra(p) => {
            let point = detector_state(p)?;
            let pop = point.populations;
            let closed = closed_form_spectra(pop.alpha, pop.beta, pop.gamma)?;
            let numeric = numeric_spectra(&point)?;
            for wn in p.warnings() {
                writeln!(err, "warning: {wn}")?;
            }
            write_spectra(&closed, &numeric, out)?;
            writeln!(
                out,
                "max_gap = {}",
                format_number(closed.max_gap(&numeric)?)
            )?;
            Ok(EXIT_OK)
        }
        CliCommand::Convert(phys) => {
            let q = q_from_acceleration(phys.omega, phys.accel)?;
            let est = nu_squared_from_physical(phys)?;
            for wn in &est.warnings {
                writeln!(err, "warning: {wn}")?;
            }
            writeln!(out, "q          = {}", format_number(q))?;
            writeln!(out, "nu_squared = {}", format_number(est.nu_squared))?;
            writeln!(out, "nu         = {}", format_number(est.nu_squared.sqrt()))?;
            Ok(EXIT_OK)
        }
    }
}
