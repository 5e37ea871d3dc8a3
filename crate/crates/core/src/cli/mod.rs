//! The `ccrit` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 computation error.

mod config;
pub mod output;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::criticality::{
    c1_constant, c2_constant, c3_constant, tc_film, tc_grain_cubic, tc_grain_general,
    tc_wire_general, tc_wire_square, CriticalResult, GLParams, C1_REFERENCE, C2_REFERENCE,
    C3_MISPRINT, C3_REFERENCE,
};
use crate::error::Error;
use crate::gap::{solve_gap, GapProblem};
use crate::lattice_sums::{
    e2_continued, e3_continued, epstein_d_direct, epstein_d_recurrence, epstein_single_ordering,
};
use crate::series::{SeriesValue, TruncationPolicy};
use crate::verify;

use config::{ConfigFile, RealList};
use output::{render_record, render_table, Field, Format, Record};

pub const MAX_INDEX_ENV: &str = "CCRIT_MAX_INDEX";
const DEFAULT_PRECISION: usize = 12;
const GLOBAL_KEYS: &[&str] = &["format", "precision", "max-index", "rel-tol"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(Error),
    Verification(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(msg) => Failure::Usage(msg),
            other => Failure::Compute(other),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ccrit",
    version,
    about = "Lattice sums, gap equation and size-dependent critical temperatures of confined phi^4 systems"
)]
struct Cli {
    /// Output format (sweep defaults to csv).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Significant digits printed, 4 to 15.
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Flat key=value file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cap on every summation index (also read from CCRIT_MAX_INDEX).
    #[arg(long, global = true)]
    max_index: Option<usize>,
    /// Relative truncation tolerance of the infinite sums.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the geometric constants C1, C2, C3.
    Constants(ConstantsArgs),
    /// Critical temperature of a film, wire or grain.
    Tc(TcArgs),
    /// Solve the boundary-modified mass equation.
    Gap(GapArgs),
    /// Evaluate the positive-orthant Epstein function E_d.
    Epstein(EpsteinArgs),
    /// Tabulate tc over a range of sizes.
    Sweep(SweepArgs),
    /// Run the built-in consistency checks.
    Verify(VerifyArgs),
}

#[derive(Debug, clap::Args)]
struct ConstantsArgs {
    /// Exit with status 1 if a constant misses its reference value.
    #[arg(long)]
    check: bool,
}

#[derive(Debug, clap::Args)]
struct TcArgs {
    /// Film thickness.
    #[arg(long)]
    film: Option<f64>,
    /// Cross-section area of a square wire.
    #[arg(long)]
    wire_area: Option<f64>,
    /// Volume of a cubic grain.
    #[arg(long)]
    grain_volume: Option<f64>,
    /// Sides L1,L2 of a rectangular wire (diagnostic for unequal sides).
    #[arg(long)]
    wire_sides: Option<RealList>,
    /// Edges L1,L2,L3 of a rectangular grain (diagnostic for unequal edges).
    #[arg(long)]
    grain_edges: Option<RealList>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    t0: Option<f64>,
}

#[derive(Debug, clap::Args)]
struct GapArgs {
    /// Space-time dimension.
    #[arg(long = "D")]
    dim: Option<f64>,
    /// Number of compactified directions (must match --lengths).
    #[arg(long = "d")]
    d: Option<usize>,
    /// Comma-separated compactification lengths.
    #[arg(long)]
    lengths: Option<RealList>,
    /// Bare squared mass.
    #[arg(long)]
    m0sq: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Solver tolerance on the gap defect.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Recurrence,
    Continued,
    Both,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Method as ValueEnum>::from_str(s, false)
    }
}

#[derive(Debug, clap::Args)]
struct EpsteinArgs {
    #[arg(long)]
    nu: Option<f64>,
    /// Comma-separated lengths L1[,L2[,L3]].
    #[arg(long)]
    lengths: Option<RealList>,
    /// direct, recurrence (default), continued, or both (direct and recurrence).
    #[arg(long, value_enum)]
    method: Option<Method>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepGeometry {
    Film,
    Wire,
    Grain,
}

impl std::str::FromStr for SweepGeometry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <SweepGeometry as ValueEnum>::from_str(s, false)
    }
}

#[derive(Debug, clap::Args)]
struct SweepArgs {
    /// film (thickness), wire (area) or grain (volume).
    #[arg(long, value_enum)]
    geometry: Option<SweepGeometry>,
    /// First size.
    #[arg(long)]
    from: Option<f64>,
    /// Last size.
    #[arg(long)]
    to: Option<f64>,
    /// Number of equally spaced sizes, at least 2.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    t0: Option<f64>,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {}

/// What a finished invocation should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (program name first). `env_max_index` is the
/// value of `CCRIT_MAX_INDEX`, if set.
pub fn run(args: Vec<OsString>, env_max_index: Option<String>) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(cli, env_max_index) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err((stdout, failure)) => {
            let (code, msg) = match failure {
                Failure::Usage(m) => (2, format!("usage error: {m}\n")),
                Failure::Compute(e) => (3, format!("computation error: {e}\n")),
                Failure::Verification(m) => (1, format!("verification failed: {m}\n")),
            };
            Outcome {
                code,
                stdout,
                stderr: msg,
            }
        }
    }
}

pub fn main() -> std::process::ExitCode {
    use std::io::Write;
    let outcome = run(
        std::env::args_os().collect(),
        std::env::var(MAX_INDEX_ENV).ok(),
    );
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::ExitCode::from(outcome.code)
}

struct Settings {
    format: Format,
    digits: usize,
    policy: Result<TruncationPolicy, Error>,
}

fn allowed_keys(subcommand: &str) -> Vec<String> {
    let cmd = Cli::command();
    let mut keys: Vec<String> = GLOBAL_KEYS.iter().map(|s| s.to_string()).collect();
    if let Some(sub) = cmd.find_subcommand(subcommand) {
        keys.extend(
            sub.get_arguments()
                .filter_map(|a| a.get_long())
                .filter(|l| !GLOBAL_KEYS.contains(l) && *l != "config")
                .map(|l| l.replace('_', "-")),
        );
    }
    keys
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Constants(_) => "constants",
        Command::Tc(_) => "tc",
        Command::Gap(_) => "gap",
        Command::Epstein(_) => "epstein",
        Command::Sweep(_) => "sweep",
        Command::Verify(_) => "verify",
    }
}

fn settings(
    cli: &Cli,
    cfg: &ConfigFile,
    env_max_index: Option<String>,
) -> Result<Settings, Failure> {
    let default_format = match cli.command {
        Command::Sweep(_) => Format::Csv,
        _ => Format::Text,
    };
    let format = cfg.merge(cli.format, "format")?.unwrap_or(default_format);
    let digits = cfg
        .merge(cli.precision, "precision")?
        .unwrap_or(DEFAULT_PRECISION);
    if !(4..=15).contains(&digits) {
        return Err(Failure::Usage(format!(
            "precision must be between 4 and 15, got {digits}"
        )));
    }
    let env =
        match env_max_index {
            Some(raw) => Some(raw.trim().parse::<usize>().map_err(|e| {
                Failure::Usage(format!("{MAX_INDEX_ENV}: invalid value '{raw}': {e}"))
            })?),
            None => None,
        };
    let max_index = match cli.max_index.or(env) {
        Some(m) => Some(m),
        None => cfg.merge(None::<usize>, "max-index")?,
    };
    let rel_tol = cfg.merge(cli.rel_tol, "rel-tol")?;
    let base = TruncationPolicy::default();
    let policy = TruncationPolicy::new(
        rel_tol.unwrap_or(base.rel_tol),
        base.abs_tol,
        max_index.unwrap_or(base.max_index),
    );
    Ok(Settings {
        format,
        digits,
        policy,
    })
}

type Run = Result<String, (String, Failure)>;

fn execute(cli: Cli, env_max_index: Option<String>) -> Run {
    let fail = |f: Failure| (String::new(), f);
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path).map_err(|e| fail(e.into()))?,
        None => ConfigFile::default(),
    };
    cfg.check_keys(&allowed_keys(subcommand_name(&cli.command)))
        .map_err(|e| fail(e.into()))?;
    let s = settings(&cli, &cfg, env_max_index).map_err(fail)?;
    if let Command::Verify(_) = cli.command {
        return cmd_verify(&s);
    }
    let policy = s.policy.clone().map_err(|e| fail(e.into()))?;
    let result = match &cli.command {
        Command::Constants(a) => return cmd_constants(a, &cfg, &s, &policy),
        Command::Tc(a) => cmd_tc(a, &cfg, &s, &policy),
        Command::Gap(a) => cmd_gap(a, &cfg, &s, &policy),
        Command::Epstein(a) => cmd_epstein(a, &cfg, &s, &policy),
        Command::Sweep(a) => cmd_sweep(a, &cfg, &s, &policy),
        Command::Verify(_) => unreachable!("handled above"),
    };
    result.map_err(fail)
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("missing required flag --{flag}")))
}

fn series_record(name: &str, v: &SeriesValue) -> Record {
    vec![
        ("name", Field::Text(name.to_string())),
        ("value", Field::Num(v.value)),
        ("error_bound", Field::Num(v.error_bound)),
        ("terms_used", Field::Int(v.terms_used)),
    ]
}

fn cmd_constants(a: &ConstantsArgs, cfg: &ConfigFile, s: &Settings, t: &TruncationPolicy) -> Run {
    let fail = |f: Failure| (String::new(), f);
    let check = a.check
        || cfg
            .merge(None::<bool>, "check")
            .map_err(|e| fail(e.into()))?
            .unwrap_or(false);
    let c1 = SeriesValue::exact(c1_constant());
    let c2 = c2_constant(t).map_err(|e| fail(e.into()))?;
    let c3 = c3_constant(t).map_err(|e| fail(e.into()))?;
    let rows = [
        ("C1", c1, C1_REFERENCE, 5e-5, ""),
        ("C2", c2, C2_REFERENCE, 5e-4, ""),
        ("C3", c3, C3_REFERENCE, 1e-3, "misprint 2.7657 rejected"),
    ];
    let d = s.digits;
    let out = match s.format {
        Format::Text => {
            let mut text = String::new();
            for (name, v, reference, _, note) in &rows {
                let _ = write!(
                    text,
                    "{name} = {} +/- {} ({} terms; reference {reference}",
                    output::format_number(v.value, d),
                    output::format_number(v.error_bound, 2),
                    v.terms_used
                );
                if note.is_empty() {
                    text.push_str(")\n");
                } else {
                    let _ = writeln!(
                        text,
                        "; differs from the misprinted {C3_MISPRINT} by {})",
                        output::format_number((v.value - C3_MISPRINT).abs(), 4)
                    );
                }
            }
            text
        }
        format => {
            let records: Vec<Record> = rows
                .iter()
                .map(|(name, v, reference, _, note)| {
                    let mut r = series_record(name, v);
                    r.push(("reference", Field::Num(*reference)));
                    r.push(("note", Field::Text(note.to_string())));
                    r
                })
                .collect();
            render_table(&records, format, d)
        }
    };
    if check {
        let misses: Vec<String> = rows
            .iter()
            .filter(|(_, v, reference, tol, _)| (v.value - reference).abs() > *tol)
            .map(|(name, v, reference, _, _)| format!("{name} = {} vs {reference}", v.value))
            .collect();
        if !misses.is_empty() {
            return Err((out, Failure::Verification(misses.join("; "))));
        }
    }
    Ok(out)
}

fn gl_params(
    alpha: Option<f64>,
    lambda: Option<f64>,
    t0: Option<f64>,
    cfg: &ConfigFile,
) -> Result<GLParams, Failure> {
    let alpha = required(cfg.merge(alpha, "alpha")?, "alpha")?;
    let lambda = required(cfg.merge(lambda, "lambda")?, "lambda")?;
    let t0 = required(cfg.merge(t0, "t0")?, "t0")?;
    Ok(GLParams::new(alpha, lambda, t0)?)
}

fn critical_record(geometry: &str, size: Field, r: &CriticalResult) -> Record {
    vec![
        ("geometry", Field::Text(geometry.to_string())),
        ("size", size),
        ("linear_size", Field::Num(r.linear_size)),
        ("tc", Field::Num(r.tc)),
        ("c_constant", Field::Num(r.c_constant)),
        ("min_size", Field::Num(r.min_size)),
        ("transition_exists", Field::Bool(r.transition_exists)),
    ]
}

fn cmd_tc(
    a: &TcArgs,
    cfg: &ConfigFile,
    s: &Settings,
    t: &TruncationPolicy,
) -> Result<String, Failure> {
    let film = cfg.merge(a.film, "film")?;
    let wire_area = cfg.merge(a.wire_area, "wire-area")?;
    let grain_volume = cfg.merge(a.grain_volume, "grain-volume")?;
    let wire_sides = cfg.merge(a.wire_sides.clone(), "wire-sides")?;
    let grain_edges = cfg.merge(a.grain_edges.clone(), "grain-edges")?;
    let given = [
        film.is_some(),
        wire_area.is_some(),
        grain_volume.is_some(),
        wire_sides.is_some(),
        grain_edges.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if given != 1 {
        return Err(Failure::Usage(
            "give exactly one of --film, --wire-area, --grain-volume, --wire-sides, --grain-edges"
                .into(),
        ));
    }
    let g = gl_params(a.alpha, a.lambda, a.t0, cfg)?;
    let record = if let Some(l) = film {
        critical_record("film", Field::Num(l), &tc_film(&g, l)?)
    } else if let Some(area) = wire_area {
        critical_record("wire", Field::Num(area), &tc_wire_square(&g, area, t)?)
    } else if let Some(v) = grain_volume {
        critical_record("grain", Field::Num(v), &tc_grain_cubic(&g, v, t)?)
    } else if let Some(RealList(sides)) = wire_sides {
        if sides.len() != 2 {
            return Err(Failure::Usage(format!(
                "--wire-sides needs 2 values, got {}",
                sides.len()
            )));
        }
        let r = tc_wire_general(&g, sides[0], sides[1], t)?;
        critical_record("wire", Field::Nums(sides), &r)
    } else if let Some(RealList(edges)) = grain_edges {
        if edges.len() != 3 {
            return Err(Failure::Usage(format!(
                "--grain-edges needs 3 values, got {}",
                edges.len()
            )));
        }
        let r = tc_grain_general(&g, [edges[0], edges[1], edges[2]], t)?;
        critical_record("grain", Field::Nums(edges), &r)
    } else {
        unreachable!("exactly one geometry was given")
    };
    Ok(render_record(&record, s.format, s.digits))
}

fn cmd_gap(
    a: &GapArgs,
    cfg: &ConfigFile,
    s: &Settings,
    t: &TruncationPolicy,
) -> Result<String, Failure> {
    let dim = cfg.merge(a.dim, "D")?.unwrap_or(3.0);
    let RealList(lengths) = required(cfg.merge(a.lengths.clone(), "lengths")?, "lengths")?;
    if let Some(d) = cfg.merge(a.d, "d")? {
        if d != lengths.len() {
            return Err(Failure::Usage(format!(
                "--d {d} does not match the {} value(s) given to --lengths",
                lengths.len()
            )));
        }
    }
    let m0_sq = required(cfg.merge(a.m0sq, "m0sq")?, "m0sq")?;
    let lambda = required(cfg.merge(a.lambda, "lambda")?, "lambda")?;
    let tol = cfg.merge(a.tol, "tol")?.unwrap_or(1e-12);
    let p = GapProblem::new(dim, lengths.clone(), m0_sq, lambda)?;
    let sol = solve_gap(&p, t, tol)?;
    let record: Record = vec![
        ("D", Field::Num(dim)),
        ("d", Field::Int(lengths.len() as u64)),
        ("lengths", Field::Nums(lengths)),
        ("m0_sq", Field::Num(m0_sq)),
        ("lambda", Field::Num(lambda)),
        ("m_sq", Field::Num(sol.m_sq)),
        ("residual", Field::Num(sol.residual)),
        ("iterations", Field::Int(sol.iterations as u64)),
    ];
    Ok(render_record(&record, s.format, s.digits))
}

fn continued(nu: f64, lengths: &[f64], t: &TruncationPolicy) -> crate::Result<SeriesValue> {
    let dim = 2.0 * nu + 2.0;
    match lengths.len() {
        1 => epstein_single_ordering(nu, lengths, t),
        2 => e2_continued(dim, lengths[0], lengths[1], t),
        _ => e3_continued(dim, lengths, t),
    }
}

fn cmd_epstein(
    a: &EpsteinArgs,
    cfg: &ConfigFile,
    s: &Settings,
    t: &TruncationPolicy,
) -> Result<String, Failure> {
    let nu = required(cfg.merge(a.nu, "nu")?, "nu")?;
    let RealList(lengths) = required(cfg.merge(a.lengths.clone(), "lengths")?, "lengths")?;
    if lengths.is_empty() || lengths.len() > 3 {
        return Err(Failure::Usage(format!(
            "--lengths takes 1 to 3 values, got {}",
            lengths.len()
        )));
    }
    let method = cfg.merge(a.method, "method")?.unwrap_or(Method::Recurrence);
    let recurrence = |l: &[f64]| {
        if l.len() == 1 {
            epstein_single_ordering(nu, l, t)
        } else {
            epstein_d_recurrence(nu, l, t)
        }
    };
    let mut records = Vec::new();
    match method {
        Method::Direct => {
            records.push(series_record("direct", &epstein_d_direct(nu, &lengths, t)?))
        }
        Method::Recurrence => records.push(series_record("recurrence", &recurrence(&lengths)?)),
        Method::Continued => records.push(series_record("continued", &continued(nu, &lengths, t)?)),
        Method::Both => {
            let direct = epstein_d_direct(nu, &lengths, t)?;
            let rec = recurrence(&lengths)?;
            records.push(series_record("direct", &direct));
            records.push(series_record("recurrence", &rec));
            let diff = SeriesValue::new(
                direct.value - rec.value,
                direct.error_bound + rec.error_bound,
                0,
            );
            records.push(series_record("difference", &diff));
        }
    }
    let out = match s.format {
        Format::Text => records
            .iter()
            .map(|r| {
                let get = |i: usize| match &r[i].1 {
                    Field::Num(x) => output::format_number(*x, if i == 2 { 2 } else { s.digits }),
                    Field::Int(n) => n.to_string(),
                    Field::Text(x) => x.clone(),
                    _ => String::new(),
                };
                format!(
                    "{} = {} +/- {} ({} terms)\n",
                    get(0),
                    get(1),
                    get(2),
                    get(3)
                )
            })
            .collect(),
        format => render_table(&records, format, s.digits),
    };
    Ok(out)
}

fn cmd_sweep(
    a: &SweepArgs,
    cfg: &ConfigFile,
    s: &Settings,
    t: &TruncationPolicy,
) -> Result<String, Failure> {
    let geometry = required(cfg.merge(a.geometry, "geometry")?, "geometry")?;
    let from = required(cfg.merge(a.from, "from")?, "from")?;
    let to = required(cfg.merge(a.to, "to")?, "to")?;
    let steps = required(cfg.merge(a.steps, "steps")?, "steps")?;
    if !(from.is_finite() && to.is_finite() && from > 0.0 && from < to) {
        return Err(Failure::Usage(format!(
            "need 0 < from < to, got from = {from}, to = {to}"
        )));
    }
    if steps < 2 {
        return Err(Failure::Usage(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    let g = gl_params(a.alpha, a.lambda, a.t0, cfg)?;
    let mut records = Vec::with_capacity(steps);
    for i in 0..steps {
        let size = if i + 1 == steps {
            to
        } else {
            from + (to - from) * i as f64 / (steps - 1) as f64
        };
        let r = match geometry {
            SweepGeometry::Film => tc_film(&g, size)?,
            SweepGeometry::Wire => tc_wire_square(&g, size, t)?,
            SweepGeometry::Grain => tc_grain_cubic(&g, size, t)?,
        };
        records.push(vec![
            ("size", Field::Num(size)),
            ("inv_linear_size", Field::Num(1.0 / r.linear_size)),
            ("tc", Field::Num(r.tc)),
            ("transition_exists", Field::Bool(r.transition_exists)),
        ]);
    }
    let out = match s.format {
        Format::Json => render_table(&records, Format::Json, s.digits),
        _ => output::csv_table(&records, s.digits),
    };
    Ok(out)
}

fn cmd_verify(s: &Settings) -> Run {
    let checks = verify::run_all(s.policy.clone());
    let (passed, total) = verify::summary(&checks);
    let out = match s.format {
        Format::Text => {
            let mut text = String::new();
            for c in &checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(text, "{mark}  {}: {}", c.name, c.detail);
            }
            let _ = writeln!(text, "{passed}/{total} checks passed");
            text
        }
        Format::Json => output::json_string(&json!({
            "checks": Value::from(
                checks
                    .iter()
                    .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                    .collect::<Vec<_>>()
            ),
            "passed": passed,
            "total": total,
        })),
        Format::Csv => {
            let records: Vec<Record> = checks
                .iter()
                .map(|c| {
                    vec![
                        ("name", Field::Text(c.name.to_string())),
                        ("passed", Field::Bool(c.passed)),
                        ("detail", Field::Text(c.detail.clone())),
                    ]
                })
                .collect();
            output::csv_table(&records, s.digits)
        }
    };
    if passed == total {
        Ok(out)
    } else {
        Err((
            out,
            Failure::Verification(format!("{} of {total} checks failed", total - passed)),
        ))
    }
}
