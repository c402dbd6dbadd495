//! Command-line front end: `eval`, `verify`, `table`, `coeffs`.
//!
//! Exit codes: 0 success, 1 bad input or I/O failure, 2 not converged or
//! inconclusive, 3 a verification failed.

pub mod complex;
pub mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::characters::{l_sh_eval, l_sh_via_li, l_star_multi, Character, Conductor};
use crate::engine::{
    li_eval, ll_eval, t_value_eval, zeta_eval, ArgVector, EvalConfig, EvalError, EvalResult, TwoVarPoint,
};
use crate::exact::{expand_li, identity_difference, ExactError, ExactParams, MonomialArg};
use crate::index::{admissible_indices, compositions, Index};
use crate::registry::{
    self, list_identities, verify_identity, IdentityReport, Params, RegistryError, Status, VerifyOptions,
};
use complex::{format_complex, parse_complex_list};
pub use config::{CliConfig, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_FAIL: i32 = 3;

pub const MAX_TABLE_WEIGHT: u32 = 12;
pub const MAX_COEFF_DEGREE: u32 = 40;

#[derive(Debug, Parser)]
#[command(name = "mplv", version, about = "Multiple polylogarithms, L-values and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one value and print value, err_est and terms_used.
    Eval(EvalArgs),
    /// Verify catalogue identities and write a JSON-lines report.
    Verify(VerifyArgs),
    /// Write a CSV table of depth-two values.
    Table(TableArgs),
    /// Dump exact power-series coefficients.
    Coeffs(CoeffsArgs),
    /// List the identity catalogue.
    List,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Func {
    Li,
    Ll,
    Zeta,
    T,
    Lsh,
    Lstar,
}

/// Flags shared with config files. Defaults: tol 1e-10, n_max 2^24,
/// delta 0.05, method auto, seed 42.
#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Target absolute tolerance [default: 1e-10].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Term budget per evaluation [default: 16777216].
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Margin from singular sets [default: 0.05].
    #[arg(long)]
    pub delta: Option<f64>,
    /// auto, direct-series or path-split [default: auto].
    #[arg(long, value_parser = config::parse_method)]
    pub method: Option<crate::engine::Method>,
    /// key = value file; flags take precedence over it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl CommonArgs {
    fn layer(&self) -> CliConfig {
        CliConfig { tol: self.tol, n_max: self.n_max, delta: self.delta, method: self.method, ..CliConfig::default() }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub func: Func,
    /// Index `k1,k2,...`.
    #[arg(long, default_value = "")]
    pub index: String,
    /// Comma-separated complex arguments (`a`, `a+bi`, `rho@theta`).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub args: String,
    /// Characters for lsh/lstar: one per index entry, or one for all
    /// (`chi3`, `chi4`, `one1`..`one4`, `chi3^2`, `chi4^2`).
    #[arg(long, default_value = "")]
    pub chars: String,
    /// text or json [default: text].
    #[arg(long)]
    pub format: Option<OutputFormat>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity id, as printed by `mplv list`.
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub id: Option<String>,
    /// Every identity in the catalogue.
    #[arg(long)]
    pub all: bool,
    /// Parameter filters; unset ones range over the default grid.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    /// Truncation degree for exact mode [default: 20, 24 for thm1.2].
    #[arg(long)]
    pub degree: Option<u32>,
    /// Points per parameter set [default: per identity].
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// exact, numeric, limit or derivative [default: per identity].
    #[arg(long)]
    pub mode: Option<registry::Mode>,
    /// Largest t of the limit sequences.
    #[arg(long, default_value_t = 16)]
    pub t_max: u32,
    /// JSON-lines report: a header line with timings, then one report per identity.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Family {
    #[value(name = "zeta2")]
    Zeta2,
    #[value(name = "T2")]
    T2,
    #[value(name = "Lsh3")]
    Lsh3,
    #[value(name = "Lsh4")]
    Lsh4,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Zeta2 => "zeta2",
            Family::T2 => "T2",
            Family::Lsh3 => "Lsh3",
            Family::Lsh4 => "Lsh4",
        }
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub weight_max: u32,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// Print `LHS - RHS` of an exactly checkable identity.
    #[arg(long, conflicts_with = "term", required_unless_present = "term")]
    pub identity: Option<String>,
    /// A single term, e.g. `li 1,2 x,y`.
    #[arg(long)]
    pub term: Option<String>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub degree: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn input_error(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_INPUT, message: message.into() }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        input_error(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

/// Parse `args` (including the program name) and run. Output goes to `out`,
/// diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    init_threads();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Coeffs(a) => cmd_coeffs(&a, out),
        Command::List => cmd_list(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

/// Honour `MPLV_THREADS` once per process.
fn init_threads() {
    if let Some(n) = std::env::var("MPLV_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn layered(common: &CommonArgs, extra: CliConfig) -> Result<CliConfig, CliError> {
    let file = match &common.config {
        Some(p) => CliConfig::load(p).map_err(input_error)?,
        None => CliConfig::default(),
    };
    let cfg = extra.over(common.layer()).over(file);
    cfg.eval_config().validate().map_err(|e| input_error(e.to_string()))?;
    Ok(cfg)
}

fn parse_index(s: &str) -> Result<Index, CliError> {
    s.parse::<Index>().map_err(|e| input_error(format!("index {s:?}: {e}")))
}

fn parse_chars(s: &str, depth: usize) -> Result<Vec<Character>, CliError> {
    let chars: Vec<Character> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<Character>().map_err(input_error))
        .collect::<Result<_, _>>()?;
    match chars.len() {
        0 => Err(input_error("--chars is required for lsh and lstar")),
        1 => Ok(vec![chars[0]; depth]),
        n if n == depth => Ok(chars),
        n => Err(input_error(format!("{n} characters for an index of depth {depth}"))),
    }
}

fn evaluate(a: &EvalArgs, cfg: &EvalConfig) -> Result<EvalResult, CliError> {
    let index = parse_index(&a.index)?;
    let args = parse_complex_list(&a.args).map_err(input_error)?;
    let want_args = |n: usize| -> Result<(), CliError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(input_error(format!("expected {n} argument(s), got {}", args.len())))
        }
    };
    if index.is_empty() {
        return Err(input_error("--index must be non-empty"));
    }
    let r = match a.func {
        Func::Li => {
            want_args(index.depth())?;
            li_eval(&index, &ArgVector::new(&args), cfg)
        }
        Func::Ll => {
            want_args(2)?;
            ll_eval(&index, &TwoVarPoint::new(args[0], args[1]), cfg)
        }
        Func::Zeta => {
            want_args(0)?;
            zeta_eval(&index, cfg)
        }
        Func::T => {
            want_args(0)?;
            t_value_eval(&index, cfg)
        }
        Func::Lsh => l_sh_eval(&index, &parse_chars(&a.chars, index.depth())?, cfg),
        Func::Lstar => l_star_multi(&index, &parse_chars(&a.chars, index.depth())?, cfg),
    };
    match r {
        Ok(v) => Ok(v),
        Err(EvalError::NotConverged { value, err_est, terms_used }) => {
            Ok(EvalResult { value, err_est, terms_used, converged: false, ..EvalResult::exact(value) })
        }
        Err(e) => Err(input_error(e.to_string())),
    }
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> CliResult {
    let c = layered(&a.common, CliConfig { format: a.format, ..CliConfig::default() })?;
    let cfg = c.eval_config();
    let r = evaluate(a, &cfg)?;
    match c.format.unwrap_or_default() {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&r).expect("serializable"))?,
        OutputFormat::Csv => {
            writeln!(out, "value_re,value_im,err_est,terms_used,converged")?;
            writeln!(out, "{:e},{:e},{:e},{},{}", r.value.re, r.value.im, r.err_est, r.terms_used, r.converged)?;
        }
        OutputFormat::Text => {
            writeln!(out, "value      {}", format_complex(r.value))?;
            writeln!(out, "err_est    {:.3e}", r.err_est)?;
            writeln!(out, "terms_used {}", r.terms_used)?;
            writeln!(out, "mode       {}", r.mode)?;
            writeln!(out, "converged  {}", r.converged)?;
        }
    }
    Ok(if r.converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

#[derive(Serialize)]
struct ReportHeader<'a> {
    kind: &'static str,
    version: &'static str,
    runtime_ms: u64,
    per_identity_ms: Vec<(&'a str, u64)>,
}

fn write_reports(path: &Path, reports: &[IdentityReport], total_ms: u64) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    let header = ReportHeader {
        kind: "header",
        version: env!("CARGO_PKG_VERSION"),
        runtime_ms: total_ms,
        per_identity_ms: reports.iter().map(|r| (r.id.as_str(), r.runtime_ms.unwrap_or(0))).collect(),
    };
    writeln!(w, "{}", serde_json::to_string(&header).expect("serializable"))?;
    for r in reports {
        writeln!(w, "{}", serde_json::to_string(r).expect("serializable"))?;
    }
    w.flush()?;
    Ok(())
}

/// Report lines of a file written by `verify --out`, skipping the header.
pub fn read_reports(text: &str) -> Result<Vec<IdentityReport>, serde_json::Error> {
    text.lines().skip(1).filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let c =
        layered(&a.common, CliConfig { seed: a.seed, samples: a.samples, out: a.out.clone(), ..CliConfig::default() })?;
    let cfg = c.eval_config();
    let ids: Vec<String> = match &a.id {
        Some(id) => {
            registry::find_identity(id).map_err(|e| input_error(e.to_string()))?;
            vec![id.clone()]
        }
        None => list_identities().iter().map(|s| s.id.to_string()).collect(),
    };
    let params = Params { r: a.r, k: a.k, i: a.i, j: a.j, p: a.p, q: a.q };
    let opts = VerifyOptions {
        n_samples: c.samples,
        seed: c.seed(),
        tolerance: a.common.tol.or(c.tol),
        mode: a.mode,
        degree: a.degree,
        t_max: a.t_max,
    };
    let started = Instant::now();
    let mut reports = Vec::new();
    for id in &ids {
        // Under --all, identity parameters only filter the identities that use them.
        let p = if a.all { params_for(id, &params) } else { params };
        let r = match verify_identity(id, &p, &opts, &cfg) {
            Ok(r) => r,
            Err(RegistryError::UnsupportedMode { .. }) if a.all => continue,
            Err(e) => return Err(input_error(e.to_string())),
        };
        writeln!(out, "{}", r.summary_line())?;
        reports.push(r);
    }
    if let Some(path) = &c.out {
        write_reports(path, &reports, started.elapsed().as_millis() as u64)?;
    }
    let code = if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        EXIT_NOT_CONVERGED
    } else {
        EXIT_OK
    };
    Ok(code)
}

/// Drop filter fields that the identity's grid does not use.
fn params_for(id: &str, p: &Params) -> Params {
    let grid = registry::default_grid(
        id,
        registry::find_identity(id).map(|s| s.default_mode()).unwrap_or(registry::Mode::Numeric),
    );
    let uses = |f: fn(&Params) -> Option<u32>| grid.iter().any(|g| f(g).is_some());
    Params {
        r: p.r.filter(|_| uses(|g| g.r)),
        k: p.k.filter(|_| uses(|g| g.k)),
        i: p.i.filter(|_| uses(|g| g.i)),
        j: p.j.filter(|_| uses(|g| g.j)),
        p: p.p.filter(|_| uses(|g| g.p)),
        q: p.q.filter(|_| uses(|g| g.q)),
    }
}

/// One CSV row of `table`.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct TableRow {
    pub family: String,
    pub index: String,
    pub value_re: f64,
    pub value_im: f64,
    pub err_est: f64,
}

/// Depth-two indices of a family up to a weight, by weight then lexicographically.
pub fn table_indices(family: Family, weight_max: u32) -> Vec<Index> {
    let mut out = Vec::new();
    for w in 2..=weight_max {
        let mut level = match family {
            Family::Zeta2 | Family::T2 => admissible_indices(w, 2),
            Family::Lsh3 | Family::Lsh4 => compositions(w, 2),
        };
        level.sort_by(|a, b| a.parts().cmp(b.parts()));
        out.extend(level);
    }
    out
}

pub fn table_rows(family: Family, weight_max: u32, cfg: &EvalConfig) -> Result<Vec<TableRow>, EvalError> {
    use rayon::prelude::*;
    let indices = table_indices(family, weight_max);
    let values: Vec<Result<(Complex64, f64), EvalError>> = indices
        .par_iter()
        .map(|ix| match family {
            Family::Zeta2 => zeta_eval(ix, cfg).map(|r| (r.value, r.err_est)),
            Family::T2 => t_value_eval(ix, cfg).map(|r| (r.value, r.err_est)),
            Family::Lsh3 | Family::Lsh4 => {
                let (chi, which) = if family == Family::Lsh3 {
                    (Character::Chi3, Conductor::Chi3)
                } else {
                    (Character::Chi4, Conductor::Chi4)
                };
                let p = ix.parts();
                let direct = l_sh_eval(ix, &[chi, chi], cfg)?;
                let via = l_sh_via_li(p[0], p[1], which, cfg)?;
                let diff = (direct.value - via.value).norm();
                Ok((direct.value, direct.err_est + diff))
            }
        })
        .collect();
    indices
        .iter()
        .zip(values)
        .map(|(ix, v)| {
            let (value, err_est) = v?;
            Ok(TableRow {
                family: family.name().to_string(),
                index: ix.to_string(),
                value_re: value.re,
                value_im: value.im,
                err_est,
            })
        })
        .collect()
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> CliResult {
    if a.weight_max > MAX_TABLE_WEIGHT {
        return Err(input_error(format!("--weight-max is at most {MAX_TABLE_WEIGHT}")));
    }
    let c = layered(&a.common, CliConfig { out: a.out.clone(), ..CliConfig::default() })?;
    let sink: Box<dyn Write> = match &c.out {
        Some(p) => Box::new(File::create(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?),
        None => Box::new(&mut *out),
    };
    let rows = table_rows(a.family, a.weight_max, &c.eval_config()).map_err(|e| input_error(e.to_string()))?;
    let mut w = csv::Writer::from_writer(sink);
    for row in &rows {
        w.serialize(row).map_err(|e| input_error(e.to_string()))?;
    }
    w.flush()?;
    Ok(EXIT_OK)
}

/// `li <index> <monomial args>`, e.g. `li 1,2 x,y`.
pub fn parse_term(s: &str) -> Result<(Index, Vec<MonomialArg>), String> {
    let mut it = s.split_whitespace();
    match it.next() {
        Some("li") => {}
        _ => return Err(format!("term {s:?} must start with `li`")),
    }
    let index: Index = it.next().ok_or("missing index")?.parse().map_err(|e| format!("{e}"))?;
    let args: Vec<MonomialArg> =
        it.next().ok_or("missing arguments")?.split(',').map(|m| m.parse()).collect::<Result<_, _>>()?;
    if it.next().is_some() {
        return Err(format!("trailing input in term {s:?}"));
    }
    Ok((index, args))
}

fn cmd_coeffs(a: &CoeffsArgs, out: &mut dyn Write) -> CliResult {
    if a.degree > MAX_COEFF_DEGREE {
        return Err(input_error(format!("--degree is at most {MAX_COEFF_DEGREE}")));
    }
    let exact_err = |e: ExactError| input_error(e.to_string());
    let (poly, is_identity) = match (&a.identity, &a.term) {
        (Some(id), _) => {
            let p = ExactParams { k: a.k, i: a.i, j: a.j, p: a.p, q: a.q };
            (identity_difference(id, &p, a.degree).map_err(exact_err)?, true)
        }
        (None, Some(t)) => {
            let (index, args) = parse_term(t).map_err(input_error)?;
            (expand_li(&index, &args, a.degree).map_err(exact_err)?, false)
        }
        (None, None) => return Err(input_error("give --identity or --term")),
    };
    let text = poly.to_canonical();
    match &a.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| input_error(format!("{}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(if is_identity && !poly.is_zero() { EXIT_FAIL } else { EXIT_OK })
}

fn cmd_list(out: &mut dyn Write) -> CliResult {
    for s in list_identities() {
        let modes: Vec<String> = s.modes.iter().map(|m| m.to_string()).collect();
        writeln!(out, "{:<14} {:<22} {}", s.id, modes.join(","), s.citation)?;
    }
    Ok(EXIT_OK)
}
