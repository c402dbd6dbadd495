//! Catalogue of identities with samplers, runners and JSON reports.

pub mod checks;
pub mod derivatives;
pub mod limits;
pub mod sampling;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{EvalConfig, EvalError};
use crate::exact::{exact_check_identity, ExactError, ExactParams, ExactReport, EXACT_IDS};
use crate::index::Index;
use crate::relations::{self, LiRelation};
use checks::Check;
pub use limits::{verify_limit, LimitPoint, LimitReport};
pub use sampling::{admissible, Domain, SamplePoint};

/// Default safety margin from singular sets.
pub const DEFAULT_DELTA: f64 = 0.05;
/// Share of conclusive samples an identity needs before it reports pass or fail.
pub const MIN_CONCLUSIVE: f64 = 0.8;

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("sampling for {id} exhausted after {rejected} rejected draws")]
    SamplingExhausted { id: String, rejected: usize },
    #[error("{id} has no {mode} mode")]
    UnsupportedMode { id: String, mode: Mode },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
    Limit,
    Derivative,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
            Mode::Limit => "limit",
            Mode::Derivative => "derivative",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "numeric" => Ok(Mode::Numeric),
            "limit" => Ok(Mode::Limit),
            "derivative" => Ok(Mode::Derivative),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

/// Integer parameters of a parametrized identity; unused ones stay `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u32>,
}

impl Params {
    pub fn k(k: u32) -> Self {
        Self { k: Some(k), ..Self::default() }
    }

    pub fn rk(r: u32, k: u32) -> Self {
        Self { r: Some(r), k: Some(k), ..Self::default() }
    }

    pub fn r(r: u32) -> Self {
        Self { r: Some(r), ..Self::default() }
    }

    pub fn ij(i: u32, j: u32) -> Self {
        Self { i: Some(i), j: Some(j), ..Self::default() }
    }

    pub fn pq(p: u32, q: u32) -> Self {
        Self { p: Some(p), q: Some(q), ..Self::default() }
    }

    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    fn fields(&self) -> [(&'static str, Option<u32>); 6] {
        [("r", self.r), ("k", self.k), ("i", self.i), ("j", self.j), ("p", self.p), ("q", self.q)]
    }

    /// Whether every field set in `filter` has the same value here.
    pub fn matches(&self, filter: &Params) -> bool {
        self.fields().iter().zip(filter.fields()).all(|((_, a), (_, b))| b.is_none() || *a == b)
    }

    fn exact(&self) -> ExactParams {
        ExactParams { k: self.k, i: self.i, j: self.j, p: self.p, q: self.q }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fields().iter().filter_map(|(n, v)| v.map(|v| format!("{n}={v}"))).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Catalogue entry.
#[derive(Clone, Debug, Serialize)]
pub struct IdentitySpec {
    pub id: &'static str,
    /// The statement being checked.
    pub citation: &'static str,
    /// Supported modes; the first is the default.
    pub modes: Vec<Mode>,
    pub params_schema: &'static str,
    pub domain: Domain,
    pub tolerance: f64,
    pub relative: bool,
    pub default_samples: usize,
}

impl IdentitySpec {
    pub fn default_mode(&self) -> Mode {
        self.modes[0]
    }
}

#[allow(clippy::too_many_arguments)]
fn spec(
    id: &'static str,
    citation: &'static str,
    modes: &[Mode],
    params_schema: &'static str,
    domain: Domain,
    tolerance: f64,
    relative: bool,
    default_samples: usize,
) -> IdentitySpec {
    IdentitySpec { id, citation, modes: modes.to_vec(), params_schema, domain, tolerance, relative, default_samples }
}

/// The fixed catalogue, 21 entries.
pub fn list_identities() -> Vec<IdentitySpec> {
    use Domain::*;
    use Mode::*;
    vec![
        spec(
            "thm1.2",
            "sum_j 2^{j-1}(Li_{k-j,j}(y/x,x) + Li_{k-j,j}(x/y,y)) + Li_{1,k-1}(1/x,xy) + Li_{1,k-1}(1/y,xy) = (Li_1(x) + Li_1(y)) Li_{k-1}(xy) + (k-1) Li_k(xy); |x|,|y| <= 1, x,y != 1, xy != 1 when k = 2",
            &[Numeric, Exact],
            "k >= 2",
            Bidisc,
            1e-10,
            false,
            25,
        ),
        spec(
            "cor1.2",
            "sum_j 2^{j-1}(Li_{k-j,j}(x^-2,x) + Li_{k-j,j}(x^2,1/x)) - Li_{k-1,1}(1,x) - Li_{k-1,1}(1,1/x) = Li_k(x) + Li_k(1/x) + (k-1) zeta(k); |x| = 1, x != 1",
            &[Numeric],
            "k >= 2",
            UnitCircle,
            1e-9,
            false,
            25,
        ),
        spec(
            "wsf-oz",
            "sum_{j=2}^{k-1} 2^{j-1} zeta(k-j,j) = (k+1)/2 zeta(k)",
            &[Numeric],
            "k >= 3",
            Values,
            1e-8,
            true,
            1,
        ),
        spec(
            "wsf-kt",
            "sum_{j=2}^{k-1} 2^{j-1} T(k-j,j) = (k-1) T(k)",
            &[Numeric],
            "k >= 3",
            Values,
            1e-8,
            true,
            1,
        ),
        spec(
            "lemma2.1",
            "sum_j Li_{k-j}(x) Li_j(y) = sum_mu 2^{mu-1}(Li_{k-mu,mu}(y/x,x) + Li_{k-mu,mu}(x/y,y))",
            &[Exact, Numeric],
            "k >= 2",
            Bidisc,
            1e-10,
            false,
            10,
        ),
        spec(
            "eq2.3",
            "Li_i(x) Li_j(y) = sum_mu C(mu-1,i-1) Li_{i+j-mu,mu}(y/x,x) + C(mu-1,j-1) Li_{i+j-mu,mu}(x/y,y)",
            &[Exact, Numeric],
            "i, j >= 1",
            Bidisc,
            1e-10,
            false,
            10,
        ),
        spec(
            "stuffle",
            "Li_p(x) Li_q(y) = Li_{p,q}(x,y) + Li_{q,p}(y,x) + Li_{p+q}(xy)",
            &[Exact, Numeric],
            "p, q >= 1",
            Bidisc,
            1e-10,
            false,
            10,
        ),
        spec(
            "eq2.5",
            "Li_{k-1}(xy) Li_1(y) = Li_{1,k-1}(1/x,xy) + sum_j Li_{k-j,j}(x,y)",
            &[Exact, Numeric],
            "k >= 2",
            Bidisc,
            1e-10,
            false,
            10,
        ),
        spec(
            "eq2.6",
            "Li_{k-1}(xy) Li_1(x) = sum_j Li_{j,k-j}(y,x) + Li_{1,k-1}(1/y,xy)",
            &[Exact, Numeric],
            "k >= 2",
            Bidisc,
            1e-10,
            false,
            10,
        ),
        spec(
            "wsf-3",
            "combination of the one-variable formula at x and y with the two-variable formula at (1/x,y) and (x,1/y); |x| = |y| = 1",
            &[Numeric],
            "k >= 2",
            Torus,
            1e-9,
            false,
            15,
        ),
        spec(
            "limit-3.1",
            "Li_{k-1,1}(x^-2,x) - Li_{k-1,1}(1,x) -> 0 and Li_{k-1,1}(-x,x) - Li_{k-1,1}(-1/x,x) -> 0 as x -> 1",
            &[Limit],
            "k >= 3",
            Path,
            limits::FINAL_BOUND,
            false,
            1,
        ),
        spec(
            "prop3.1-f3",
            "sum_j 2^{j-1} L_sh(k-j,j;chi3) + L_sh(k-1,1;chi3) + L_*(1,k-1;chi3) + L_*(k-1,1;chi3) = (k-3)/2 L(k;chi3^2) = (k-3)(1-3^-k)/2 zeta(k)",
            &[Numeric],
            "k >= 2",
            Values,
            1e-6,
            false,
            1,
        ),
        spec(
            "prop3.1-f4",
            "sum_j 2^{j-1} L_sh(k-j,j;chi4) + L_sh(k-1,1;chi4) = (k-1)/2 L(k;chi4^2) = (k-1)(1-2^-k)/2 zeta(k)",
            &[Numeric],
            "k >= 2",
            Values,
            1e-6,
            false,
            1,
        ),
        spec(
            "nishi",
            "sum_j (2^{j-1} + 1) L_sh(k-j,j;chi3) + L_sh(1,k-1;chi3) + L_sh(k-1,1;chi3) = (k-1)/2 L(k;chi3^2)",
            &[Numeric],
            "k >= 2",
            Values,
            1e-6,
            false,
            1,
        ),
        spec(
            "lsum",
            "sum_j L_sh(k-j,j;chi3) + L_sh(1,k-1;chi3) - L_*(1,k-1;chi3) - L_*(k-1,1;chi3) = L(k;chi3^2)",
            &[Numeric],
            "k >= 2",
            Values,
            1e-6,
            false,
            1,
        ),
        spec(
            "thm1.4",
            "LL_{1^{r-1},k}(u,y) = (-1)^{k-1} sum_{j_1+..+j_k=r+k} LL_{1^{j_k-1}}(u,y) LL_{j_1..j_{k-1}}(x,y) + sum_{j=0}^{k-2} (-1)^j LL_{1^{r-1},k-j}(1,y) LL_{1^j}(x,y), u = (1-x)/(1-xy)",
            &[Numeric],
            "r >= 1, k >= 2",
            Connection,
            1e-9,
            true,
            25,
        ),
        spec(
            "thm1.4-k2",
            "LL_{1^{r-1},2}(u,y) = -sum_{j=0}^{r} LL_{1^j}(u,y) LL_{r+1-j}(x,y) + LL_{1^{r-1},2}(1,y)",
            &[Numeric],
            "r >= 1",
            Connection,
            1e-9,
            true,
            25,
        ),
        spec(
            "diff-formulas",
            "d/dx LL_{k_1..k_r}(x,y) = LL_{k_1..k_r - 1}(x,y)/x for k_r > 1, (1-y)/((1-x)(1-xy)) LL_{k_1..k_{r-1}}(x,y) for k_r = 1; d/dx (1-x)/(1-xy) = -(1-y)/(1-xy)^2",
            &[Derivative],
            "index depth <= 4, weight <= 6",
            Connection,
            derivatives::INDEX_TOL,
            true,
            20,
        ),
        spec(
            "reflection",
            "Li_2(1-z) = -Li_2(z) + zeta(2) - log z log(1-z)",
            &[Numeric],
            "none",
            Lens,
            1e-12,
            false,
            25,
        ),
        spec(
            "five-term",
            "LL_2(u,y) = -LL_1(u,y) LL_1(x,y) - LL_2(x,y) + LL_2(1,y); Li_2(x) + Li_2(y) + Li_2(1-xy) + Li_2(u) + Li_2(v) = 3 zeta(2) - log x log(1-x) - log y log(1-y) - log u log v, v = (1-y)/(1-xy)",
            &[Numeric],
            "none",
            RealSquare,
            1e-12,
            false,
            100,
        ),
        spec(
            "example-2-2",
            "LL_{1,2}(u,y) = zeta(3) - Li_3(x) - Li_3(y) + Li_3(xy) + log x (Li_2(x) - Li_2(xy)) + 1/2 log^2 x log u",
            &[Numeric],
            "none",
            RealSquare,
            1e-8,
            false,
            25,
        ),
    ]
}

pub fn find_identity(id: &str) -> Result<IdentitySpec, RegistryError> {
    list_identities().into_iter().find(|s| s.id == id).ok_or_else(|| RegistryError::UnknownIdentity(id.to_string()))
}

/// `n` points for `id` with the default margin.
pub fn sample_admissible(id: &str, n: usize, seed: u64) -> Result<Vec<SamplePoint>, RegistryError> {
    sample_admissible_with(id, n, seed, DEFAULT_DELTA)
}

pub fn sample_admissible_with(id: &str, n: usize, seed: u64, delta: f64) -> Result<Vec<SamplePoint>, RegistryError> {
    let spec = find_identity(id)?;
    sampling::sample_domain(id, spec.domain, n, seed, delta)
}

/// Default parameter grid of an identity in a given mode.
pub fn default_grid(id: &str, mode: Mode) -> Vec<Params> {
    let ks = |lo: u32, hi: u32| (lo..=hi).map(Params::k).collect::<Vec<_>>();
    match (id, mode) {
        ("thm1.2", Mode::Exact) => ks(2, 6),
        ("thm1.2", _) | ("cor1.2", _) => ks(2, 5),
        ("wsf-oz", _) | ("wsf-kt", _) => ks(3, 8),
        ("lemma2.1", _) | ("eq2.5", _) | ("eq2.6", _) => ks(2, 6),
        ("eq2.3", _) => (2..=8).flat_map(|s| (1..s).map(move |i| Params::ij(i, s - i))).collect(),
        ("stuffle", _) => (2..=8).flat_map(|s| (1..s).map(move |p| Params::pq(p, s - p))).collect(),
        ("wsf-3", _) | ("prop3.1-f3", _) | ("prop3.1-f4", _) | ("nishi", _) | ("lsum", _) => ks(2, 6),
        ("limit-3.1", _) => ks(3, 5),
        ("thm1.4", _) => (1..=3).flat_map(|r| (2..=4).map(move |k| Params::rk(r, k))).collect(),
        ("thm1.4-k2", _) => (1..=4).map(Params::r).collect(),
        _ => vec![Params::default()],
    }
}

fn validate(id: &str, p: &Params) -> Result<(), RegistryError> {
    let bad = |what: &str| Err(RegistryError::InvalidParams(format!("{id}: {what} ({p})")));
    let k = p.k.unwrap_or(0);
    match id {
        "thm1.2" | "cor1.2" | "lemma2.1" | "eq2.5" | "eq2.6" | "wsf-3" | "prop3.1-f3" | "prop3.1-f4" | "nishi"
        | "lsum"
            if k < 2 =>
        {
            bad("needs k >= 2")
        }
        "wsf-oz" | "wsf-kt" | "limit-3.1" if k < 3 => bad("needs k >= 3"),
        "eq2.3" if p.i.unwrap_or(0) < 1 || p.j.unwrap_or(0) < 1 => bad("needs i, j >= 1"),
        "stuffle" if p.p.unwrap_or(0) < 1 || p.q.unwrap_or(0) < 1 => bad("needs p, q >= 1"),
        "thm1.4" if p.r.unwrap_or(0) < 1 || k < 2 => bad("needs r >= 1, k >= 2"),
        "thm1.4-k2" if p.r.unwrap_or(0) < 1 => bad("needs r >= 1"),
        _ => Ok(()),
    }
}

/// Parameter points to run: the default grid restricted to `filter`, or
/// `filter` itself when it lies outside the grid.
pub fn resolve_grid(id: &str, mode: Mode, filter: &Params) -> Result<Vec<Params>, RegistryError> {
    let grid = default_grid(id, mode);
    let chosen: Vec<Params> = grid.iter().filter(|g| g.matches(filter)).copied().collect();
    let chosen = if chosen.is_empty() { vec![*filter] } else { chosen };
    for p in &chosen {
        validate(id, p)?;
    }
    Ok(chosen)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Points per parameter set; the identity's default when `None`.
    pub n_samples: Option<usize>,
    pub seed: u64,
    /// Replaces the identity's main tolerance.
    pub tolerance: Option<f64>,
    pub mode: Option<Mode>,
    /// Truncation degree for exact mode.
    pub degree: Option<u32>,
    pub t_max: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { n_samples: None, seed: 42, tolerance: None, mode: None, degree: None, t_max: 16 }
    }
}

pub const DEFAULT_DEGREE: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// One comparison at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub point: Vec<Complex64>,
    pub lhs: Option<Complex64>,
    pub rhs: Option<Complex64>,
    pub residual: Option<f64>,
    pub rel_residual: Option<f64>,
    pub err_budget: f64,
    pub tolerance: f64,
    pub relative: bool,
    pub terms_used: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl SampleRecord {
    fn from_check(params: Params, point: Vec<Complex64>, c: &Check) -> Self {
        let residual = (c.lhs.value - c.rhs.value).norm();
        let scale = c.lhs.value.norm().max(c.rhs.value.norm());
        let rel = if scale > 0.0 { residual / scale } else { 0.0 };
        let budget = c.lhs.err + c.rhs.err;
        let allowed = if c.relative { c.tolerance * scale + budget } else { c.tolerance + budget };
        let status = if !(c.lhs.converged && c.rhs.converged) {
            Status::Inconclusive
        } else if residual <= allowed {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            params,
            label: c.label.clone(),
            point,
            lhs: Some(c.lhs.value),
            rhs: Some(c.rhs.value),
            residual: Some(residual),
            rel_residual: Some(rel),
            err_budget: budget,
            tolerance: c.tolerance,
            relative: c.relative,
            terms_used: c.lhs.terms + c.rhs.terms,
            status,
            note: None,
        }
    }

    fn from_error(params: Params, point: Vec<Complex64>, tolerance: f64, relative: bool, e: &EvalError) -> Self {
        let status = match e {
            EvalError::NotConverged { .. } => Status::Inconclusive,
            _ => Status::Fail,
        };
        Self {
            params,
            label: None,
            point,
            lhs: None,
            rhs: None,
            residual: None,
            rel_residual: None,
            err_budget: 0.0,
            tolerance,
            relative,
            terms_used: 0,
            status,
            note: Some(e.to_string()),
        }
    }

    /// The number compared against the tolerance.
    pub fn compared_residual(&self) -> Option<f64> {
        if self.relative {
            self.rel_residual
        } else {
            self.residual
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub mode: Mode,
    pub params: Vec<Params>,
    pub seed: u64,
    pub tolerance: f64,
    pub relative: bool,
    pub config: EvalConfig,
    pub n_samples: usize,
    pub samples: Vec<SampleRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub exact: Vec<ExactReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub limits: Vec<LimitReport>,
    /// Largest compared residual (relative where the identity is relative).
    pub max_residual: f64,
    /// Largest per-sample error budget.
    pub err_budget: f64,
    pub total_terms: u64,
    pub n_conclusive: usize,
    pub status: Status,
    pub pass: bool,
    /// Wall time; kept out of the report body so bodies stay reproducible.
    #[serde(skip)]
    pub runtime_ms: Option<u64>,
}

impl IdentityReport {
    /// `id k=2..5 max_residual=1.2e-14 PASS`.
    pub fn summary_line(&self) -> String {
        let mut s = self.id.clone();
        let ranges = param_ranges(&self.params);
        if !ranges.is_empty() {
            s.push(' ');
            s.push_str(&ranges);
        }
        format!("{s} max_residual={:.3e} {}", self.max_residual, self.status)
    }
}

fn param_ranges(params: &[Params]) -> String {
    let mut out = Vec::new();
    for (pos, name) in ["r", "k", "i", "j", "p", "q"].iter().enumerate() {
        let vals: BTreeSet<u32> = params.iter().filter_map(|p| p.fields()[pos].1).collect();
        let v: Vec<u32> = vals.into_iter().collect();
        match v.as_slice() {
            [] => {}
            [a] => out.push(format!("{name}={a}")),
            [a, .., b] if (b - a) as usize + 1 == v.len() => out.push(format!("{name}={a}..{b}")),
            _ => out.push(format!("{name}={}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))),
        }
    }
    out.join(" ")
}

fn aggregate(mut report: IdentityReport) -> IdentityReport {
    let total = report.samples.len();
    let conclusive: Vec<&SampleRecord> = report.samples.iter().filter(|s| s.status != Status::Inconclusive).collect();
    report.n_conclusive = conclusive.len();
    report.max_residual = report.samples.iter().filter_map(|s| s.compared_residual()).fold(0.0, f64::max);
    report.err_budget = report.samples.iter().map(|s| s.err_budget).fold(0.0, f64::max);
    report.total_terms = report.samples.iter().map(|s| s.terms_used).sum();
    let any_fail = conclusive.iter().any(|s| s.status == Status::Fail);
    report.status = if total > 0 && (report.n_conclusive as f64) < MIN_CONCLUSIVE * total as f64 {
        Status::Inconclusive
    } else if any_fail {
        Status::Fail
    } else {
        Status::Pass
    };
    report.pass = report.status == Status::Pass;
    report
}

fn empty_report(
    id: &str,
    mode: Mode,
    params: Vec<Params>,
    opts: &VerifyOptions,
    spec: &IdentitySpec,
    cfg: &EvalConfig,
) -> IdentityReport {
    IdentityReport {
        id: id.to_string(),
        mode,
        params,
        seed: opts.seed,
        tolerance: opts.tolerance.unwrap_or(spec.tolerance),
        relative: spec.relative,
        config: cfg.clone(),
        n_samples: 0,
        samples: Vec::new(),
        exact: Vec::new(),
        limits: Vec::new(),
        max_residual: 0.0,
        err_budget: 0.0,
        total_terms: 0,
        n_conclusive: 0,
        status: Status::Pass,
        pass: true,
        runtime_ms: None,
    }
}

/// Numeric relation of a term-list identity.
fn numeric_relation(id: &str, p: &Params) -> Option<LiRelation> {
    let k = p.k.unwrap_or(0);
    Some(match id {
        "thm1.2" => relations::thm1_2(k),
        "cor1.2" => relations::cor1_2(k),
        "lemma2.1" => relations::lemma2_1(k),
        "eq2.3" => relations::eq2_3(p.i?, p.j?),
        "stuffle" => relations::stuffle(p.p?, p.q?),
        "eq2.5" => relations::eq2_5(k),
        "eq2.6" => relations::eq2_6(k),
        "wsf-3" => relations::wsf3(k),
        _ => return None,
    })
}

/// Checks of one identity at one parameter set and point (`None` for value identities).
fn run_point(
    id: &str,
    p: &Params,
    pt: Option<&SamplePoint>,
    tol: f64,
    relative: bool,
    cfg: &EvalConfig,
) -> Result<Vec<Check>, EvalError> {
    let k = p.k.unwrap_or(0);
    if let Some(rel) = numeric_relation(id, p) {
        return checks::relation_check(&rel, pt.expect("sampled identity"), tol, relative, cfg);
    }
    match id {
        "wsf-oz" => checks::wsf_oz(k, tol, cfg),
        "wsf-kt" => checks::wsf_kt(k, tol, cfg),
        "prop3.1-f3" => checks::prop_f3(k, tol, cfg),
        "prop3.1-f4" => checks::prop_f4(k, tol, cfg),
        "nishi" => checks::nishi(k, tol, cfg),
        "lsum" => checks::lsum(k, tol, cfg),
        "thm1.4" => checks::connection(p.r.unwrap_or(1), k, pt.expect("sampled"), tol, cfg),
        "thm1.4-k2" => checks::connection_k2(p.r.unwrap_or(1), pt.expect("sampled"), tol, cfg),
        "reflection" => checks::reflection(pt.expect("sampled"), tol, cfg),
        "five-term" => {
            // The rearranged form loses about two digits to its logarithms.
            checks::five_term(pt.expect("sampled"), tol, tol * 100.0, cfg)
        }
        "example-2-2" => checks::example_2_2(pt.expect("sampled"), tol, cfg),
        other => unreachable!("no numeric runner for {other}"),
    }
}

/// Extra checks run once per parameter set.
fn run_extras(id: &str, p: &Params, tol: f64, cfg: &EvalConfig) -> Result<Vec<Check>, EvalError> {
    match id {
        "wsf-3" => checks::wsf3_specializations(p.k.unwrap_or(2), &relations::wsf3(p.k.unwrap_or(2)), tol, cfg),
        "prop3.1-f3" => checks::two_path(p.k.unwrap_or(2), crate::characters::Conductor::Chi3, cfg),
        "prop3.1-f4" => checks::two_path(p.k.unwrap_or(2), crate::characters::Conductor::Chi4, cfg),
        _ => Ok(Vec::new()),
    }
}

fn records(
    params: Params,
    point: Vec<Complex64>,
    tol: f64,
    relative: bool,
    r: Result<Vec<Check>, EvalError>,
) -> Vec<SampleRecord> {
    match r {
        Ok(cs) => cs.iter().map(|c| SampleRecord::from_check(params, point.clone(), c)).collect(),
        Err(e) => vec![SampleRecord::from_error(params, point, tol, relative, &e)],
    }
}

/// Run an identity over its (filtered) parameter grid.
pub fn verify_identity(
    id: &str,
    params: &Params,
    opts: &VerifyOptions,
    cfg: &EvalConfig,
) -> Result<IdentityReport, RegistryError> {
    let started = Instant::now();
    let spec = find_identity(id)?;
    cfg.validate()?;
    let mode = opts.mode.unwrap_or(spec.default_mode());
    if !spec.modes.contains(&mode) {
        return Err(RegistryError::UnsupportedMode { id: id.to_string(), mode });
    }
    let grid = resolve_grid(id, mode, params)?;
    let mut report = empty_report(id, mode, grid.clone(), opts, &spec, cfg);
    let tol = report.tolerance;
    match mode {
        Mode::Exact => {
            debug_assert!(EXACT_IDS.contains(&id));
            let degree = opts.degree.unwrap_or(if id == "thm1.2" { 24 } else { DEFAULT_DEGREE });
            let reports: Vec<Result<ExactReport, ExactError>> =
                grid.par_iter().map(|p| exact_check_identity(id, &p.exact(), degree)).collect();
            for r in reports {
                report.exact.push(r?);
            }
            report.max_residual = if report.exact.iter().all(|r| r.is_zero()) { 0.0 } else { f64::INFINITY };
            report.tolerance = 0.0;
            report.status = if report.max_residual == 0.0 { Status::Pass } else { Status::Fail };
            report.pass = report.status == Status::Pass;
        }
        Mode::Limit => {
            let jobs: Vec<(&str, u32)> =
                grid.iter().flat_map(|p| limits::LIMIT_IDS.map(|l| (l, p.k.unwrap_or(3)))).collect();
            let out: Vec<Result<LimitReport, RegistryError>> =
                jobs.par_iter().map(|&(l, k)| verify_limit(l, k, opts.t_max, cfg)).collect();
            for r in out {
                report.limits.push(r?);
            }
            report.max_residual = report.limits.iter().map(|l| l.final_magnitude).fold(0.0, f64::max);
            report.tolerance = limits::FINAL_BOUND;
            report.status = if report.limits.iter().any(|l| !l.conclusive) {
                Status::Inconclusive
            } else if report.limits.iter().all(|l| l.pass) {
                Status::Pass
            } else {
                Status::Fail
            };
            report.pass = report.status == Status::Pass;
        }
        Mode::Derivative => {
            let n = opts.n_samples.unwrap_or(spec.default_samples);
            return Ok(timed(verify_derivatives(&derivatives::default_indices(), n, opts.seed, cfg)?, started));
        }
        Mode::Numeric => {
            let n = if spec.domain == Domain::Values { 0 } else { opts.n_samples.unwrap_or(spec.default_samples) };
            report.n_samples = n;
            let points = sampling::sample_domain(id, spec.domain, n, opts.seed, cfg.boundary_margin)?;
            let mut jobs: Vec<(Params, Option<SamplePoint>)> = Vec::new();
            for p in &grid {
                if points.is_empty() {
                    jobs.push((*p, None));
                }
                for pt in &points {
                    jobs.push((*p, Some(*pt)));
                }
            }
            let relative = spec.relative;
            let mut recs: Vec<Vec<SampleRecord>> = jobs
                .par_iter()
                .map(|(p, pt)| {
                    let coords = pt.map(|s| s.coords()).unwrap_or_default();
                    records(*p, coords, tol, relative, run_point(id, p, pt.as_ref(), tol, relative, cfg))
                })
                .collect();
            let extras: Vec<Vec<SampleRecord>> =
                grid.par_iter().map(|p| records(*p, Vec::new(), tol, relative, run_extras(id, p, tol, cfg))).collect();
            recs.extend(extras);
            report.samples = recs.into_iter().flatten().collect();
            report = aggregate(report);
        }
    }
    Ok(timed(report, started))
}

fn timed(mut report: IdentityReport, started: Instant) -> IdentityReport {
    report.runtime_ms = Some(started.elapsed().as_millis() as u64);
    report
}

/// Closed-form derivatives of `LL` against finite differences, plus the
/// chain rule through `u = (1 - x)/(1 - xy)`.
pub fn verify_derivatives(
    indices: &[Index],
    n_points: usize,
    seed: u64,
    cfg: &EvalConfig,
) -> Result<IdentityReport, RegistryError> {
    let id = "diff-formulas";
    for index in indices {
        if index.is_empty() || index.depth() > 4 || index.weight() > 6 {
            return Err(RegistryError::InvalidParams(format!("index ({index}) outside depth <= 4, weight <= 6")));
        }
    }
    let spec = find_identity(id)?;
    let points = sampling::sample_domain(id, spec.domain, n_points, seed, cfg.boundary_margin)?;
    let opts = VerifyOptions { seed, ..VerifyOptions::default() };
    let mut report = empty_report(id, Mode::Derivative, Vec::new(), &opts, &spec, cfg);
    report.n_samples = n_points;
    let mut jobs: Vec<(Option<&Index>, SamplePoint)> = Vec::new();
    for index in indices {
        jobs.extend(points.iter().map(|pt| (Some(index), *pt)));
    }
    jobs.extend(points.iter().map(|pt| (None, *pt)));
    let recs: Vec<SampleRecord> = jobs
        .par_iter()
        .map(|(index, pt)| {
            let r = match index {
                Some(ix) => derivatives::index_check(ix, pt, cfg),
                None => derivatives::chain_rule_check(pt, cfg),
            };
            let tol = if index.is_some() { derivatives::INDEX_TOL } else { derivatives::CHAIN_TOL };
            let mut v = records(Params::default(), pt.coords(), tol, true, r.map(|c| vec![c]));
            if let (Some(ix), Some(rec)) = (index, v.first_mut()) {
                if rec.label.is_none() {
                    rec.label = Some(format!("d/dx LL_{{{ix}}}"));
                }
            }
            v
        })
        .flatten()
        .collect();
    report.samples = recs;
    Ok(aggregate(report))
}
