//! `key = value` configuration files and the merged CLI configuration.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::engine::{EvalConfig, Method};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Self::Text),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(format!("unknown format {s:?} (text, json, csv)")),
        }
    }
}

pub fn parse_method(s: &str) -> Result<Method, String> {
    match s {
        "auto" => Ok(Method::Auto),
        "direct" | "direct-series" => Ok(Method::DirectSeries),
        "split" | "path-split" => Ok(Method::PathSplit),
        _ => Err(format!("unknown method {s:?} (auto, direct-series, path-split)")),
    }
}

/// Settings shared by the subcommands. Every field is optional so that
/// flags, a config file and the defaults can be layered.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CliConfig {
    pub tol: Option<f64>,
    pub n_initial: Option<u64>,
    pub n_max: Option<u64>,
    pub delta: Option<f64>,
    pub method: Option<Method>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_SEED: u64 = 42;

impl CliConfig {
    /// Parse `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut c = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| format!("config line {}: expected key = value", n + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: String| format!("config line {}: {key}: {e}", n + 1);
            let num = |v: &str| v.parse::<f64>().map_err(|e| bad(e.to_string()));
            let int = |v: &str| v.parse::<u64>().map_err(|e| bad(e.to_string()));
            match key {
                "tol" => c.tol = Some(num(value)?),
                "n_initial" => c.n_initial = Some(int(value)?),
                "n_max" => c.n_max = Some(int(value)?),
                "delta" => c.delta = Some(num(value)?),
                "method" => c.method = Some(parse_method(value).map_err(bad)?),
                "seed" => c.seed = Some(int(value)?),
                "samples" => c.samples = Some(int(value)? as usize),
                "format" => c.format = Some(value.parse().map_err(bad)?),
                "out" => c.out = Some(PathBuf::from(value)),
                _ => return Err(format!("config line {}: unknown key {key:?}", n + 1)),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text)
    }

    /// Fields set in `self` win over `lower`.
    pub fn over(self, lower: CliConfig) -> CliConfig {
        CliConfig {
            tol: self.tol.or(lower.tol),
            n_initial: self.n_initial.or(lower.n_initial),
            n_max: self.n_max.or(lower.n_max),
            delta: self.delta.or(lower.delta),
            method: self.method.or(lower.method),
            seed: self.seed.or(lower.seed),
            samples: self.samples.or(lower.samples),
            format: self.format.or(lower.format),
            out: self.out.or(lower.out),
        }
    }

    pub fn eval_config(&self) -> EvalConfig {
        let mut cfg = EvalConfig::default();
        if let Some(t) = self.tol {
            cfg.target_tol = t;
        }
        if let Some(n) = self.n_initial {
            cfg.n_initial = n;
        }
        if let Some(n) = self.n_max {
            cfg.n_max = n;
            cfg.n_initial = cfg.n_initial.min(n);
        }
        if let Some(d) = self.delta {
            cfg.boundary_margin = d;
        }
        if let Some(m) = self.method {
            cfg.method = m;
        }
        cfg
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}
