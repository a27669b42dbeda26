//! Run configuration: command-line flags over a `key = value` file over
//! built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ghq_core::fock::sweep::MAX_PARAM;
use ghq_core::fock::{HamiltonianKind, TruncationSpec};

use crate::CliError;

/// Largest `--n-larger` accepted.
pub const N_CEILING: usize = 64;
/// Largest `--family-n` accepted.
pub const FAMILY_N_CEILING: usize = 256;

pub const DEFAULT_N: usize = 24;
pub const DEFAULT_N_LARGER: usize = 32;
pub const DEFAULT_MARGIN: usize = 4;
pub const DEFAULT_K: usize = 6;
pub const DEFAULT_FAMILY_N: usize = 96;

const KNOWN_KEYS: &[&str] = &[
    "eta-bar",
    "theta-bar",
    "impose-be",
    "n",
    "n-larger",
    "margin",
    "k",
    "format",
    "out",
    "hamiltonian",
    "slopes",
    "family-n",
    "task",
    "eta-grid",
    "theta-grid",
    "b-field",
    "charge",
    "mass",
    "omega",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Spectrum,
    Uncertainty,
}

impl FromStr for Task {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "spectrum" => Ok(Task::Spectrum),
            "uncertainty" => Ok(Task::Uncertainty),
            _ => Err(format!("unknown task `{s}` (expected spectrum or uncertainty)")),
        }
    }
}

/// Parsed `key = value` lines; `#` starts a comment.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Usage(format!("config line {}: expected key = value", lineno + 1)));
            };
            let key = k.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!("config line {}: unknown key `{}`", lineno + 1, k.trim())));
            }
            entries.insert(key, v.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.entries
            .get(key)
            .map(|v| v.parse::<T>().map_err(|e| CliError::Usage(format!("config key `{key}`: {e}"))))
            .transpose()
    }

    /// `flag`, else the file's `key`, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        Ok(match flag {
            Some(v) => v,
            None => self.get(key)?.unwrap_or(default),
        })
    }

    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// A switch is on when passed, or when the file sets it to `true`.
    pub fn pick_switch(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        Ok(flag || self.get::<bool>(key)?.unwrap_or(false))
    }
}

/// Comma-separated list of reals.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().is_empty() {
            return Ok(Grid(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad grid value `{}`: {e}", t.trim())))
            .collect::<Result<Vec<_>, _>>()
            .map(Grid)
    }
}

/// Settings shared by the numeric subcommands, after merging and validation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub eta_bar: f64,
    pub theta_bar: f64,
    pub impose_be: bool,
    pub n: usize,
    pub n_larger: usize,
    pub margin: usize,
    pub k: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub hamiltonian: HamiltonianKind,
    pub family_n: usize,
}

impl RunConfig {
    pub fn spec(&self) -> TruncationSpec {
        TruncationSpec::new(self.n, self.margin).expect("validated")
    }

    pub fn spec_larger(&self) -> TruncationSpec {
        TruncationSpec::new(self.n_larger, self.margin).expect("validated")
    }

    pub fn family_spec(&self) -> TruncationSpec {
        TruncationSpec::new(self.family_n, self.margin).expect("validated")
    }

    /// Range checks; `impose_be` replaces `theta_bar` by `eta_bar`.
    pub fn validate(mut self) -> Result<Self, CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        for (name, v) in [("eta-bar", self.eta_bar), ("theta-bar", self.theta_bar)] {
            if !(0.0..=MAX_PARAM).contains(&v) {
                return usage(format!("--{name} must lie in [0, {MAX_PARAM}], got {v}"));
            }
        }
        if self.impose_be {
            self.theta_bar = self.eta_bar;
        }
        if !(2 <= self.n && self.n < self.n_larger && self.n_larger <= N_CEILING) {
            return usage(format!(
                "need 2 <= n < n-larger <= {N_CEILING}, got n = {}, n-larger = {}",
                self.n, self.n_larger
            ));
        }
        if !(1 <= self.margin && 2 * self.margin < self.n) {
            return usage(format!("need 1 <= margin < n/2, got margin = {} with n = {}", self.margin, self.n));
        }
        if self.k == 0 || self.k > self.n * self.n / 4 {
            return usage(format!("--k must lie in 1..={} for n = {}, got {}", self.n * self.n / 4, self.n, self.k));
        }
        if !(2 * self.margin < self.family_n && self.family_n <= FAMILY_N_CEILING) {
            return usage(format!(
                "need 2*margin < family-n <= {FAMILY_N_CEILING}, got family-n = {}",
                self.family_n
            ));
        }
        Ok(self)
    }
}
