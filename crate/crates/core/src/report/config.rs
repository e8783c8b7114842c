use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Statements,
    Psi,
    Algebra,
    Seminorms,
    Witness,
    Extension,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Statements,
        Suite::Psi,
        Suite::Algebra,
        Suite::Seminorms,
        Suite::Witness,
        Suite::Extension,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Statements => "statements",
            Suite::Psi => "psi",
            Suite::Algebra => "algebra",
            Suite::Seminorms => "seminorms",
            Suite::Witness => "witness",
            Suite::Extension => "extension",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|suite| suite.name() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Text => "text",
        })
    }
}

/// Everything a verification run depends on. Identical configs produce
/// identical reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Largest indeterminate index in the sampled and enumerated windows.
    pub max_index: usize,
    /// Largest degree in the sampled and enumerated windows.
    pub max_degree: usize,
    /// Positions of psi to exercise.
    pub i_values: Vec<usize>,
    /// Largest seminorm index `k` (and `n`, `m`) in witness grids.
    pub k_max: usize,
    /// Largest sequence index `N` in witness grids.
    pub seq_max: usize,
    pub suites: Vec<Suite>,
    pub seed: u64,
    /// Random samples per property check.
    pub samples: usize,
    /// Random round-trip samples per matrix cell.
    pub psi_samples: usize,
    pub format: Format,
    pub strict: bool,
    /// Replace psi with a version that also sees `X_0`.
    pub corrupt_psi: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_index: 3,
            max_degree: 3,
            i_values: vec![1, 2, 3],
            k_max: 4,
            seq_max: 6,
            suites: Suite::ALL.to_vec(),
            seed: 20240601,
            samples: 1000,
            psi_samples: 200,
            format: Format::Json,
            strict: false,
            corrupt_psi: false,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("{key}: cannot parse {v:?}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::InvalidArgument(format!("{key}: expected a boolean, got {v:?}"))),
    }
}

pub fn parse_list<T: FromStr<Err = Error>>(v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(T::from_str)
        .collect()
}

pub fn parse_index_list(key: &str, v: &str) -> Result<Vec<usize>> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_num(key, s))
        .collect()
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "max_index" => self.max_index = parse_num(key, value)?,
            "max_degree" => self.max_degree = parse_num(key, value)?,
            "i_values" => self.i_values = parse_index_list(key, value)?,
            "k_max" => self.k_max = parse_num(key, value)?,
            "seq_max" => self.seq_max = parse_num(key, value)?,
            "suites" => self.suites = parse_list(value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "samples" => self.samples = parse_num(key, value)?,
            "psi_samples" => self.psi_samples = parse_num(key, value)?,
            "format" => self.format = value.parse()?,
            "strict" => self.strict = parse_bool(key, value)?,
            "corrupt_psi" => self.corrupt_psi = parse_bool(key, value)?,
            other => return Err(Error::InvalidArgument(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Reads a flat `key = value` file; `#` starts a comment.
    pub fn apply_file(&mut self, contents: &str) -> Result<()> {
        for (lineno, raw) in contents.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("config line {}: expected key = value", lineno + 1))
            })?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 || self.psi_samples == 0 {
            return Err(Error::InvalidArgument("sample counts must be at least 1".into()));
        }
        if let Some(&bad) = self.i_values.iter().find(|&&i| i == 0) {
            return Err(Error::InvalidArgument(format!("psi position {bad} must be >= 1")));
        }
        if self.max_index == 0 || self.max_degree == 0 {
            return Err(Error::InvalidArgument("max_index and max_degree must be >= 1".into()));
        }
        Ok(())
    }
}
