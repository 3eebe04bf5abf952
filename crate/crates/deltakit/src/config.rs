//! Run configuration: a `key = value` file with environment-variable
//! overrides (prefix `DELTAKIT_`, keys upper-cased with dots replaced by
//! underscores). Seeds, budgets and tolerances feed every randomized or
//! truncated computation so runs replay exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

pub const ENV_PREFIX: &str = "DELTAKIT_";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {0}: expected 'key = value'")]
    BadLine(usize),
    #[error("bad value for {key}: {value}")]
    BadValue { key: String, value: String },
    #[error("tolerances and budgets must be positive ({0})")]
    NotPositive(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub dimension_bound: usize,
    pub kan_budget: u64,
    pub search_budget: u64,
    pub tietze_budget: u64,
    pub grid: usize,
    pub fiber_grid: usize,
    pub delta: f64,
    /// proportionality constant between the positive Hofer length and the
    /// round length; 1 under the unit-sphere normalization
    pub lplus_scale: f64,
    /// fallback input path when a subcommand's input flag is omitted
    pub input: Option<std::path::PathBuf>,
    /// fallback output path when a subcommand's output flag is omitted
    pub output: Option<std::path::PathBuf>,
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let mut tolerances = BTreeMap::new();
        tolerances.insert("holonomy".to_string(), 1e-6);
        tolerances.insert("stall".to_string(), 1e-5);
        tolerances.insert("angle".to_string(), 1e-7);
        RunConfig {
            seed: 0,
            dimension_bound: 6,
            kan_budget: 10_000,
            search_budget: 100_000,
            tietze_budget: 1_000,
            grid: 512,
            fiber_grid: 256,
            delta: 0.05,
            lplus_scale: 1.0,
            input: None,
            output: None,
            tolerances,
        }
    }
}

impl RunConfig {
    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances.get(name).copied().unwrap_or_else(|| {
            RunConfig::default().tolerances.get(name).copied().unwrap_or(1e-6)
        })
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::parse(&text)?;
        cfg.apply_env_overrides(std::env::vars());
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::BadLine(ln + 1));
            };
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply_env_overrides(&mut self, vars: impl Iterator<Item = (String, String)>) {
        for (key, value) in vars {
            if let Some(rest) = key.strip_prefix(ENV_PREFIX) {
                let key = rest.to_lowercase().replace("__", ".");
                let _ = self.set(&key, &value);
            }
        }
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::BadValue { key: key.to_string(), value: value.to_string() };
        match key {
            "seed" => self.seed = value.parse().map_err(|_| bad())?,
            "dimension_bound" => self.dimension_bound = value.parse().map_err(|_| bad())?,
            "kan_budget" => self.kan_budget = value.parse().map_err(|_| bad())?,
            "search_budget" => self.search_budget = value.parse().map_err(|_| bad())?,
            "tietze_budget" => self.tietze_budget = value.parse().map_err(|_| bad())?,
            "grid" => self.grid = value.parse().map_err(|_| bad())?,
            "fiber_grid" => self.fiber_grid = value.parse().map_err(|_| bad())?,
            "delta" => self.delta = value.parse().map_err(|_| bad())?,
            "lplus_scale" => self.lplus_scale = value.parse().map_err(|_| bad())?,
            "input" => self.input = Some(value.into()),
            "output" => self.output = Some(value.into()),
            _ => {
                if let Some(name) = key.strip_prefix("tol.") {
                    self.tolerances
                        .insert(name.to_string(), value.parse().map_err(|_| bad())?);
                } else {
                    return Err(bad());
                }
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), ConfigError> {
        for (k, &v) in &self.tolerances {
            if v <= 0.0 {
                return Err(ConfigError::NotPositive(format!("tol.{k}")));
            }
        }
        if self.kan_budget == 0 || self.search_budget == 0 || self.tietze_budget == 0 {
            return Err(ConfigError::NotPositive("budget".into()));
        }
        if self.delta <= 0.0 || self.delta >= 0.5 {
            return Err(ConfigError::NotPositive("delta".into()));
        }
        if self.lplus_scale <= 0.0 {
            return Err(ConfigError::NotPositive("lplus_scale".into()));
        }
        Ok(())
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "dimension_bound = {}", self.dimension_bound)?;
        writeln!(f, "kan_budget = {}", self.kan_budget)?;
        writeln!(f, "search_budget = {}", self.search_budget)?;
        writeln!(f, "tietze_budget = {}", self.tietze_budget)?;
        writeln!(f, "grid = {}", self.grid)?;
        writeln!(f, "fiber_grid = {}", self.fiber_grid)?;
        writeln!(f, "delta = {}", self.delta)?;
        writeln!(f, "lplus_scale = {}", self.lplus_scale)?;
        if let Some(p) = &self.input {
            writeln!(f, "input = {}", p.display())?;
        }
        if let Some(p) = &self.output {
            writeln!(f, "output = {}", p.display())?;
        }
        for (k, v) in &self.tolerances {
            writeln!(f, "tol.{k} = {v}")?;
        }
        Ok(())
    }
}
