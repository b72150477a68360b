use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use driven_jc::model::{Partition, SystemParams};

use crate::CliError;

/// Raw, unvalidated run settings. Filled from defaults, then a `key=value`
/// file, then command-line flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub omega: f64,
    pub omega0: f64,
    pub omega_c: f64,
    pub g: f64,
    pub lambda: f64,
    pub alpha_sq: f64,
    pub beta_phase: f64,
    pub t_max: f64,
    pub steps: usize,
    pub partitions: Vec<Partition>,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            omega: 3.0,
            omega0: 2.0,
            omega_c: 0.0,
            g: 1.0,
            lambda: 0.0,
            alpha_sq: 0.1,
            beta_phase: 0.0,
            t_max: 20.0,
            steps: 2001,
            partitions: Partition::ALL.to_vec(),
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.trim().parse().map_err(|_| CliError::Invalid(format!("bad value '{value}' for {key}")))
}

/// Comma-separated partition labels, returned in canonical column order.
pub fn parse_partitions(list: &str) -> Result<Vec<Partition>, CliError> {
    let set = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Partition>().map_err(CliError::from))
        .collect::<Result<BTreeSet<_>, _>>()?;
    if set.is_empty() {
        return Err(CliError::Invalid("at least one partition is required".into()));
    }
    Ok(set.into_iter().collect())
}

impl RunSettings {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key.trim().replace('-', "_").as_str() {
            "omega" => self.omega = parse_num(key, value)?,
            "omega0" => self.omega0 = parse_num(key, value)?,
            "omega_c" => self.omega_c = parse_num(key, value)?,
            "g" => self.g = parse_num(key, value)?,
            "lambda" => self.lambda = parse_num(key, value)?,
            "alpha_sq" => self.alpha_sq = parse_num(key, value)?,
            "beta_phase" => self.beta_phase = parse_num(key, value)?,
            "t_max" => self.t_max = parse_num(key, value)?,
            "steps" => self.steps = parse_num(key, value)?,
            "partitions" => self.partitions = parse_partitions(value)?,
            other => return Err(CliError::Invalid(format!("unknown parameter '{other}'"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| CliError::Invalid(format!("line {}: expected key=value", n + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text =
            fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn system_params(&self) -> Result<SystemParams, CliError> {
        Ok(SystemParams::with_populations(
            self.omega,
            self.omega0,
            self.omega_c,
            self.g,
            self.lambda,
            self.alpha_sq,
            self.beta_phase,
        )?)
    }

    pub fn run_config(&self, out: Option<PathBuf>, format: Format) -> Result<RunConfig, CliError> {
        if self.steps < 2 {
            return Err(CliError::Invalid("steps must be at least 2".into()));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(CliError::Invalid("t_max must be positive".into()));
        }
        if self.partitions.is_empty() {
            return Err(CliError::Invalid("at least one partition is required".into()));
        }
        Ok(RunConfig {
            params: self.system_params()?,
            t_max: self.t_max,
            steps: self.steps,
            partitions: self.partitions.clone(),
            out,
            format,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Validated configuration of a single run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub t_max: f64,
    pub steps: usize,
    pub partitions: Vec<Partition>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// Uniform grid including both endpoints.
    pub fn time_grid(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(|k| if k + 1 == self.steps { self.t_max } else { self.t_max * k as f64 / last }).collect()
    }
}

/// `start:stop:step` with `start ≤ stop` and `step > 0`, or a single value.
pub fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Invalid(format!("malformed range '{text}', expected start:stop:step"));
    let parts: Vec<f64> =
        text.split(':').map(|s| s.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_, _>>()?;
    let (start, stop, step) = match parts[..] {
        [x] => (x, x, 1.0),
        [a, b, s] => (a, b, s),
        _ => return Err(bad()),
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || start > stop || step <= 0.0 {
        return Err(bad());
    }
    // tolerate round-off in (stop − start)/step
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| start + step * k as f64).collect())
}
