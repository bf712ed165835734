use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::assisted::RoofConfig;
use crate::polyineq::{Ordering, WeightMode};
use crate::states::StateSpec;
use crate::{Error, Result};

/// Betas used by `random-suite` when the config lists none.
pub const DEFAULT_SUITE_BETAS: [f64; 3] = [0.3, 0.5, 0.8];
/// Grid spacing used by `sweep-beta` when the config lists no betas.
pub const DEFAULT_BETA_STEP: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    ReproducePaper,
    RandomSuite,
    SweepBeta,
    Check,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ReproducePaper => "reproduce-paper",
            Self::RandomSuite => "random-suite",
            Self::SweepBeta => "sweep-beta",
            Self::Check => "check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
    Table,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(Self::Jsonl),
            "csv" => Ok(Self::Csv),
            "table" => Ok(Self::Table),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// One experiment, as read from a TOML file.
///
/// ```toml
/// focus = "A"
/// betas = [0.3, 0.5, 0.8]
/// modes = ["hamming", "unit"]
/// format = "jsonl"
///
/// [roof]
/// restarts = 16
/// seed = 7
///
/// [[states]]
/// kind = "haar_pure"
/// parties = 4
/// dim = 2
/// samples = 50
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Filled in from the subcommand when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(default = "default_focus")]
    pub focus: String,
    #[serde(default)]
    pub betas: Vec<f64>,
    #[serde(default)]
    pub modes: Vec<WeightMode>,
    #[serde(default)]
    pub roof: RoofConfig,
    /// `None` picks the analytic or estimated default per report.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub ordering: Ordering,
    /// Restart multiplier for re-running apparent violations.
    #[serde(default = "default_escalation")]
    pub escalation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub states: Vec<StateSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state_file: Option<PathBuf>,
    /// Grid spacing for `sweep-beta` when `betas` is empty.
    #[serde(default = "default_step")]
    pub beta_step: f64,
}

fn default_focus() -> String {
    "A".to_string()
}

fn default_escalation() -> usize {
    4
}

fn default_step() -> f64 {
    DEFAULT_BETA_STEP
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            command: None,
            focus: default_focus(),
            betas: Vec::new(),
            modes: Vec::new(),
            roof: RoofConfig::default(),
            tolerance: None,
            ordering: Ordering::default(),
            escalation: default_escalation(),
            output: None,
            format: Format::default(),
            states: Vec::new(),
            state_file: None,
            beta_step: default_step(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    /// Reads a config; a relative `state_file` is taken relative to the
    /// config's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        if let (Some(f), Some(dir)) = (cfg.state_file.as_mut(), path.parent()) {
            if f.is_relative() {
                *f = dir.join(&*f);
            }
        }
        Ok(cfg)
    }

    /// Fills command-dependent defaults and validates. The result is what
    /// gets echoed into report metadata.
    pub fn resolve(mut self, command: Command) -> Result<Self> {
        if let Some(c) = self.command {
            if c != command {
                return Err(Error::Config(format!(
                    "config is for `{}` but `{}` was requested",
                    c.as_str(),
                    command.as_str()
                )));
            }
        }
        self.command = Some(command);
        if self.modes.is_empty() {
            self.modes = WeightMode::ALL.to_vec();
        }
        if self.betas.is_empty() {
            self.betas = match command {
                Command::RandomSuite => DEFAULT_SUITE_BETAS.to_vec(),
                Command::SweepBeta => beta_grid(self.beta_step)?,
                Command::ReproducePaper => vec![1.0, 0.5, 1.0 / 3.0],
                Command::Check => return Err(Error::Config("check needs a beta".into())),
            };
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(b) = self.betas.iter().find(|b| !(0.0..=1.0).contains(*b)) {
            return Err(Error::Config(format!("beta {b} is outside [0, 1]")));
        }
        if let Some(t) = self.tolerance {
            if !(t >= 0.0) {
                return Err(Error::Config(format!("tolerance {t} must be nonnegative")));
            }
        }
        if self.escalation == 0 {
            return Err(Error::Config("escalation must be >= 1".into()));
        }
        self.roof.validate()?;
        for s in &self.states {
            s.resolved_layout()?;
            if s.samples == 0 {
                return Err(Error::Config(format!("state `{:?}` has zero samples", s.kind)));
            }
        }
        match self.command {
            Some(Command::RandomSuite) => {
                if self.states.is_empty() && self.state_file.is_none() {
                    return Err(Error::Config("random-suite needs [[states]] or state_file".into()));
                }
                if let Some(s) = self.states.iter().find(|s| !s.kind.is_pure()) {
                    return Err(Error::Config(format!(
                        "random-suite needs pure states; `{:?}` is mixed",
                        s.kind
                    )));
                }
            }
            Some(Command::SweepBeta) | Some(Command::Check) => {
                let count = self.states.iter().map(|s| s.samples).sum::<usize>()
                    + usize::from(self.state_file.is_some());
                if count != 1 {
                    return Err(Error::Config(format!("expected exactly one state, found {count}")));
                }
            }
            _ => {}
        }
        if let Some(out) = &self.output {
            let dir = out.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            if !dir.is_dir() {
                return Err(Error::Config(format!("output directory {} does not exist", dir.display())));
            }
        }
        Ok(())
    }
}

/// `0, step, 2·step, …, 1`, with the last point pinned to exactly 1.
pub fn beta_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::Config(format!("beta_step {step} must lie in (0, 1]")));
    }
    let n = (1.0 / step).round() as usize;
    if ((n as f64) * step - 1.0).abs() > 1e-9 {
        return Err(Error::Config(format!("beta_step {step} does not divide 1")));
    }
    Ok((0..=n).map(|k| if k == n { 1.0 } else { k as f64 / n as f64 }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::StateKind;

    #[test]
    fn parses_and_resolves() {
        let cfg = ExperimentConfig::from_toml(
            r#"
            betas = [0.5]
            modes = ["unit"]
            [roof]
            restarts = 3
            [[states]]
            kind = "haar_pure"
            parties = 3
            dim = 2
            samples = 4
            "#,
        )
        .unwrap()
        .resolve(Command::RandomSuite)
        .unwrap();
        assert_eq!(cfg.roof.restarts, 3);
        assert_eq!(cfg.roof.max_iters, RoofConfig::default().max_iters);
        assert_eq!(cfg.states[0].kind, StateKind::HaarPure);
        assert_eq!(cfg.escalation, 4);
        assert_eq!(cfg.command, Some(Command::RandomSuite));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(ExperimentConfig::from_toml("bogus = 1").is_err());
        let bad_beta = ExperimentConfig { betas: vec![1.5], ..Default::default() };
        assert!(matches!(bad_beta.resolve(Command::ReproducePaper), Err(Error::Config(_))));
        let mixed = ExperimentConfig {
            states: vec![StateSpec::new(StateKind::RandomMixed, 3, 2).with_rank(2)],
            ..Default::default()
        };
        assert!(mixed.resolve(Command::RandomSuite).is_err());
        let two = ExperimentConfig {
            states: vec![StateSpec::new(StateKind::W, 3, 2).with_samples(2)],
            ..Default::default()
        };
        assert!(two.resolve(Command::SweepBeta).is_err());
    }

    #[test]
    fn sweep_grid() {
        let g = beta_grid(0.05).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[20], 1.0);
        assert!(beta_grid(0.3).is_err());
    }
}
