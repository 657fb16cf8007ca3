//! Experiment configuration files.

use std::path::{Path, PathBuf};

use crowdwise_core::{
    pareto_segment, Error, InfluenceNetwork, NoiseKind, NoiseModel, RunConfig,
    SelfConfidenceProfile,
};
use serde::Deserialize;

use crate::error::CliError;

fn default_max_steps() -> u64 {
    1_000_000
}

fn default_tol_fp() -> f64 {
    1e-10
}

fn default_record_every() -> u64 {
    1
}

fn default_t_max() -> u64 {
    200
}

/// Initial self-confidence: explicit values or a preset string
/// (`"uniform:c"` or `"zstar:alpha"`).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Z0Spec {
    Values(Vec<f64>),
    Preset(String),
}

/// One JSON file fully describing an experiment.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(rename = "P")]
    pub p: Vec<Vec<f64>>,
    pub sigma2: Vec<f64>,
    #[serde(default)]
    pub theta: f64,
    #[serde(default)]
    pub z0: Option<Z0Spec>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub seeds: Option<Vec<u64>>,
    #[serde(default = "default_max_steps")]
    pub max_steps: u64,
    #[serde(default = "default_tol_fp")]
    pub tol_fp: f64,
    #[serde(default = "default_record_every")]
    pub record_every: u64,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub noise: NoiseKind,
    /// Replicate count for `opinions`; absent means a single realisation.
    #[serde(default)]
    pub replicates: Option<u64>,
    /// Horizon for `opinions`.
    #[serde(default = "default_t_max")]
    pub t_max: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::config(path, e.into_inner().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    /// Validates the configuration and builds the model objects.
    pub fn build(&self) -> Result<Experiment, CliError> {
        let n = self.p.len();
        if n == 0 {
            return Err(CliError::config("P", "matrix is empty"));
        }
        for (i, row) in self.p.iter().enumerate() {
            if row.len() != n {
                return Err(CliError::config(
                    format!("P[{i}]"),
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
        }
        if self.sigma2.len() != n {
            return Err(CliError::config(
                "sigma2",
                format!("expected {n} entries, found {}", self.sigma2.len()),
            ));
        }
        if let Some(i) = self
            .sigma2
            .iter()
            .position(|s| !(s.is_finite() && *s > 0.0))
        {
            return Err(CliError::config(
                format!("sigma2[{i}]"),
                "variance must be positive",
            ));
        }
        if !self.theta.is_finite() {
            return Err(CliError::config("theta", "must be finite"));
        }
        if self.max_steps == 0 {
            return Err(CliError::config("max_steps", "must be at least 1"));
        }
        if !(self.tol_fp.is_finite() && self.tol_fp > 0.0) {
            return Err(CliError::config("tol_fp", "must be positive"));
        }
        if self.record_every == 0 {
            return Err(CliError::config("record_every", "must be at least 1"));
        }
        if self.replicates == Some(0) {
            return Err(CliError::config("replicates", "must be at least 1"));
        }

        let net = InfluenceNetwork::from_rows(&self.p).map_err(|e| match e {
            Error::NotStochastic { row, reason } => CliError::config(format!("P[{row}]"), reason),
            Error::TooSmall { n } => {
                CliError::config("P", format!("need at least 2 agents, found {n}"))
            }
            other => CliError::Validation(other),
        })?;
        let noise = NoiseModel::new(self.theta, self.sigma2.clone())?.with_kind(self.noise);
        let z0 = self
            .z0
            .as_ref()
            .map(|spec| resolve_z0(spec, &net, &noise))
            .transpose()?;
        Ok(Experiment {
            net,
            noise,
            z0,
            config: self.clone(),
        })
    }
}

fn resolve_z0(
    spec: &Z0Spec,
    net: &InfluenceNetwork,
    noise: &NoiseModel,
) -> Result<SelfConfidenceProfile, CliError> {
    let n = net.n();
    match spec {
        Z0Spec::Values(v) => {
            if v.len() != n {
                return Err(CliError::config(
                    "z0",
                    format!("expected {n} entries, found {}", v.len()),
                ));
            }
            SelfConfidenceProfile::new(v.clone()).map_err(|e| match e {
                Error::InvalidProfile { index, value } => {
                    CliError::config(format!("z0[{index}]"), format!("{value} is not in [0, 1]"))
                }
                other => CliError::Validation(other),
            })
        }
        Z0Spec::Preset(s) => {
            let (name, arg) = s
                .split_once(':')
                .ok_or_else(|| CliError::config("z0", format!("unknown preset {s:?}")))?;
            let value: f64 = arg
                .trim()
                .parse()
                .map_err(|_| CliError::config("z0", format!("cannot parse {arg:?} as a number")))?;
            match name.trim() {
                "uniform" => SelfConfidenceProfile::uniform(n, value).map_err(|_| {
                    CliError::config("z0", format!("uniform value {value} is not in [0, 1]"))
                }),
                "zstar" => {
                    let seg = pareto_segment(net, noise)?;
                    seg.profile(value).map_err(|_| {
                        CliError::config(
                            "z0",
                            format!("alpha {value} is not in (0, {}]", seg.alpha_star),
                        )
                    })
                }
                other => Err(CliError::config("z0", format!("unknown preset {other:?}"))),
            }
        }
    }
}

/// A validated configuration together with the model it describes.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub net: InfluenceNetwork,
    pub noise: NoiseModel,
    pub z0: Option<SelfConfidenceProfile>,
    pub config: ExperimentConfig,
}

impl Experiment {
    pub fn require_z0(&self) -> Result<&SelfConfidenceProfile, CliError> {
        self.z0
            .as_ref()
            .ok_or_else(|| CliError::config("z0", "this command needs an initial profile"))
    }

    pub fn run_config(&self, seed: u64) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::new(seed, self.require_z0()?.clone());
        cfg.max_steps = self.config.max_steps;
        cfg.tol_fp = self.config.tol_fp;
        cfg.record_every = self.config.record_every;
        Ok(cfg)
    }

    pub fn output_dir(&self) -> PathBuf {
        self.config
            .output_dir
            .clone()
            .unwrap_or_else(|| PathBuf::from("."))
    }
}
