//! Experiment configuration files (TOML).
//!
//! ```toml
//! [scenario]
//! snr_tx_db = 0.0
//! hop_tx_ris = { kind = "rice", k_factor_db = 5.0, terms = 20 }
//! hop_ris_rx = { kind = "rice", k_factor_db = 5.0, terms = 20 }
//! eavesdropper = { kind = "nakagami", m = 2.0 }
//!
//! [sweep]
//! elements = { start = 4, stop = 30, step = 2 }
//! beta_b_sq_db = 0.0
//! beta_e_sq_db = [-5.0, 0.0, 5.0]
//! ```

use std::path::{Path, PathBuf};

use ris_esc::mg_model::{fit_nakagami, fit_rayleigh, fit_rice, MgTerm, MixtureGamma};
use ris_esc::montecarlo::{ChannelSource, McConfig, DEFAULT_BATCHES};
use ris_esc::units::db_to_linear;
use serde::Deserialize;

use crate::error::{CliError, Result};

const FIG2: &str = include_str!("../presets/fig2.toml");
const FIG3: &str = include_str!("../presets/fig3.toml");

/// Built-in preset text by name.
pub fn preset(name: &str) -> Option<&'static str> {
    match name {
        "fig2" => Some(FIG2),
        "fig3" => Some(FIG3),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub scenario: ScenarioConfig,
    pub sweep: SweepConfig,
    #[serde(default = "default_methods")]
    pub methods: Vec<MethodName>,
    #[serde(default)]
    pub monte_carlo: MonteCarloConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_methods() -> Vec<MethodName> {
    vec![MethodName::Cf]
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Transmit SNR `P_s / N_o` in dB.
    #[serde(default)]
    pub snr_tx_db: f64,
    pub hop_tx_ris: Fading,
    pub hop_ris_rx: Fading,
    pub eavesdropper: Fading,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Fading {
    Rayleigh {
        #[serde(default)]
        mean_power_db: f64,
    },
    Rice {
        k_factor_db: f64,
        #[serde(default = "default_rice_terms")]
        terms: usize,
    },
    Nakagami {
        m: f64,
    },
    /// Raw MG terms `[a, b]` sharing the rate `c`.
    Custom {
        rate: f64,
        terms: Vec<[f64; 2]>,
    },
}

pub const MAX_RICE_TERMS: usize = 1000;

fn default_rice_terms() -> usize {
    20
}

impl Fading {
    pub fn to_mixture(&self) -> Result<MixtureGamma> {
        Ok(match *self {
            Fading::Rayleigh { mean_power_db } => fit_rayleigh(db_to_linear(mean_power_db))?,
            Fading::Rice { k_factor_db, terms } => {
                if terms > MAX_RICE_TERMS {
                    return Err(CliError::Config(format!(
                        "rice terms = {terms} exceeds {MAX_RICE_TERMS}"
                    )));
                }
                fit_rice(db_to_linear(k_factor_db), terms)?
            }
            Fading::Nakagami { m } => fit_nakagami(m)?,
            Fading::Custom { rate, ref terms } => {
                MixtureGamma::new(terms.iter().map(|&[a, b]| MgTerm { a, b }).collect(), rate)?
            }
        })
    }
}

/// Longest sweep axis and largest grid accepted.
pub const MAX_AXIS_LEN: usize = 100_000;
pub const MAX_GRID_LEN: usize = 1_000_000;

/// A sweep axis: a single value, an explicit list, or an inclusive range.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Axis<T> {
    One(T),
    List(Vec<T>),
    Range { start: T, stop: T, step: T },
}

impl Axis<u32> {
    pub fn values(&self) -> Result<Vec<u32>> {
        match *self {
            Axis::One(v) => Ok(vec![v]),
            Axis::List(ref v) => Ok(v.clone()),
            Axis::Range { start, stop, step } => {
                if step == 0 || stop < start {
                    return Err(CliError::Config(format!(
                        "range {start}..={stop} step {step} is empty"
                    )));
                }
                if (stop - start) / step >= MAX_AXIS_LEN as u32 {
                    return Err(CliError::Config(format!(
                        "range {start}..={stop} step {step} has too many points"
                    )));
                }
                Ok((start..=stop).step_by(step as usize).collect())
            }
        }
    }
}

impl Axis<f64> {
    pub fn values(&self) -> Result<Vec<f64>> {
        let vals = match *self {
            Axis::One(v) => vec![v],
            Axis::List(ref v) => v.clone(),
            Axis::Range { start, stop, step } => {
                let span = (stop - start) / step;
                if !(step > 0.0)
                    || !(span >= -1e-9)
                    || !span.is_finite()
                    || span >= MAX_AXIS_LEN as f64
                {
                    return Err(CliError::Config(format!(
                        "range {start}..={stop} step {step} is empty or unbounded"
                    )));
                }
                let count = (span + 1e-9).floor() as usize;
                // snap to a 1e-9 grid so 0.1-style steps give clean labels
                (0..=count)
                    .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
                    .collect()
            }
        };
        if let Some(bad) = vals.iter().find(|v| !v.is_finite()) {
            return Err(CliError::Config(format!("non-finite sweep value {bad}")));
        }
        Ok(vals)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub elements: Axis<u32>,
    pub beta_b_sq_db: Axis<f64>,
    pub beta_e_sq_db: Axis<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    Cf,
    Quad,
    Mc,
}

impl MethodName {
    pub const ALL: [MethodName; 3] = [MethodName::Cf, MethodName::Quad, MethodName::Mc];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodName::Cf => "cf",
            MethodName::Quad => "quad",
            MethodName::Mc => "mc",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cf" => Some(MethodName::Cf),
            "quad" => Some(MethodName::Quad),
            "mc" => Some(MethodName::Mc),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SourceName {
    #[default]
    MgMixture,
    ExactRiceNakagami,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MonteCarloConfig {
    pub trials: u64,
    pub seed: u64,
    pub source: SourceName,
    pub batches: usize,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig {
            trials: 1_000_000,
            seed: 1,
            source: SourceName::MgMixture,
            batches: DEFAULT_BATCHES,
        }
    }
}

impl MonteCarloConfig {
    pub fn to_mc_config(&self) -> McConfig {
        let source = match self.source {
            SourceName::MgMixture => ChannelSource::MgMixture,
            SourceName::ExactRiceNakagami => ChannelSource::ExactRiceNakagami,
        };
        McConfig {
            trials: self.trials,
            seed: self.seed,
            channel_source: source,
            batches: self.batches,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChartKind {
    Bar,
    Line,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub plot: Option<PathBuf>,
    pub chart: Option<ChartKind>,
}

/// One point of the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub n: u32,
    pub beta_b_db: f64,
    pub beta_e_db: f64,
}

/// Distributions resolved from a [`ScenarioConfig`].
#[derive(Debug, Clone, PartialEq)]
pub struct Channels {
    pub hop_tx_ris: MixtureGamma,
    pub hop_ris_rx: MixtureGamma,
    pub eavesdropper: MixtureGamma,
    pub snr_tx: f64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let grid = self.grid()?;
        if grid.is_empty() {
            return Err(CliError::Config("the sweep is empty".into()));
        }
        if let Some(p) = grid.iter().find(|p| p.n == 0) {
            return Err(CliError::Config(format!(
                "element count {} must be >= 1",
                p.n
            )));
        }
        if self.methods.is_empty() {
            return Err(CliError::Config("no methods selected".into()));
        }
        if !self.scenario.snr_tx_db.is_finite() {
            return Err(CliError::Config("snr_tx_db must be finite".into()));
        }
        if self.monte_carlo.trials == 0 || self.monte_carlo.batches == 0 {
            return Err(CliError::Config(
                "monte_carlo trials and batches must be >= 1".into(),
            ));
        }
        self.channels()?;
        Ok(())
    }

    /// Grid points in output order: `N`, then `beta_B^2`, then `beta_E^2`.
    pub fn grid(&self) -> Result<Vec<GridPoint>> {
        let ns = self.sweep.elements.values()?;
        let bs = self.sweep.beta_b_sq_db.values()?;
        let es = self.sweep.beta_e_sq_db.values()?;
        let len = ns.len().saturating_mul(bs.len()).saturating_mul(es.len());
        if len > MAX_GRID_LEN {
            return Err(CliError::Config(format!(
                "the sweep has {len} points (max {MAX_GRID_LEN})"
            )));
        }
        let mut out = Vec::with_capacity(ns.len() * bs.len() * es.len());
        for &n in &ns {
            for &beta_b_db in &bs {
                for &beta_e_db in &es {
                    out.push(GridPoint {
                        n,
                        beta_b_db,
                        beta_e_db,
                    });
                }
            }
        }
        Ok(out)
    }

    pub fn channels(&self) -> Result<Channels> {
        Ok(Channels {
            hop_tx_ris: self.scenario.hop_tx_ris.to_mixture()?,
            hop_ris_rx: self.scenario.hop_ris_rx.to_mixture()?,
            eavesdropper: self.scenario.eavesdropper.to_mixture()?,
            snr_tx: db_to_linear(self.scenario.snr_tx_db),
        })
    }

    /// Bar chart when `beta_B^2` is fixed, line chart otherwise, unless set.
    pub fn chart(&self) -> Result<ChartKind> {
        if let Some(c) = self.output.chart {
            return Ok(c);
        }
        Ok(if self.sweep.beta_b_sq_db.values()?.len() > 1 {
            ChartKind::Line
        } else {
            ChartKind::Bar
        })
    }
}

/// Parses and validates a config.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let cfg: ExperimentConfig = toml::from_str(text)?;
    cfg.validate()?;
    Ok(cfg)
}

/// Reads a config file; `fig2` and `fig3` name the built-in presets unless a
/// file of that name exists.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    if !path.exists() {
        if let Some(text) = path.to_str().and_then(preset) {
            return parse_config(text);
        }
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text)
}
