//! Monte Carlo estimates of the ergodic capacities from the exact system:
//! `A = sum_i |h_A,i| |h_R,i|` with ideal phase alignment, and a direct
//! eavesdropper link.
//!
//! Trials are split into fixed batches. Batch `j` draws from the ChaCha8
//! stream `j` of the configured seed, so estimates do not depend on how many
//! worker threads run the batches. Confidence intervals use batch means.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal, WeightedIndex};
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::capacity::{EscResult, Method, Scenario};
use crate::mg_model::{FadingPreset, MixtureGamma};
use crate::{Error, Result};

pub const DEFAULT_BATCHES: usize = 64;

/// Where the simulated envelopes come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelSource {
    /// Sample the MG model itself.
    MgMixture,
    /// Sample the Rice / Nakagami / Rayleigh law that the MG model was fitted
    /// to. Custom mixtures fall back to MG sampling.
    ExactRiceNakagami,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub channel_source: ChannelSource,
    pub batches: usize,
}

impl McConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        McConfig {
            trials,
            seed,
            channel_source: ChannelSource::MgMixture,
            batches: DEFAULT_BATCHES,
        }
    }

    pub fn with_source(mut self, source: ChannelSource) -> Self {
        self.channel_source = source;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidScenario(
                "Monte Carlo needs at least one trial".into(),
            ));
        }
        if self.batches == 0 {
            return Err(Error::InvalidScenario(
                "Monte Carlo needs at least one batch".into(),
            ));
        }
        Ok(())
    }

    /// Number of batches actually used (never more than the trial count).
    pub fn effective_batches(&self) -> usize {
        self.batches
            .min(usize::try_from(self.trials).unwrap_or(usize::MAX))
            .max(1)
    }
}

/// Draws MG envelopes: pick a Gamma component of the power `X^2` with
/// probability `a_i Gamma(b_i) c^(-b_i)`, draw it, take the square root.
#[derive(Debug, Clone)]
pub struct MgSampler {
    pick: Option<WeightedIndex<f64>>,
    components: Vec<Gamma<f64>>,
}

impl MgSampler {
    pub fn new(dist: &MixtureGamma) -> Result<Self> {
        let weights = dist.component_weights();
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidDistribution(
                "MG sampling needs nonnegative component weights".into(),
            ));
        }
        let scale = 1.0 / dist.rate();
        let components = dist
            .terms()
            .iter()
            .map(|t| Gamma::new(t.b, scale))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidDistribution(format!("bad Gamma component: {e}")))?;
        let pick =
            if components.len() > 1 {
                Some(WeightedIndex::new(&weights).map_err(|e| {
                    Error::InvalidDistribution(format!("bad component weights: {e}"))
                })?)
            } else {
                None
            };
        Ok(MgSampler { pick, components })
    }

    pub fn sample_power<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let i = match &self.pick {
            Some(w) => w.sample(rng),
            None => 0,
        };
        self.components[i].sample(rng)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.sample_power(rng).sqrt()
    }
}

/// One MG envelope draw. Builds the sampler on every call; use [`MgSampler`]
/// in loops.
pub fn sample_mg_envelope<R: Rng + ?Sized>(dist: &MixtureGamma, rng: &mut R) -> Result<f64> {
    Ok(MgSampler::new(dist)?.sample(rng))
}

#[derive(Debug, Clone)]
enum EnvelopeSampler {
    Mg(MgSampler),
    // |los + sigma (n1 + i n2)|
    Rice { los: f64, sigma: f64 },
    // power ~ Gamma(shape, scale)
    Power(Gamma<f64>),
}

impl EnvelopeSampler {
    fn new(dist: &MixtureGamma, source: ChannelSource) -> Result<Self> {
        let bad = |e: rand_distr::GammaError| Error::InvalidDistribution(format!("{e}"));
        Ok(match (source, dist.preset()) {
            (ChannelSource::MgMixture, _) | (_, FadingPreset::Custom) => {
                EnvelopeSampler::Mg(MgSampler::new(dist)?)
            }
            (ChannelSource::ExactRiceNakagami, FadingPreset::Rice { k_factor }) => {
                EnvelopeSampler::Rice {
                    los: (k_factor / (k_factor + 1.0)).sqrt(),
                    sigma: (0.5 / (k_factor + 1.0)).sqrt(),
                }
            }
            (ChannelSource::ExactRiceNakagami, FadingPreset::Nakagami { m }) => {
                EnvelopeSampler::Power(Gamma::new(m, 1.0 / m).map_err(bad)?)
            }
            (ChannelSource::ExactRiceNakagami, FadingPreset::Rayleigh { mean_power }) => {
                EnvelopeSampler::Power(Gamma::new(1.0, mean_power).map_err(bad)?)
            }
        })
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            EnvelopeSampler::Mg(s) => s.sample(rng),
            EnvelopeSampler::Rice { los, sigma } => {
                let n1: f64 = StandardNormal.sample(rng);
                let n2: f64 = StandardNormal.sample(rng);
                (los + sigma * n1).hypot(sigma * n2)
            }
            EnvelopeSampler::Power(g) => g.sample(rng).sqrt(),
        }
    }
}

/// Link gains `(beta_B^2 P_s/N_o, beta_E^2 P_s/N_o)` of one grid point.
pub type GainPair = (f64, f64);

#[derive(Debug, Clone)]
struct BatchSums {
    trials: u64,
    // per gain pair
    cb: Vec<f64>,
    ce: Vec<f64>,
}

fn run_batch(
    index: usize,
    trials: u64,
    elements: u32,
    samplers: &[EnvelopeSampler; 3],
    gains: &[GainPair],
    seed: u64,
) -> BatchSums {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let [hop_a, hop_r, eve] = samplers;
    let mut cb = vec![0.0; gains.len()];
    let mut ce = vec![0.0; gains.len()];
    for _ in 0..trials {
        let mut a = 0.0;
        for _ in 0..elements {
            a += hop_a.sample(&mut rng) * hop_r.sample(&mut rng);
        }
        let x = eve.sample(&mut rng);
        let (a2, x2) = (a * a, x * x);
        for (j, &(gb, ge)) in gains.iter().enumerate() {
            cb[j] += (gb * a2).ln_1p();
            ce[j] += (ge * x2).ln_1p();
        }
    }
    let to_bits = std::f64::consts::LOG2_E;
    cb.iter_mut()
        .chain(ce.iter_mut())
        .for_each(|v| *v *= to_bits);
    BatchSums { trials, cb, ce }
}

/// Student-t half-width at confidence `level` for a batch-means standard error.
pub fn confidence_halfwidth(std_error: f64, batches: usize, level: f64) -> Result<f64> {
    if batches < 2 || !(level > 0.0 && level < 1.0) {
        return Err(Error::domain(
            "confidence_halfwidth",
            format!("need >= 2 batches and 0 < level < 1, got {batches}, {level}"),
        ));
    }
    let t = StudentsT::new(0.0, 1.0, (batches - 1) as f64)
        .map_err(|e| Error::domain("confidence_halfwidth", e.to_string()))?;
    Ok(t.inverse_cdf(0.5 + 0.5 * level) * std_error)
}

/// Simulates several gain pairs on the same channel draws.
///
/// Every pair sees identical envelopes, so differences between pairs carry
/// no sampling noise from the channel itself.
pub fn simulate_esc_gains(
    elements: u32,
    hop_tx_ris: &MixtureGamma,
    hop_ris_rx: &MixtureGamma,
    eavesdropper: &MixtureGamma,
    gains: &[GainPair],
    cfg: &McConfig,
) -> Result<Vec<EscResult>> {
    cfg.validate()?;
    if elements == 0 {
        return Err(Error::InvalidScenario(
            "the surface needs at least one element".into(),
        ));
    }
    let samplers = [
        EnvelopeSampler::new(hop_tx_ris, cfg.channel_source)?,
        EnvelopeSampler::new(hop_ris_rx, cfg.channel_source)?,
        EnvelopeSampler::new(eavesdropper, cfg.channel_source)?,
    ];
    let batches = cfg.effective_batches();
    let base = cfg.trials / batches as u64;
    let extra = (cfg.trials % batches as u64) as usize;
    let sums: Vec<BatchSums> = (0..batches)
        .into_par_iter()
        .map(|j| {
            let n = base + u64::from(j < extra);
            run_batch(j, n, elements, &samplers, gains, cfg.seed)
        })
        .collect();

    let total = cfg.trials as f64;
    let mut out = Vec::with_capacity(gains.len());
    for g in 0..gains.len() {
        let cb = sums.iter().map(|s| s.cb[g]).sum::<f64>() / total;
        let ce = sums.iter().map(|s| s.ce[g]).sum::<f64>() / total;
        let mut res = EscResult::new(cb, ce, Method::MonteCarlo);
        if batches >= 2 {
            let means: Vec<f64> = sums
                .iter()
                .map(|s| (s.cb[g] - s.ce[g]) / s.trials as f64)
                .collect();
            let mean = means.iter().sum::<f64>() / batches as f64;
            let var = means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (batches - 1) as f64;
            let se = (var / batches as f64).sqrt();
            res.std_error = Some(se);
            res.ci_halfwidth = Some(confidence_halfwidth(se, batches, 0.95)?);
        }
        out.push(res);
    }
    Ok(out)
}

/// Monte Carlo estimate of the ergodic secrecy capacity with a 95% interval.
pub fn simulate_esc(scn: &Scenario, cfg: &McConfig) -> Result<EscResult> {
    let res = simulate_esc_gains(
        scn.elements(),
        scn.hop_tx_ris(),
        scn.hop_ris_rx(),
        scn.eavesdropper(),
        &[(scn.legit_gain(), scn.eve_gain())],
        cfg,
    )?;
    Ok(res[0])
}
