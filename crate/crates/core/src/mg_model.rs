//! Mixture-Gamma (MG) envelope distributions.
//!
//! An MG envelope `X` has density `f(x) = sum_i 2 a_i x^(2 b_i - 1) exp(-c x^2)`
//! with one rate `c` shared by all terms. Equivalently the power `X^2` is a
//! mixture of Gamma(`b_i`, rate `c`) variables with weights
//! `w_i = a_i Gamma(b_i) c^(-b_i)`, which sum to one.

use crate::specfun::{gamma_p, gamma_pos, lgamma_pos};
use crate::{Error, Result};

/// Tolerance on `sum_i a_i Gamma(b_i) c^(-b_i) = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MgTerm {
    pub a: f64,
    pub b: f64,
}

/// The fading family an MG distribution was fitted to, kept so that the
/// Monte Carlo simulator can also draw from the exact law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingPreset {
    Rayleigh {
        mean_power: f64,
    },
    /// Rice with linear K factor, unit mean power.
    Rice {
        k_factor: f64,
    },
    /// Nakagami-m with unit mean power.
    Nakagami {
        m: f64,
    },
    /// Raw term list with no closed-form parent.
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixtureGamma {
    terms: Vec<MgTerm>,
    rate: f64,
    preset: FadingPreset,
}

impl MixtureGamma {
    /// Builds a distribution from raw `(a, b)` terms and the shared rate `c`.
    pub fn new(terms: Vec<MgTerm>, rate: f64) -> Result<Self> {
        Self::with_preset(terms, rate, FadingPreset::Custom)
    }

    fn with_preset(terms: Vec<MgTerm>, rate: f64, preset: FadingPreset) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidDistribution("no terms".into()));
        }
        if !(rate > 0.0) || !rate.is_finite() {
            return Err(Error::InvalidDistribution(format!(
                "rate c = {rate} must be positive"
            )));
        }
        for (i, t) in terms.iter().enumerate() {
            if !(t.a > 0.0 && t.a.is_finite() && t.b > 0.0 && t.b.is_finite()) {
                return Err(Error::InvalidDistribution(format!(
                    "term {i}: a = {}, b = {} must be positive and finite",
                    t.a, t.b
                )));
            }
        }
        let dist = MixtureGamma {
            terms,
            rate,
            preset,
        };
        let total: f64 = dist.component_weights().iter().sum();
        if !((total - 1.0).abs() <= NORMALIZATION_TOL) {
            return Err(Error::InvalidDistribution(format!(
                "sum a_i Gamma(b_i) c^-b_i = {total}, expected 1"
            )));
        }
        Ok(dist)
    }

    pub fn terms(&self) -> &[MgTerm] {
        &self.terms
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn preset(&self) -> FadingPreset {
        self.preset
    }

    /// Mixture weights of the power `X^2`: `a_i Gamma(b_i) c^(-b_i)`.
    pub fn component_weights(&self) -> Vec<f64> {
        let ln_c = self.rate.ln();
        self.terms
            .iter()
            .map(|t| (t.a.ln() + lgamma_pos(t.b) - t.b * ln_c).exp())
            .collect()
    }

    /// `sum_i a_i Gamma(b_i) c^(-b_i)`.
    pub fn normalization(&self) -> f64 {
        self.component_weights().iter().sum()
    }
}

/// Density of the envelope at `x >= 0`.
pub fn mg_pdf(dist: &MixtureGamma, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(
            "mg_pdf",
            format!("x = {x} must be nonnegative"),
        ));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for t in &dist.terms {
        let power = 2.0 * t.b - 1.0;
        let v = if x == 0.0 {
            match power.partial_cmp(&0.0) {
                Some(std::cmp::Ordering::Greater) => 0.0,
                Some(std::cmp::Ordering::Equal) => 2.0 * t.a,
                _ => f64::INFINITY,
            }
        } else {
            ((2.0 * t.a).ln() + power * x.ln() - dist.rate * x * x).exp()
        };
        sum += v;
    }
    Ok(sum)
}

/// Distribution function `P(X <= x) = sum_i w_i P(b_i, c x^2)`.
pub fn mg_cdf(dist: &MixtureGamma, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(
            "mg_cdf",
            format!("x = {x} must be nonnegative"),
        ));
    }
    let y = dist.rate * x * x;
    let mut sum = 0.0;
    for (t, w) in dist.terms.iter().zip(dist.component_weights()) {
        sum += w * gamma_p(t.b, y)?;
    }
    Ok(sum)
}

/// `E[X^n] = sum_i a_i Gamma(b_i + n/2) c^(-(b_i + n/2))`.
pub fn mg_envelope_moment(dist: &MixtureGamma, n: u32) -> f64 {
    let half = 0.5 * n as f64;
    let ln_c = dist.rate.ln();
    dist.terms
        .iter()
        .map(|t| {
            let s = t.b + half;
            let direct = t.a * gamma_pos(s) * dist.rate.powf(-s);
            if direct.is_finite() && direct > 0.0 {
                direct
            } else {
                (t.a.ln() + lgamma_pos(s) - s * ln_c).exp()
            }
        })
        .sum()
}

/// MG approximation of a unit-power Rice envelope with linear factor `k_factor`
/// using `terms` components: `b_n = n`, `c = 1 + K` and
/// `a_n = delta(K, n) / sum_j delta(K, j) Gamma(j) c^-j` with
/// `delta(K, n) = K^(n-1) (1+K)^n / (e^K ((n-1)!)^2)`.
///
/// Weights are formed in log space. Components whose weight underflows to
/// zero (always the case for `n >= 2` when `K = 0`) are dropped.
pub fn fit_rice(k_factor: f64, terms: usize) -> Result<MixtureGamma> {
    if !(k_factor >= 0.0) || !k_factor.is_finite() {
        return Err(Error::domain(
            "fit_rice",
            format!("K = {k_factor} must be nonnegative"),
        ));
    }
    if terms == 0 {
        return Err(Error::domain("fit_rice", "need at least one term"));
    }
    let rate = 1.0 + k_factor;
    let ln_k = k_factor.ln();
    let ln_rate = rate.ln();
    let ln_delta: Vec<f64> = (1..=terms)
        .map(|n| {
            let nf = n as f64;
            let k_pow = if n == 1 { 0.0 } else { (nf - 1.0) * ln_k };
            k_pow + nf * ln_rate - k_factor - 2.0 * lgamma_pos(nf)
        })
        .collect();
    // ln of delta_n Gamma(n) c^-n
    let ln_w: Vec<f64> = ln_delta
        .iter()
        .enumerate()
        .map(|(i, ld)| {
            let nf = (i + 1) as f64;
            ld + lgamma_pos(nf) - nf * ln_rate
        })
        .collect();
    let max = ln_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_norm = max + ln_w.iter().map(|w| (w - max).exp()).sum::<f64>().ln();
    let comps: Vec<MgTerm> = ln_delta
        .iter()
        .enumerate()
        .map(|(i, ld)| MgTerm {
            a: (ld - ln_norm).exp(),
            b: (i + 1) as f64,
        })
        .filter(|t| t.a > 0.0)
        .collect();
    MixtureGamma::with_preset(comps, rate, FadingPreset::Rice { k_factor })
}

/// Unit-power Nakagami-m as a single MG term `a = m^m / Gamma(m)`, `b = c = m`.
pub fn fit_nakagami(m: f64) -> Result<MixtureGamma> {
    if !(m >= 0.5) || !m.is_finite() {
        return Err(Error::domain(
            "fit_nakagami",
            format!("m = {m} must be at least 1/2"),
        ));
    }
    let a = (m * m.ln() - lgamma_pos(m)).exp();
    MixtureGamma::with_preset(vec![MgTerm { a, b: m }], m, FadingPreset::Nakagami { m })
}

/// Rayleigh envelope with `E[X^2] = mean_power`: `b = 1`, `a = c = 1/mean_power`.
pub fn fit_rayleigh(mean_power: f64) -> Result<MixtureGamma> {
    if !(mean_power > 0.0) || !mean_power.is_finite() {
        return Err(Error::domain(
            "fit_rayleigh",
            format!("mean power {mean_power} must be positive"),
        ));
    }
    let c = 1.0 / mean_power;
    MixtureGamma::with_preset(
        vec![MgTerm { a: c, b: 1.0 }],
        c,
        FadingPreset::Rayleigh { mean_power },
    )
}
