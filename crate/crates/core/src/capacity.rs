//! Closed-form ergodic capacities and the ergodic secrecy capacity.

use std::f64::consts::LN_2;
use std::fmt;

use crate::cascade::{cascade_moments, kg_fit, KgParams};
use crate::mg_model::MixtureGamma;
use crate::specfun::{lgamma_pos, meijer_g_scaled, MeijerGSpec};
use crate::{Error, Result};

/// A RIS-aided link with a direct-link eavesdropper.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    elements: u32,
    hop_tx_ris: MixtureGamma,
    hop_ris_rx: MixtureGamma,
    eavesdropper: MixtureGamma,
    beta_b_sq: f64,
    beta_e_sq: f64,
    snr_tx: f64,
}

impl Scenario {
    /// `beta_b_sq`, `beta_e_sq` and `snr_tx` (`P_s / N_o`) are linear.
    pub fn new(
        elements: u32,
        hop_tx_ris: MixtureGamma,
        hop_ris_rx: MixtureGamma,
        eavesdropper: MixtureGamma,
        beta_b_sq: f64,
        beta_e_sq: f64,
        snr_tx: f64,
    ) -> Result<Self> {
        if elements == 0 {
            return Err(Error::InvalidScenario(
                "the surface needs at least one element".into(),
            ));
        }
        for (name, v) in [
            ("beta_B^2", beta_b_sq),
            ("beta_E^2", beta_e_sq),
            ("P_s/N_o", snr_tx),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidScenario(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        Ok(Scenario {
            elements,
            hop_tx_ris,
            hop_ris_rx,
            eavesdropper,
            beta_b_sq,
            beta_e_sq,
            snr_tx,
        })
    }

    pub fn elements(&self) -> u32 {
        self.elements
    }

    pub fn hop_tx_ris(&self) -> &MixtureGamma {
        &self.hop_tx_ris
    }

    pub fn hop_ris_rx(&self) -> &MixtureGamma {
        &self.hop_ris_rx
    }

    pub fn eavesdropper(&self) -> &MixtureGamma {
        &self.eavesdropper
    }

    pub fn beta_b_sq(&self) -> f64 {
        self.beta_b_sq
    }

    pub fn beta_e_sq(&self) -> f64 {
        self.beta_e_sq
    }

    pub fn snr_tx(&self) -> f64 {
        self.snr_tx
    }

    /// `beta_B^2 P_s / N_o`.
    pub fn legit_gain(&self) -> f64 {
        self.beta_b_sq * self.snr_tx
    }

    /// `beta_E^2 P_s / N_o`.
    pub fn eve_gain(&self) -> f64 {
        self.beta_e_sq * self.snr_tx
    }

    /// Moment-matched KG model of the cascade.
    pub fn kg_params(&self) -> Result<KgParams> {
        kg_fit(&cascade_moments(
            &self.hop_tx_ris,
            &self.hop_ris_rx,
            self.elements,
        )?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ergodic capacities in bits/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EscResult {
    pub cb: f64,
    pub ce: f64,
    /// Always exactly `cb - ce`; may be negative.
    pub cs: f64,
    pub method: Method,
    /// 95% confidence half-width of `cs` (Monte Carlo only).
    pub ci_halfwidth: Option<f64>,
    /// Standard error of `cs` (Monte Carlo only).
    pub std_error: Option<f64>,
}

impl EscResult {
    pub fn new(cb: f64, ce: f64, method: Method) -> Self {
        EscResult {
            cb,
            ce,
            cs: cb - ce,
            method,
            ci_halfwidth: None,
            std_error: None,
        }
    }
}

/// Parameters of the `G^{4,1}_{2,4}` in the legitimate-channel capacity.
pub fn legit_meijer_spec(kg: &KgParams) -> Result<MeijerGSpec> {
    let s = 0.5 * (kg.k() + kg.m());
    let d = 0.5 * (kg.k() - kg.m());
    MeijerGSpec::new(4, 1, vec![-s, 1.0 - s], vec![d, -d, -s, -s])
}

/// Parameters of the `G^{1,4}_{4,3}` for one eavesdropper MG term of shape `b`:
/// `(1, 1, 1-b, -b; 1, -b, 0)`.
pub fn eve_meijer_spec(b: f64) -> Result<MeijerGSpec> {
    MeijerGSpec::new(1, 4, vec![1.0, 1.0, 1.0 - b, -b], vec![1.0, -b, 0.0])
}

/// `E[log2(1 + gain A^2)]` for a KG-distributed `A`:
///
/// ```text
/// gain^(-(k+m)/2) Xi^(k+m) / (ln2 Gamma(k) Gamma(m))
///   * G^{4,1}_{2,4}( Xi^2/gain | -(k+m)/2, 1-(k+m)/2 ; (k-m)/2, -(k-m)/2, -(k+m)/2, -(k+m)/2 )
/// ```
pub fn legit_capacity_cf(kg: &KgParams, gain: f64) -> Result<f64> {
    if !(gain > 0.0) || !gain.is_finite() {
        return Err(Error::domain(
            "legit_capacity_cf",
            format!("gain {gain} must be positive"),
        ));
    }
    let spec = legit_meijer_spec(kg)?;
    let km = kg.k() + kg.m();
    let ln_scale = -0.5 * km * gain.ln() + km * kg.xi().ln()
        - lgamma_pos(kg.k())
        - lgamma_pos(kg.m())
        - LN_2.ln();
    meijer_g_scaled(&spec, kg.xi() * kg.xi() / gain, ln_scale)
}

/// `E[log2(1 + gain X^2)]` for an MG envelope `X`:
/// `sum_l a_l c^(-b_l) / ln2 * G^{1,4}_{4,3}(gain / c | 1, 1, 1-b_l, -b_l ; 1, -b_l, 0)`.
pub fn eav_capacity_cf(eav: &MixtureGamma, gain: f64) -> Result<f64> {
    if !(gain > 0.0) || !gain.is_finite() {
        return Err(Error::domain(
            "eav_capacity_cf",
            format!("gain {gain} must be positive"),
        ));
    }
    let c = eav.rate();
    let z = gain / c;
    let mut total = 0.0;
    for t in eav.terms() {
        let spec = eve_meijer_spec(t.b)?;
        let ln_scale = t.a.ln() - t.b * c.ln() - LN_2.ln();
        total += meijer_g_scaled(&spec, z, ln_scale)?;
    }
    Ok(total)
}

/// Closed-form ergodic secrecy capacity `C_B - C_E` (unclamped).
pub fn ergodic_secrecy_capacity(scn: &Scenario) -> Result<EscResult> {
    let kg = scn.kg_params()?;
    let cb = legit_capacity_cf(&kg, scn.legit_gain())?;
    let ce = eav_capacity_cf(scn.eavesdropper(), scn.eve_gain())?;
    Ok(EscResult::new(cb, ce, Method::ClosedForm))
}
