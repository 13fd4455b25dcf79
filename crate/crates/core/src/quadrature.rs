//! Direct numerical evaluation of the capacity integrals, independent of the
//! Meijer-G closed forms.
//!
//! Both integrals are taken in the power domain `y = x^2`, where the legitimate
//! density is `2 Xi^(k+m) / (Gamma(k) Gamma(m)) y^((k+m)/2 - 1) K_{k-m}(2 Xi sqrt(y))`
//! and the MG density is `sum a y^(b-1) e^(-c y)`.

use std::f64::consts::LN_2;

use crate::capacity::{EscResult, Method, Scenario};
use crate::cascade::KgParams;
use crate::integrate::{integrate_pieces, Integral, Tolerance};
use crate::mg_model::{mg_envelope_moment, MixtureGamma};
use crate::specfun::{lgamma_pos, ln_bessel_k};
use crate::{Error, Result};

/// Integrand values below this fraction of the peak are treated as zero.
const TAIL_CUTOFF: f64 = 1e-18;
const LOWER_OCTAVES: i32 = 80;
const MAX_TAIL_STEPS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 4000,
        }
    }
}

impl QuadratureConfig {
    fn validate(&self) -> Result<Tolerance> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) || self.max_subdivisions == 0 {
            return Err(Error::domain(
                "QuadratureConfig",
                "tolerances and budget must be positive",
            ));
        }
        Ok(Tolerance {
            abs: self.abs_tol,
            rel: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        })
    }
}

/// `ln f_A(x)` for the KG envelope density.
pub fn ln_kg_pdf(kg: &KgParams, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("kg_pdf", format!("x = {x} must be positive")));
    }
    let km = kg.k() + kg.m();
    Ok(
        4f64.ln() + km * kg.xi().ln() - lgamma_pos(kg.k()) - lgamma_pos(kg.m())
            + (km - 1.0) * x.ln()
            + ln_bessel_k(kg.k() - kg.m(), 2.0 * kg.xi() * x)?,
    )
}

/// KG envelope density `4 Xi^(k+m) / (Gamma(k) Gamma(m)) x^(k+m-1) K_{k-m}(2 Xi x)`.
pub fn kg_pdf(kg: &KgParams, x: f64) -> Result<f64> {
    Ok(ln_kg_pdf(kg, x)?.exp())
}

// Density of A^2 at y, in log form. Zero and overflowed arguments map to -inf.
fn ln_kg_power_density(kg: &KgParams, ln_norm: f64, y: f64) -> f64 {
    if !(y > 0.0) {
        return f64::NEG_INFINITY;
    }
    let s = 0.5 * (kg.k() + kg.m());
    match ln_bessel_k(kg.k() - kg.m(), 2.0 * kg.xi() * y.sqrt()) {
        Ok(lk) => ln_norm + (s - 1.0) * y.ln() + lk,
        Err(_) => f64::NEG_INFINITY,
    }
}

fn mg_power_density(eav: &MixtureGamma, y: f64) -> f64 {
    if !(y > 0.0) {
        return 0.0;
    }
    let ln_y = y.ln();
    let c = eav.rate();
    eav.terms()
        .iter()
        .map(|t| t.a * ((t.b - 1.0) * ln_y - c * y).exp())
        .sum()
}

/// `int_0^inf density(y) log2(1 + gain y) dy` with the integrand's support
/// located around `scale` (a typical value of `y`).
fn capacity_integral(
    density: impl Fn(f64) -> f64,
    gain: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    let tol = cfg.validate()?;
    if !(gain > 0.0) || !gain.is_finite() {
        return Err(Error::domain(
            "capacity quadrature",
            format!("gain {gain} must be positive"),
        ));
    }
    let h = |y: f64| {
        let d = density(y);
        if d == 0.0 {
            0.0
        } else {
            d * (gain * y).ln_1p() / LN_2
        }
    };

    // Coarse scan in ln y, then golden-section refinement around the best cell.
    let ln_scale = scale.ln();
    let step = 0.25;
    let mut best = (f64::NEG_INFINITY, ln_scale);
    for i in -240..=240 {
        let t = ln_scale + step * f64::from(i);
        let v = h(t.exp());
        if v > best.0 {
            best = (v, t);
        }
    }
    if !(best.0 > 0.0) || !best.0.is_finite() {
        return Err(Error::convergence(
            "capacity quadrature",
            format!("integrand has no positive finite peak near y = {scale:e}"),
        ));
    }
    let (mut lo, mut hi) = (best.1 - step, best.1 + step);
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let t1 = hi - golden * (hi - lo);
        let t2 = lo + golden * (hi - lo);
        if h(t1.exp()) >= h(t2.exp()) {
            hi = t2;
        } else {
            lo = t1;
        }
    }
    let y_peak = (0.5 * (lo + hi)).exp();
    let peak = h(y_peak).max(best.0);

    let mut points: Vec<f64> = (1..=LOWER_OCTAVES)
        .rev()
        .map(|j| y_peak * 0.5f64.powi(j))
        .collect();
    points.insert(0, 0.0);
    points.push(y_peak);
    let mut y = y_peak;
    let mut steps = 0;
    loop {
        y *= 2f64.sqrt();
        points.push(y);
        steps += 1;
        if h(y) < TAIL_CUTOFF * peak {
            break;
        }
        if steps >= MAX_TAIL_STEPS || !y.is_finite() {
            return Err(Error::convergence(
                "capacity quadrature",
                format!("integrand does not decay beyond y = {y:e}"),
            ));
        }
    }

    let body = integrate_pieces(h, &points, tol)?;

    // Geometric bound on the discarded tail: panels [2^j Y, 2^(j+1) Y] shrink
    // by at least 2 h(2Y)/h(Y) once the decay is exponential.
    let (hy, h2y) = (h(y), h(2.0 * y));
    let ratio = if hy > 0.0 { 2.0 * h2y / hy } else { 0.0 };
    if ratio >= 1.0 {
        return Err(Error::convergence(
            "capacity quadrature",
            format!("tail beyond y = {y:e} is not decaying geometrically"),
        ));
    }
    let tail = y * hy / (1.0 - ratio);
    let budget = tol.abs.max(tol.rel * body.value.abs());
    if tail > budget {
        return Err(Error::convergence(
            "capacity quadrature",
            format!("tail bound {tail:e} exceeds tolerance {budget:e}"),
        ));
    }
    Ok(Integral {
        value: body.value,
        error: body.error + tail,
        evaluations: body.evaluations + 2,
    })
}

/// Legitimate capacity with its error estimate.
pub fn legit_capacity_quad_estimate(
    kg: &KgParams,
    gain: f64,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    let km = kg.k() + kg.m();
    let ln_norm = 2f64.ln() + km * kg.xi().ln() - lgamma_pos(kg.k()) - lgamma_pos(kg.m());
    capacity_integral(
        |y| ln_kg_power_density(kg, ln_norm, y).exp(),
        gain,
        kg.omega(),
        cfg,
    )
}

/// `E[log2(1 + gain A^2)]` for a KG-distributed `A`, by adaptive quadrature.
pub fn legit_capacity_quad(kg: &KgParams, gain: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(legit_capacity_quad_estimate(kg, gain, cfg)?.value)
}

/// Eavesdropper capacity with its error estimate.
pub fn eav_capacity_quad_estimate(
    eav: &MixtureGamma,
    gain: f64,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    capacity_integral(
        |y| mg_power_density(eav, y),
        gain,
        mg_envelope_moment(eav, 2),
        cfg,
    )
}

/// `E[log2(1 + gain X^2)]` for an MG envelope `X`, by adaptive quadrature.
pub fn eav_capacity_quad(eav: &MixtureGamma, gain: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(eav_capacity_quad_estimate(eav, gain, cfg)?.value)
}

/// Ergodic secrecy capacity with both capacities from quadrature.
pub fn esc_quadrature(scn: &Scenario, cfg: &QuadratureConfig) -> Result<EscResult> {
    let kg = scn.kg_params()?;
    let cb = legit_capacity_quad(&kg, scn.legit_gain(), cfg)?;
    let ce = eav_capacity_quad(scn.eavesdropper(), scn.eve_gain(), cfg)?;
    Ok(EscResult::new(cb, ce, Method::Quadrature))
}
