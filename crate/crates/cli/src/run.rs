//! Grid evaluation and cross-validation of the three pipelines.

use std::collections::BTreeMap;
use std::fmt::Write;

use rayon::prelude::*;
use ris_esc::capacity::{eav_capacity_cf, legit_capacity_cf, EscResult, Method, Scenario};
use ris_esc::montecarlo::{confidence_halfwidth, simulate_esc_gains, McConfig};
use ris_esc::quadrature::{esc_quadrature, QuadratureConfig};
use ris_esc::units::db_to_linear;

use crate::config::{Channels, ExperimentConfig, GridPoint, MethodName};
use crate::error::{CliError, Result};
use crate::table::{format_sig9, Row};

/// Relative tolerance between closed-form and quadrature capacities.
pub const QUAD_REL_TOL: f64 = 1e-5;
/// Confidence level of the Monte Carlo containment check.
pub const MC_LEVEL: f64 = 0.99;

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub methods: Vec<MethodName>,
    pub mc: McConfig,
    pub quad: QuadratureConfig,
    /// Multiplies the closed form's `Xi` (fault injection).
    pub corrupt_xi: Option<f64>,
}

impl RunOptions {
    pub fn from_config(cfg: &ExperimentConfig) -> Self {
        RunOptions {
            methods: cfg.methods.clone(),
            mc: cfg.monte_carlo.to_mc_config(),
            quad: QuadratureConfig::default(),
            corrupt_xi: None,
        }
    }
}

fn scenario(ch: &Channels, p: &GridPoint) -> ris_esc::Result<Scenario> {
    Scenario::new(
        p.n,
        ch.hop_tx_ris.clone(),
        ch.hop_ris_rx.clone(),
        ch.eavesdropper.clone(),
        db_to_linear(p.beta_b_db),
        db_to_linear(p.beta_e_db),
        ch.snr_tx,
    )
}

fn at(p: &GridPoint) -> impl FnOnce(ris_esc::Error) -> CliError + '_ {
    move |source| CliError::AtPoint {
        n: p.n,
        beta_b_db: p.beta_b_db,
        beta_e_db: p.beta_e_db,
        source,
    }
}

fn closed_form(
    ch: &Channels,
    p: &GridPoint,
    corrupt_xi: Option<f64>,
) -> ris_esc::Result<EscResult> {
    let scn = scenario(ch, p)?;
    let mut kg = scn.kg_params()?;
    if let Some(f) = corrupt_xi {
        kg = kg.with_perturbed_xi(f);
    }
    let cb = legit_capacity_cf(&kg, scn.legit_gain())?;
    let ce = eav_capacity_cf(scn.eavesdropper(), scn.eve_gain())?;
    Ok(EscResult::new(cb, ce, Method::ClosedForm))
}

fn monte_carlo(ch: &Channels, grid: &[GridPoint], mc: &McConfig) -> Result<Vec<EscResult>> {
    // Points sharing N share channel draws.
    let mut by_n: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, p) in grid.iter().enumerate() {
        by_n.entry(p.n).or_default().push(i);
    }
    let mut out = vec![None; grid.len()];
    for (n, idx) in by_n {
        let gains: Vec<(f64, f64)> = idx
            .iter()
            .map(|&i| {
                let p = &grid[i];
                (
                    db_to_linear(p.beta_b_db) * ch.snr_tx,
                    db_to_linear(p.beta_e_db) * ch.snr_tx,
                )
            })
            .collect();
        let res = simulate_esc_gains(
            n,
            &ch.hop_tx_ris,
            &ch.hop_ris_rx,
            &ch.eavesdropper,
            &gains,
            mc,
        )
        .map_err(at(&grid[idx[0]]))?;
        for (&i, r) in idx.iter().zip(res) {
            out[i] = Some(r);
        }
    }
    Ok(out
        .into_iter()
        .map(|r| r.expect("every point belongs to one N"))
        .collect())
}

/// Results of one method at every grid point, in grid order.
pub fn compute(
    cfg: &ExperimentConfig,
    method: MethodName,
    opts: &RunOptions,
) -> Result<Vec<EscResult>> {
    let ch = cfg.channels()?;
    let grid = cfg.grid()?;
    match method {
        MethodName::Cf => grid
            .par_iter()
            .map(|p| closed_form(&ch, p, opts.corrupt_xi).map_err(at(p)))
            .collect(),
        MethodName::Quad => grid
            .par_iter()
            .map(|p| {
                scenario(&ch, p)
                    .and_then(|s| esc_quadrature(&s, &opts.quad))
                    .map_err(at(p))
            })
            .collect(),
        MethodName::Mc => monte_carlo(&ch, &grid, &opts.mc),
    }
}

/// All requested methods on the grid. Rows come out point by point, methods
/// in the order given.
pub fn evaluate(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<Vec<Row>> {
    let mut methods = Vec::new();
    for m in &opts.methods {
        if !methods.contains(m) {
            methods.push(*m);
        }
    }
    if methods.is_empty() {
        return Err(CliError::Config("no methods selected".into()));
    }
    let grid = cfg.grid()?;
    let results = methods
        .iter()
        .map(|&m| compute(cfg, m, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(grid.len() * methods.len());
    for (i, p) in grid.iter().enumerate() {
        for (m, res) in methods.iter().zip(&results) {
            let r = res[i];
            rows.push(Row {
                n: p.n,
                beta_b_db: p.beta_b_db,
                beta_e_db: p.beta_e_db,
                method: *m,
                cb: r.cb,
                ce: r.ce,
                cs: r.cs,
                ci_halfwidth: r.ci_halfwidth,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCheck {
    pub point: GridPoint,
    pub cf: EscResult,
    pub quad: EscResult,
    pub mc: EscResult,
    pub rel_cb: f64,
    pub rel_ce: f64,
    /// `MC_LEVEL` half-width around the Monte Carlo `cs`.
    pub mc_halfwidth: f64,
}

impl PointCheck {
    pub fn quad_ok(&self) -> bool {
        self.rel_cb < QUAD_REL_TOL && self.rel_ce < QUAD_REL_TOL
    }

    pub fn mc_ok(&self) -> bool {
        (self.cf.cs - self.mc.cs).abs() <= self.mc_halfwidth
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<PointCheck>,
    pub trials: u64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.quad_ok() && c.mc_ok())
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let max_cb = self.checks.iter().map(|c| c.rel_cb).fold(0.0, f64::max);
        let max_ce = self.checks.iter().map(|c| c.rel_ce).fold(0.0, f64::max);
        let max_mc = self
            .checks
            .iter()
            .map(|c| (c.cf.cs - c.mc.cs).abs())
            .fold(0.0, f64::max);
        let widest = self
            .checks
            .iter()
            .map(|c| c.mc_halfwidth)
            .fold(0.0, f64::max);
        let _ = writeln!(s, "grid points: {}", self.checks.len());
        let _ = writeln!(
            s,
            "closed form vs quadrature: max rel err cb {} ce {} (tol {})",
            format_sig9(max_cb),
            format_sig9(max_ce),
            format_sig9(QUAD_REL_TOL)
        );
        let _ = writeln!(
            s,
            "closed form vs monte carlo ({} trials): max |dcs| {} (widest {}% CI half-width {})",
            self.trials,
            format_sig9(max_mc),
            MC_LEVEL * 100.0,
            format_sig9(widest)
        );
        for c in &self.checks {
            let p = &c.point;
            if !c.quad_ok() {
                let _ = writeln!(
                    s,
                    "FAIL quad N={} beta_B^2={} dB beta_E^2={} dB: rel err cb {} ce {}",
                    p.n,
                    format_sig9(p.beta_b_db),
                    format_sig9(p.beta_e_db),
                    format_sig9(c.rel_cb),
                    format_sig9(c.rel_ce)
                );
            }
            if !c.mc_ok() {
                let _ = writeln!(
                    s,
                    "FAIL mc N={} beta_B^2={} dB beta_E^2={} dB: cf {} vs mc {} +- {}",
                    p.n,
                    format_sig9(p.beta_b_db),
                    format_sig9(p.beta_e_db),
                    format_sig9(c.cf.cs),
                    format_sig9(c.mc.cs),
                    format_sig9(c.mc_halfwidth)
                );
            }
        }
        let _ = writeln!(s, "{}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// Closed form against quadrature and Monte Carlo at every grid point.
pub fn validate(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<ValidationReport> {
    let grid = cfg.grid()?;
    let cf = compute(cfg, MethodName::Cf, opts)?;
    let quad = compute(cfg, MethodName::Quad, opts)?;
    let mc = compute(cfg, MethodName::Mc, opts)?;
    let batches = opts.mc.effective_batches();
    let mut checks = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let mc_halfwidth = match mc[i].std_error {
            Some(se) => confidence_halfwidth(se, batches, MC_LEVEL)?,
            None => 0.0,
        };
        checks.push(PointCheck {
            point: grid[i],
            cf: cf[i],
            quad: quad[i],
            mc: mc[i],
            rel_cb: rel(cf[i].cb, quad[i].cb),
            rel_ce: rel(cf[i].ce, quad[i].ce),
            mc_halfwidth,
        });
    }
    Ok(ValidationReport {
        checks,
        trials: opts.mc.trials,
    })
}
