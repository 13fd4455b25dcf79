//! Experiment harness for RIS secrecy-capacity sweeps: TOML configs, CSV
//! result tables and SVG charts.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
mod error;
pub mod plot;
pub mod run;
pub mod table;

pub use error::{CliError, Result};

use ris_esc::cascade::{cascade_moments, kg_fit};

use config::ExperimentConfig;
use run::{evaluate, RunOptions};
use table::{format_sig9, write_table};

/// Result table of every requested method on the config's grid.
pub fn esc_table(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<String> {
    write_table(&evaluate(cfg, opts)?)
}

/// Cascade moments and KG fit for each element count of the sweep.
pub fn fit_table(cfg: &ExperimentConfig) -> Result<String> {
    let ch = cfg.channels()?;
    let mut ns = cfg.sweep.elements.values()?;
    ns.dedup();
    let mut out = String::from("N,mu2,mu4,mu6,k,m,xi,omega\n");
    for n in ns {
        let mom = cascade_moments(&ch.hop_tx_ris, &ch.hop_ris_rx, n)?;
        let kg = kg_fit(&mom)?;
        let cols = [
            mom.mu2(),
            mom.mu4(),
            mom.mu6(),
            kg.k(),
            kg.m(),
            kg.xi(),
            kg.omega(),
        ];
        let cols: Vec<String> = cols.iter().map(|&v| format_sig9(v)).collect();
        out.push_str(&format!("{n},{}\n", cols.join(",")));
    }
    Ok(out)
}
