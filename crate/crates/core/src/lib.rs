//! Ergodic secrecy capacity of RIS-aided links under mixture-Gamma fading.
//!
//! The crate evaluates the closed-form ergodic secrecy capacity of a link in
//! which Alice reaches Bob only through an `N`-element reconfigurable
//! intelligent surface while Eve listens on a direct link. All three channel
//! envelopes are mixture-Gamma (MG) random variables. The cascade
//! `A = sum_i |h_A,i| |h_R,i|` is approximated by a KG (generalized-K)
//! variable whose second, fourth and sixth moments match those of `A`.
//!
//! Two independent oracles check the closed form:
//!
//! * [`quadrature`] integrates the capacity integrals directly on the real
//!   line, bypassing the Meijer G-function;
//! * [`montecarlo`] samples the exact envelope product-sum and estimates the
//!   capacities with batch-means confidence intervals.
//!
//! ```
//! use ris_esc::{capacity::Scenario, mg_model};
//!
//! let hop = mg_model::fit_rice(10f64.powf(0.5), 20).unwrap();
//! let eve = mg_model::fit_nakagami(2.0).unwrap();
//! let scn = Scenario::new(4, hop.clone(), hop, eve, 1.0, 10f64.powf(-0.5), 1.0).unwrap();
//! let res = ris_esc::capacity::ergodic_secrecy_capacity(&scn).unwrap();
//! assert!((res.cs - 3.328).abs() < 0.01);
//! ```

// `!(x > 0.0)` rejects NaN along with nonpositive values; quadrature nodes
// are tabulated to full published precision.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod capacity;
pub mod cascade;
mod error;
pub mod integrate;
pub mod mg_model;
pub mod montecarlo;
pub mod quadrature;
pub mod specfun;
pub mod units;

pub use error::{Error, Result};
