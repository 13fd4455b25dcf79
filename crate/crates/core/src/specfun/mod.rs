//! Special functions used by the closed forms and the oracles.

mod bessel;
mod gamma;
mod incgamma;
mod meijer;

pub use bessel::{bessel_k, ln_bessel_k};
pub(crate) use gamma::{gamma_pos, lgamma_pos};
pub use gamma::{ln_gamma, ln_gamma_complex, ln_gamma_signed};
pub use incgamma::{gamma_p, gamma_q, upper_inc_gamma};
pub use meijer::{choose_abscissa, meijer_g, meijer_g_at, meijer_g_scaled, MeijerGSpec};
