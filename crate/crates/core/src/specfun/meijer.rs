//! Meijer G-function of a positive real argument by numerical Mellin-Barnes
//! integration along a vertical contour.
//!
//! ```text
//!              1    /  prod_{j<=m} Gamma(b_j - s) prod_{j<=n} Gamma(1 - a_j + s)
//! G(z) =  -------- |   ------------------------------------------------------------ z^s ds
//!           2 pi i  /  prod_{j>m} Gamma(1 - b_j + s) prod_{j>n} Gamma(a_j - s)
//! ```
//!
//! The contour `Re s = sigma` must leave the poles of `Gamma(b_j - s)`
//! (`s = b_j + k`) on its right and those of `Gamma(1 - a_j + s)`
//! (`s = a_j - 1 - k`) on its left. Because the parameters are real the
//! integrand is conjugate-symmetric in `Im s`, so only the upper half-line is
//! integrated. Within the admissible strip, `sigma` is placed where the
//! integrand is smallest on the real axis, which is the saddle point of the
//! vertical cut and keeps cancellation along the contour small.
//!
//! Supported class: `delta = m + n - (p + q)/2 > 0`, in which case the
//! integrand decays like `exp(-delta pi |Im s|)` for every `z > 0`.
//! Repeated `b` parameters (double poles) need no special treatment since the
//! contour never touches a pole.

use num_complex::Complex64;
use std::cell::Cell;
use std::f64::consts::PI;

use super::gamma::{ln_gamma_complex, ln_gamma_signed};
use crate::integrate::{integrate, Tolerance};
use crate::{Error, Result};

/// Parameters `G^{m,n}_{p,q}(. | a_1..a_p; b_1..b_q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerGSpec {
    m: usize,
    n: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl MeijerGSpec {
    pub fn new(m: usize, n: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if m > b.len() || n > a.len() {
            return Err(Error::domain(
                "meijer_g",
                format!(
                    "need m <= q and n <= p, got m={m}, n={n}, p={}, q={}",
                    a.len(),
                    b.len()
                ),
            ));
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::domain("meijer_g", "parameters must be finite"));
        }
        Ok(MeijerGSpec { m, n, a, b })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `m + n - (p + q)/2`; the contour integral converges for `z > 0` iff positive.
    pub fn delta(&self) -> f64 {
        (self.m + self.n) as f64 - 0.5 * (self.p() + self.q()) as f64
    }

    /// Open interval of admissible contour abscissae. Either end may be infinite.
    pub fn strip(&self) -> Result<(f64, f64)> {
        let right = self.b[..self.m]
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let left = self.a[..self.n]
            .iter()
            .map(|a| a - 1.0)
            .fold(f64::NEG_INFINITY, f64::max);
        if left < right {
            Ok((left, right))
        } else {
            Err(Error::Contour { left, right })
        }
    }

    /// Log of the integrand kernel at `s` (without `z^s`), modulo `2 pi i`.
    /// `None` when a denominator gamma sits on a pole, i.e. the kernel vanishes.
    fn ln_kernel(&self, s: Complex64) -> Option<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &b) in self.b.iter().enumerate() {
            if j < self.m {
                acc += ln_gamma_complex(b - s).ok()?;
            } else {
                acc -= ln_gamma_complex(one - b + s).ok()?;
            }
        }
        for (j, &a) in self.a.iter().enumerate() {
            if j < self.n {
                acc += ln_gamma_complex(one - a + s).ok()?;
            } else {
                acc -= ln_gamma_complex(a - s).ok()?;
            }
        }
        Some(acc)
    }

    /// `ln |kernel(sigma)|` on the real axis; `+inf` where the kernel vanishes
    /// so the abscissa search steers clear of zeros.
    fn ln_abs_kernel_real(&self, sigma: f64) -> f64 {
        let mut acc = 0.0;
        let mut add = |x: f64, sign: f64| -> bool {
            match ln_gamma_signed(x) {
                Ok((v, _)) => {
                    acc += sign * v;
                    true
                }
                Err(_) => false,
            }
        };
        for (j, &b) in self.b.iter().enumerate() {
            let ok = if j < self.m {
                add(b - sigma, 1.0)
            } else {
                add(1.0 - b + sigma, -1.0)
            };
            if !ok {
                return f64::INFINITY;
            }
        }
        for (j, &a) in self.a.iter().enumerate() {
            let ok = if j < self.n {
                add(1.0 - a + sigma, 1.0)
            } else {
                add(a - sigma, -1.0)
            };
            if !ok {
                return f64::INFINITY;
            }
        }
        acc
    }
}

const PANEL_WIDTH: f64 = 1.0;
const MAX_PANELS: usize = 200_000;
const TAIL_RATIO: f64 = 1e-16;
const TAIL_PANELS: usize = 3;
const TARGET_REL: f64 = 1e-8;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Picks the contour abscissa: the minimiser of `ln|kernel(sigma) z^sigma|`
/// inside the strip, kept a small distance away from the pole families.
pub fn choose_abscissa(spec: &MeijerGSpec, z: f64) -> Result<f64> {
    let (left, right) = spec.strip()?;
    let ln_z = z.ln();
    let objective = |s: f64| spec.ln_abs_kernel_real(s) + s * ln_z;
    let (mut lo, mut hi) = match (left.is_finite(), right.is_finite()) {
        (true, true) => {
            let margin = 0.02 * (right - left).min(1.0);
            (left + margin, right - margin)
        }
        (true, false) => {
            let start = left + 0.02;
            (start, expand(&objective, start, 1.0))
        }
        (false, true) => {
            let start = right - 0.02;
            (expand(&objective, start, -1.0), start)
        }
        (false, false) => {
            // no poles at all; search around the origin
            (expand(&objective, 0.0, -1.0), expand(&objective, 0.0, 1.0))
        }
    };
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    // golden-section search
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    for _ in 0..200 {
        if (hi - lo).abs() < 1e-6 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = objective(x2);
        }
    }
    Ok(0.5 * (lo + hi))
}

// Walks from `start` in direction `dir` with doubling steps until the
// objective starts increasing; returns the far end of the bracket.
fn expand(objective: &impl Fn(f64) -> f64, start: f64, dir: f64) -> f64 {
    let mut step = 1.0;
    let mut prev = objective(start);
    let mut x = start;
    while step < 1e5 {
        let next = start + dir * step;
        let f = objective(next);
        if f > prev && x != start {
            return next;
        }
        prev = f;
        x = next;
        step *= 2.0;
    }
    x
}

/// `G^{m,n}_{p,q}(z | a; b)` for `z > 0`.
pub fn meijer_g(spec: &MeijerGSpec, z: f64) -> Result<f64> {
    meijer_g_scaled(spec, z, 0.0)
}

/// `exp(ln_scale) * G(z)`, with the scale folded into the integrand so that
/// huge prefactors and huge G values can cancel without overflow.
pub fn meijer_g_scaled(spec: &MeijerGSpec, z: f64, ln_scale: f64) -> Result<f64> {
    check_class(spec, z)?;
    let sigma = choose_abscissa(spec, z)?;
    meijer_g_at(spec, z, sigma, ln_scale)
}

fn check_class(spec: &MeijerGSpec, z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(
            "meijer_g",
            format!("z = {z} must be positive and finite"),
        ));
    }
    if spec.delta() <= 0.0 {
        return Err(Error::domain(
            "meijer_g",
            format!("m + n - (p + q)/2 = {} must be positive", spec.delta()),
        ));
    }
    Ok(())
}

/// Contour integral at a caller-chosen abscissa `sigma`, which must lie
/// strictly inside [`MeijerGSpec::strip`].
pub fn meijer_g_at(spec: &MeijerGSpec, z: f64, sigma: f64, ln_scale: f64) -> Result<f64> {
    check_class(spec, z)?;
    let (left, right) = spec.strip()?;
    if !(sigma > left && sigma < right) {
        return Err(Error::domain(
            "meijer_g",
            format!("abscissa {sigma} outside the strip ({left}, {right})"),
        ));
    }
    let ln_z = z.ln();
    let integrand = |t: f64| -> f64 {
        let s = Complex64::new(sigma, t);
        match spec.ln_kernel(s) {
            Some(l) => {
                let e = l + s * ln_z + ln_scale;
                if e.re < -745.0 {
                    0.0
                } else {
                    e.re.exp() * e.im.cos()
                }
            }
            None => 0.0,
        }
    };
    let peak = Cell::new(integrand(0.0).abs());
    let tracked = |t: f64| {
        let v = integrand(t);
        if !v.is_finite() {
            return v;
        }
        let a = v.abs();
        if a > peak.get() {
            peak.set(a);
        }
        v
    };

    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut quiet = 0;
    for k in 0..MAX_PANELS {
        let t0 = k as f64 * PANEL_WIDTH;
        let t1 = t0 + PANEL_WIDTH;
        let before = peak.get();
        let panel_peak = Cell::new(0.0f64);
        let f = |t: f64| {
            let v = tracked(t);
            panel_peak.set(panel_peak.get().max(v.abs()));
            v
        };
        // Kronrod error estimates bottom out near 50 eps * int |f|, so the
        // absolute target stays a little above that; the final relative check
        // below catches heavy cancellation.
        let tol = Tolerance {
            abs: 1e-13 * before.max(f64::MIN_POSITIVE) * PANEL_WIDTH,
            rel: 1e-13,
            max_subdivisions: 400,
        };
        let r = integrate(f, t0, t1, tol)?;
        total += r.value;
        total_err += r.error;
        if !total.is_finite() {
            return Err(Error::convergence(
                "meijer_g contour",
                format!("integrand overflow near Im s = {t0}"),
            ));
        }
        // `<=` so that an integrand that underflows everywhere ends at once
        if panel_peak.get() <= TAIL_RATIO * peak.get() {
            quiet += 1;
            if quiet >= TAIL_PANELS {
                let value = total / PI;
                let err = total_err / PI;
                if err > TARGET_REL * value.abs() && err > 1e-300 {
                    return Err(Error::convergence(
                        "meijer_g contour",
                        format!("estimate {value:e} carries error {err:e}"),
                    ));
                }
                return Ok(value);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::convergence(
        "meijer_g contour",
        format!("tail still above {TAIL_RATIO:e} of the peak after {MAX_PANELS} panels"),
    ))
}
