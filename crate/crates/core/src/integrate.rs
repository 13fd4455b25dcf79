//! Globally adaptive Gauss-Kronrod (G10/K21) integration on finite intervals.
//!
//! Intervals are bisected in order of decreasing error estimate until the
//! summed estimate drops below `max(abs_tol, rel_tol * |I|)`. The local error
//! estimate follows QUADPACK's `qk21` scaling.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    pub evaluations: usize,
}

/// Tolerances and subdivision budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_subdivisions: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-12,
            rel: 1e-10,
            max_subdivisions: 500,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && error < floor {
        error = floor;
    }
    Segment { a, b, value, error }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Integral> {
    integrate_pieces(f, &[a, b], tol)
}

/// Integrates `f` over consecutive intervals `[p0, p1], [p1, p2], ...` with
/// a single global error budget. Breakpoints should sit on kinks or peaks.
pub fn integrate_pieces<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    tol: Tolerance,
) -> Result<Integral> {
    if points.len() < 2 {
        return Err(Error::domain("integrate", "need at least two breakpoints"));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::domain("integrate", "breakpoints must be finite"));
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        heap.push(kronrod21(&f, w[0], w[1]));
        evaluations += 21;
    }
    let mut subdivisions = heap.len();
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if !value.is_finite() {
            return Err(Error::convergence(
                "adaptive quadrature",
                format!(
                    "non-finite integrand on [{}, {}]",
                    points[0],
                    points[points.len() - 1]
                ),
            ));
        }
        if error <= tol.abs.max(tol.rel * value.abs()) {
            return Ok(Integral {
                value,
                error,
                evaluations,
            });
        }
        if subdivisions >= tol.max_subdivisions {
            return Err(Error::convergence(
                "adaptive quadrature",
                format!("{subdivisions} subdivisions, estimate {value:e} with error {error:e}"),
            ));
        }
        let Some(worst) = heap.pop() else {
            return Ok(Integral {
                value,
                error,
                evaluations,
            });
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine precision; accept what we have
            heap.push(Segment {
                error: 0.0,
                ..worst
            });
            continue;
        }
        heap.push(kronrod21(&f, worst.a, mid));
        heap.push(kronrod21(&f, mid, worst.b));
        evaluations += 42;
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, Tolerance::default()).unwrap();
        assert!((r.value - (64.0 / 6.0 - 1.0 / 6.0 - 9.0)).abs() < 1e-13);
    }

    #[test]
    fn log_singularity() {
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, Tolerance::default()).unwrap();
        assert!((r.value + 1.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn oscillatory_with_pieces() {
        let pts: Vec<f64> = (0..=10).map(|i| i as f64 * std::f64::consts::PI).collect();
        let r = integrate_pieces(
            |x: f64| x.sin() * (-0.1 * x).exp(),
            &pts,
            Tolerance::default(),
        )
        .unwrap();
        let exact = (1.0 - (-std::f64::consts::PI).exp()) / 1.01;
        assert!((r.value - exact).abs() < 1e-11);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tol = Tolerance {
            abs: 0.0,
            rel: 1e-15,
            max_subdivisions: 3,
        };
        let err = integrate(|x: f64| (1.0 / x).sin(), 1e-3, 1.0, tol).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }

    #[test]
    fn rejects_bad_breakpoints() {
        assert!(integrate_pieces(|x| x, &[0.0], Tolerance::default()).is_err());
        assert!(integrate(|x| x, 0.0, f64::INFINITY, Tolerance::default()).is_err());
    }
}
