//! Modified Bessel function of the second kind for real order.
//!
//! `K_mu` and `K_{mu+1}` with `|mu| <= 1/2` come from Temme's series for
//! `x < 2` and Steed's continued fraction otherwise; forward recurrence in
//! the order then reaches `nu = mu + n`. The recurrence is carried in
//! rescaled form so that large orders and large arguments stay in range.

use std::f64::consts::PI;

use crate::{Error, Result};

const EPS: f64 = 1e-17;
const MAX_ITER: usize = 100_000;

// Taylor coefficients of 1/Gamma(z) = sum_{k>=1} C[k-1] z^k.
const INV_GAMMA: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// Temme's auxiliary functions for `|mu| <= 1/2`:
/// `gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)`,
/// `gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2`,
/// and `1/Gamma(1+mu)`, `1/Gamma(1-mu)`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Gamma(1+mu) = sum_{j>=0} C[j] mu^j
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    let mut p = 1.0;
    for j in 0..13 {
        gam2 += INV_GAMMA[2 * j] * p;
        gam1 -= INV_GAMMA[2 * j + 1] * p;
        p *= mu2;
    }
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

/// Returns `(ln K_mu(x), K_{mu+1}(x) / K_mu(x))` for `|mu| <= 1/2`.
fn k_pair(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mu2 = mu * mu;
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut i = 1usize;
        loop {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
            i += 1;
            if i > MAX_ITER {
                return Err(Error::convergence(
                    "bessel_k series",
                    format!("mu={mu}, x={x}"),
                ));
            }
        }
        let k1 = sum1 * 2.0 / x;
        Ok((sum.ln(), k1 / sum))
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut i = 2usize;
        loop {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
            i += 1;
            if i > MAX_ITER {
                return Err(Error::convergence(
                    "bessel_k continued fraction",
                    format!("mu={mu}, x={x}"),
                ));
            }
        }
        let h = a1 * h;
        let ln_kmu = 0.5 * (PI / (2.0 * x)).ln() - x - s.ln();
        Ok((ln_kmu, (mu + x + 0.5 - h) / x))
    }
}

/// `ln K_nu(x)` for real `nu` and `x > 0`.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "bessel_k",
            format!("x = {x} must be positive and finite"),
        ));
    }
    if !nu.is_finite() {
        return Err(Error::domain(
            "bessel_k",
            format!("order {nu} must be finite"),
        ));
    }
    let nu = nu.abs();
    let n = (nu + 0.5).floor();
    let mu = nu - n;
    let (ln_kmu, ratio) = k_pair(mu, x)?;
    if n == 0.0 {
        return Ok(ln_kmu);
    }
    // K_{mu+i+1} = 2 (mu+i)/x K_{mu+i} + K_{mu+i-1}, normalised by K_mu
    let mut log_scale = ln_kmu;
    let mut prev = 1.0;
    let mut cur = ratio;
    let two_over_x = 2.0 / x;
    let steps = n as usize;
    for i in 1..steps {
        let next = (mu + i as f64) * two_over_x * cur + prev;
        prev = cur;
        cur = next;
        if cur > 1e250 {
            log_scale += cur.ln();
            prev /= cur;
            cur = 1.0;
        }
    }
    Ok(log_scale + cur.ln())
}

/// `K_nu(x)`; overflows to infinity and underflows to zero like any `f64`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    ln_bessel_k(nu, x).map(f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_closed_form() {
        let v = bessel_k(0.5, 1.0).unwrap();
        let want = (PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!((v / want - 1.0).abs() < 1e-14, "{v} vs {want}");
        // K_{3/2}(x) = sqrt(pi/2x) e^{-x} (1 + 1/x)
        for x in [0.3, 1.7, 2.5, 9.0] {
            let want = (PI / (2.0 * x)).sqrt() * (-x).exp() * (1.0 + 1.0 / x);
            let v = bessel_k(1.5, x).unwrap();
            assert!((v / want - 1.0).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn reference_values() {
        // mpmath.besselk at 30 digits
        let cases = [
            (0.0, 2.0, 0.113_893_872_749_533_44),
            (0.0, 0.01, 4.721_244_730_161_095),
            (0.3, 0.5, 0.976_474_124_381_787_9),
            (1.0, 1.0, 0.601_907_230_197_234_6),
            (2.7, 3.3, 0.063_422_021_763_391_41),
            (10.5, 0.7, 34_276_484_322.669_632),
        ];
        for (nu, x, want) in cases {
            let v = bessel_k(nu, x).unwrap();
            assert!(
                (v / want - 1.0).abs() < 1e-12,
                "K_{nu}({x}) = {v}, want {want}"
            );
        }
    }

    #[test]
    fn log_scale_extremes() {
        let cases = [
            (40.25, 5.0, 69.818_876_307_428_34),
            (155.3, 20.0, 267.709_668_505_315_54),
            (0.2, 80.0, -81.966_526_365_689_15),
            (3.0, 500.0, -502.872_771_454_486_95),
            (100.0, 1e-3, 1_118.531_304_140_698_5),
        ];
        for (nu, x, want) in cases {
            let v = ln_bessel_k(nu, x).unwrap();
            assert!(
                (v - want).abs() < 1e-12 * want.abs(),
                "ln K_{nu}({x}) = {v}, want {want}"
            );
        }
    }

    #[test]
    fn symmetric_in_order() {
        for nu in [0.1, 0.5, 1.3, 7.8, 33.0] {
            for x in [0.05, 1.0, 2.0, 13.0] {
                assert_eq!(bessel_k(nu, x).unwrap(), bessel_k(-nu, x).unwrap());
            }
        }
    }

    #[test]
    fn branch_seam_is_continuous() {
        for nu in [0.0, 0.45, 2.2] {
            let lo = bessel_k(nu, 2.0 - 1e-12).unwrap();
            let hi = bessel_k(nu, 2.0).unwrap();
            assert!((lo / hi - 1.0).abs() < 1e-11, "nu={nu}");
        }
    }

    #[test]
    fn domain() {
        assert!(bessel_k(0.0, 0.0).is_err());
        assert!(bessel_k(1.0, -1.0).is_err());
        assert!(bessel_k(f64::NAN, 1.0).is_err());
    }
}
