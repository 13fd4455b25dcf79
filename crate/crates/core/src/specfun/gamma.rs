use num_complex::Complex64;
use std::f64::consts::PI;

use crate::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_406;

// B_{2k} / (2k (2k - 1)), k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

// Stirling's series is used once |z| reaches this radius.
const STIRLING_RADIUS: f64 = 15.0;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn stirling_real(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

fn stirling_complex(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// `ln |Gamma(x)|` for real `x`, with the sign of `Gamma(x)` returned alongside.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(Error::domain("ln_gamma", "NaN argument"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x == 1.0 || x == 2.0 {
        return Ok((0.0, 1.0));
    }
    if x < 0.5 {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        let s = (PI * x).sin();
        let (lg, _) = ln_gamma_signed(1.0 - x)?;
        let sign = if s < 0.0 { -1.0 } else { 1.0 };
        return Ok((PI.ln() - s.abs().ln() - lg, sign));
    }
    let mut shift = 0.0;
    let mut y = x;
    let mut prod = 1.0;
    while y < STIRLING_RADIUS {
        prod *= y;
        y += 1.0;
        if prod > 1e280 {
            shift += prod.ln();
            prod = 1.0;
        }
    }
    shift += prod.ln();
    Ok((stirling_real(y) - shift, 1.0))
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(
            "ln_gamma",
            format!("x = {x} must be positive"),
        ));
    }
    ln_gamma_signed(x).map(|(v, _)| v)
}

/// `ln Gamma(x)` for positive arguments the caller has already validated.
#[inline]
pub(crate) fn lgamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    ln_gamma_signed(x).map(|(v, _)| v).unwrap_or(f64::NAN)
}

/// `Gamma(x)` for positive arguments; exact factorials at small integers.
pub(crate) fn gamma_pos(x: f64) -> f64 {
    if x == x.floor() && x <= 23.0 {
        // (n-1)! is exactly representable up to 22!
        return (1..x as u32).fold(1.0, |acc, k| acc * k as f64);
    }
    lgamma_pos(x).exp()
}

/// `ln sin(pi z)`, stable for large `|Im z|`. Determined up to a multiple of `2 pi i`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    if z.im > 0.0 {
        // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
        let e = (i * z * (2.0 * PI)).exp();
        -i * z * PI + (Complex64::new(1.0, 0.0) - e).ln() - (2.0 * i).ln()
    } else {
        ln_sin_pi(z.conj()).conj()
    }
}

/// Complex log-gamma.
///
/// For `Re z >= 1/2` the result is the principal branch (continuous from the
/// positive real axis). Left of that line it is obtained by reflection and is
/// exact only modulo `2 pi i`, which is all that `exp(ln_gamma_complex(z))`
/// needs.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(
            "ln_gamma_complex",
            format!("non-finite argument {z}"),
        ));
    }
    if z.im == 0.0 && is_nonpositive_integer(z.re) {
        return Err(Error::Pole(z.re));
    }
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        let rest = ln_gamma_complex(one - z)?;
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - rest);
    }
    let mut y = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while y.norm() < STIRLING_RADIUS {
        shift += y.ln();
        y += 1.0;
    }
    Ok(stirling_complex(y) - shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_integers_are_exact_factorials() {
        assert_eq!(gamma_pos(1.0), 1.0);
        assert_eq!(gamma_pos(4.0), 6.0);
        assert_eq!(gamma_pos(11.0), 3_628_800.0);
        assert_eq!(gamma_pos(23.0), 1_124_000_727_777_607_680_000.0);
        assert!((gamma_pos(2.5) / (0.75 * PI.sqrt()) - 1.0).abs() < 1e-14);
        assert!((gamma_pos(30.0) / 8.841_761_993_739_701e30 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn anchors() {
        assert!(ln_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(ln_gamma(2.0).unwrap().abs() < 1e-15);
        let half = ln_gamma(0.5).unwrap();
        assert!((half - 0.572_364_942_924_700_1).abs() < 1e-15);
        // ln(19!) = ln Gamma(20)
        let f: f64 = (1..20).map(|k| (k as f64).ln()).sum();
        assert!((ln_gamma(20.0).unwrap() - f).abs() < 1e-13 * f);
    }

    #[test]
    fn large_argument() {
        // ln Gamma(100.5), high-precision reference
        let v = ln_gamma(100.5).unwrap();
        assert!((v / 361.435_540_467_777_6 - 1.0).abs() < 1e-14, "{v}");
    }

    #[test]
    fn negative_reals() {
        let (v, s) = ln_gamma_signed(-0.5).unwrap();
        // Gamma(-1/2) = -2 sqrt(pi)
        assert_eq!(s, -1.0);
        assert!((v - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
        let (_, s2) = ln_gamma_signed(-1.5).unwrap();
        assert_eq!(s2, 1.0);
        assert_eq!(ln_gamma_signed(-3.0), Err(Error::Pole(-3.0)));
        assert!(ln_gamma(0.0).is_err());
    }

    #[test]
    fn complex_reference_values() {
        // mpmath.loggamma at 30 digits
        let cases = [
            (
                (1.0, 1.0),
                (-0.650_923_199_301_856_3, -0.301_640_320_467_533_2),
            ),
            ((0.5, 20.0), (-30.496_988_002_693_26, 39.916_729_108_473_33)),
            (
                (3.25, -7.5),
                (-5.263_567_750_663_137, -11.442_925_334_461_38),
            ),
        ];
        for ((x, y), (re, im)) in cases {
            let v = ln_gamma_complex(Complex64::new(x, y)).unwrap();
            let want = Complex64::new(re, im);
            assert!(
                (v - want).norm() < 1e-13 * want.norm(),
                "z={x}+{y}i: {v} vs {want}"
            );
        }
    }

    #[test]
    fn complex_matches_real_on_axis() {
        for x in [0.7, 1.3, 4.9, 17.0, 63.2] {
            let c = ln_gamma_complex(Complex64::new(x, 0.0)).unwrap();
            assert!((c.re - ln_gamma(x).unwrap()).abs() < 1e-13 * (1.0 + c.re.abs()));
            assert!(c.im.abs() < 1e-15);
        }
    }

    #[test]
    fn reflection_exponentiates_correctly() {
        // Gamma(-0.5 + 2i) via recurrence Gamma(z) = Gamma(z+1)/z
        let z = Complex64::new(-0.5, 2.0);
        let lhs = ln_gamma_complex(z).unwrap().exp();
        let rhs = ln_gamma_complex(z + 1.0).unwrap().exp() / z;
        assert!((lhs - rhs).norm() < 1e-13 * rhs.norm());
        // far off the axis, where sin(pi z) alone would overflow
        let z = Complex64::new(-3.3, 300.0);
        let lhs = ln_gamma_complex(z).unwrap();
        let rhs = ln_gamma_complex(z + 1.0).unwrap() - z.ln();
        assert!((lhs.re - rhs.re).abs() < 1e-10 * rhs.re.abs());
        let dphase = (lhs.im - rhs.im) / (2.0 * PI);
        assert!((dphase - dphase.round()).abs() < 1e-10);
    }
}
