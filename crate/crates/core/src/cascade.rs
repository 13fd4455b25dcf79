//! Moments of the phase-aligned cascade `A = sum_{i=1..N} |h_A,i| |h_R,i|`
//! and its moment-matched KG approximation.

use crate::mg_model::{mg_envelope_moment, MixtureGamma};
use crate::{Error, Result};

/// Highest moment order needed for the KG fit.
pub const MAX_ORDER: usize = 6;

/// Discriminants within this fraction of `b_A^2` of zero count as a double root.
const DISCRIMINANT_TOL: f64 = 1e-12;

/// Even moments `E[A^2]`, `E[A^4]`, `E[A^6]` of the cascade.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeMoments {
    mu2: f64,
    mu4: f64,
    mu6: f64,
}

impl CascadeMoments {
    /// Checks positivity, Jensen (`mu4 >= mu2^2`) and Lyapunov
    /// (`mu4^2 <= mu2 mu6`), each up to rounding.
    pub fn new(mu2: f64, mu4: f64, mu6: f64) -> Result<Self> {
        let slack = 1e-12;
        let ok = mu2 > 0.0
            && mu2.is_finite()
            && mu4.is_finite()
            && mu6.is_finite()
            && mu4 >= mu2 * mu2 * (1.0 - slack)
            && mu4 * mu4 <= mu2 * mu6 * (1.0 + slack);
        if !ok {
            return Err(Error::InvalidScenario(format!(
                "moments ({mu2}, {mu4}, {mu6}) are not the even moments of a distribution"
            )));
        }
        Ok(CascadeMoments { mu2, mu4, mu6 })
    }

    pub fn mu2(&self) -> f64 {
        self.mu2
    }

    pub fn mu4(&self) -> f64 {
        self.mu4
    }

    pub fn mu6(&self) -> f64 {
        self.mu6
    }
}

/// KG (generalized-K) parameters with density
/// `4 Xi^(k+m) / (Gamma(k) Gamma(m)) x^(k+m-1) K_{k-m}(2 Xi x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KgParams {
    k: f64,
    m: f64,
    xi: f64,
    omega: f64,
}

impl KgParams {
    /// Orders the shapes so that `k >= m` and sets `Xi = sqrt(k m / Omega)`.
    pub fn new(k: f64, m: f64, omega: f64) -> Result<Self> {
        if !(k > 0.0 && m > 0.0 && omega > 0.0)
            || !(k.is_finite() && m.is_finite() && omega.is_finite())
        {
            return Err(Error::domain(
                "KgParams",
                format!("k = {k}, m = {m}, Omega = {omega} must be positive and finite"),
            ));
        }
        let (k, m) = if k >= m { (k, m) } else { (m, k) };
        Ok(KgParams {
            k,
            m,
            xi: (k * m / omega).sqrt(),
            omega,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Mean power `E[A^2]`.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Copy with `Xi` multiplied by `factor`, breaking the `Xi^2 Omega = k m`
    /// identity on purpose. Only for fault-injection runs of the validator.
    #[doc(hidden)]
    pub fn with_perturbed_xi(mut self, factor: f64) -> Self {
        self.xi *= factor;
        self
    }
}

/// `E[(X1 X2)^n] = E[X1^n] E[X2^n]` for independent envelopes.
pub fn product_pair_moment(d1: &MixtureGamma, d2: &MixtureGamma, n: u32) -> f64 {
    mg_envelope_moment(d1, n) * mg_envelope_moment(d2, n)
}

/// Binomial coefficients `C(l, t)` for `l <= MAX_ORDER`.
fn binomial(l: usize, t: usize) -> f64 {
    let mut c = 1.0;
    for i in 0..t {
        c = c * (l - i) as f64 / (i + 1) as f64;
    }
    c
}

/// Raw moments of orders `0..=6` of the sum of `n` i.i.d. copies of `chi`,
/// given the moments of `chi`, via `mu_{S_j}(l) = sum_t C(l,t) mu_{S_{j-1}}(l-t) mu_chi(t)`.
pub fn sum_moment_table(chi: &[f64; MAX_ORDER + 1], n: u32) -> [f64; MAX_ORDER + 1] {
    assert!(n >= 1, "need at least one summand");
    let mut acc = *chi;
    for _ in 1..n {
        let mut next = [0.0; MAX_ORDER + 1];
        for (l, slot) in next.iter_mut().enumerate() {
            *slot = (0..=l).map(|t| binomial(l, t) * acc[l - t] * chi[t]).sum();
        }
        acc = next;
    }
    acc
}

/// Even moments of `A` for `n` i.i.d. products whose moments are `mu_chi(order)`.
pub fn sum_moments(mu_chi: impl Fn(u32) -> f64, n: u32) -> Result<CascadeMoments> {
    if n == 0 {
        return Err(Error::InvalidScenario(
            "the surface needs at least one element".into(),
        ));
    }
    let mut chi = [0.0; MAX_ORDER + 1];
    for (order, slot) in chi.iter_mut().enumerate() {
        *slot = mu_chi(order as u32);
    }
    let mu = sum_moment_table(&chi, n);
    CascadeMoments::new(mu[2], mu[4], mu[6])
}

/// Cascade moments for `n` elements with hop distributions `hop_a`, `hop_r`.
pub fn cascade_moments(
    hop_a: &MixtureGamma,
    hop_r: &MixtureGamma,
    n: u32,
) -> Result<CascadeMoments> {
    sum_moments(|order| product_pair_moment(hop_a, hop_r, order), n)
}

/// Coefficients `(a_A, b_A, c_A)` of the quadratic whose roots are the KG shapes.
pub fn kg_quadratic(mom: &CascadeMoments) -> (f64, f64, f64) {
    let (m2, m4, m6) = (mom.mu2, mom.mu4, mom.mu6);
    let a = m6 * m2 + m2 * m2 * m4 - 2.0 * m4 * m4;
    let b = m6 * m2 - 4.0 * m4 * m4 + 3.0 * m2 * m2 * m4;
    let c = 2.0 * m2 * m2 * m4;
    (a, b, c)
}

/// Moment-matched KG parameters: `k, m = (-b_A +- sqrt(b_A^2 - 4 a_A c_A)) / (2 a_A)`,
/// `Omega = mu2`, `Xi = sqrt(k m / Omega)`.
pub fn kg_fit(mom: &CascadeMoments) -> Result<KgParams> {
    let (a, b, c) = kg_quadratic(mom);
    let mut disc = b * b - 4.0 * a * c;
    let fail = |detail: &str, disc: f64| Error::ModelFit {
        detail: detail.to_string(),
        a,
        b,
        c,
        discriminant: disc,
    };
    if disc.abs() <= DISCRIMINANT_TOL * b * b {
        disc = 0.0;
    } else if disc < 0.0 {
        return Err(fail("negative discriminant", disc));
    }
    let root = disc.sqrt();
    let k = (-b + root) / (2.0 * a);
    let m = (-b - root) / (2.0 * a);
    if !(k.is_finite() && m.is_finite() && k > 0.0 && m > 0.0) {
        return Err(fail(
            &format!("roots k = {k}, m = {m} are not positive and finite"),
            disc,
        ));
    }
    KgParams::new(k, m, mom.mu2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mg_model::{fit_rayleigh, fit_rice};
    use std::f64::consts::PI;

    #[test]
    fn double_rayleigh_products() {
        let r = fit_rayleigh(1.0).unwrap();
        assert!((product_pair_moment(&r, &r, 2) - 1.0).abs() < 1e-14);
        assert!((product_pair_moment(&r, &r, 1) - PI / 4.0).abs() < 1e-14);
    }

    #[test]
    fn single_double_rayleigh_moments() {
        let r = fit_rayleigh(1.0).unwrap();
        let m = cascade_moments(&r, &r, 1).unwrap();
        assert!((m.mu2() - 1.0).abs() < 1e-13);
        assert!((m.mu4() - 4.0).abs() < 1e-12);
        assert!((m.mu6() - 36.0).abs() < 1e-11);
    }

    #[test]
    fn two_double_rayleigh_second_moment() {
        let r = fit_rayleigh(1.0).unwrap();
        let m = cascade_moments(&r, &r, 2).unwrap();
        let want = 2.0 + 2.0 * (PI / 4.0).powi(2);
        assert!((m.mu2() - want).abs() < 1e-13);
        assert!((m.mu2() - 3.233_700_550_136_17).abs() < 1e-12);
    }

    #[test]
    fn double_rayleigh_is_exact_kg_one_one() {
        let mom = CascadeMoments::new(1.0, 4.0, 36.0).unwrap();
        assert_eq!(kg_quadratic(&mom), (8.0, -16.0, 8.0));
        let kg = kg_fit(&mom).unwrap();
        assert_eq!((kg.k(), kg.m(), kg.xi(), kg.omega()), (1.0, 1.0, 1.0, 1.0));
        let r = fit_rayleigh(1.0).unwrap();
        assert_eq!(cascade_moments(&r, &r, 1).unwrap(), mom);
    }

    #[test]
    fn rayleigh_moments_are_not_kg() {
        let mom = CascadeMoments::new(1.0, 2.0, 6.0).unwrap();
        assert_eq!(kg_quadratic(&mom), (0.0, -4.0, 4.0));
        match kg_fit(&mom) {
            Err(Error::ModelFit { a, b, c, .. }) => assert_eq!((a, b, c), (0.0, -4.0, 4.0)),
            other => panic!("expected a fit failure, got {other:?}"),
        }
    }

    #[test]
    fn negative_discriminant_is_reported() {
        // a_A = 1, b_A = -3, c_A = 4
        let mom = CascadeMoments::new(1.0, 2.0, 7.0).unwrap();
        match kg_fit(&mom) {
            Err(Error::ModelFit { discriminant, .. }) => assert_eq!(discriminant, -7.0),
            other => panic!("expected a fit failure, got {other:?}"),
        }
    }

    #[test]
    fn rice_cascade_fits() {
        let h = fit_rice(10f64.powf(0.5), 20).unwrap();
        let mom = cascade_moments(&h, &h, 4).unwrap();
        let kg = kg_fit(&mom).unwrap();
        assert!(kg.k() >= kg.m() && kg.m() > 1.0);
        assert!((kg.xi() * kg.xi() * kg.omega() / (kg.k() * kg.m()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn invalid_moment_sets() {
        assert!(CascadeMoments::new(0.0, 1.0, 1.0).is_err());
        assert!(CascadeMoments::new(1.0, 0.5, 1.0).is_err());
        assert!(CascadeMoments::new(1.0, 2.0, 3.0).is_err());
        assert!(sum_moments(|_| 1.0, 0).is_err());
    }

    #[test]
    fn kg_params_order_and_xi() {
        let kg = KgParams::new(1.5, 3.0, 2.0).unwrap();
        assert_eq!((kg.k(), kg.m()), (3.0, 1.5));
        assert_eq!(kg.xi(), (4.5f64 / 2.0).sqrt());
        assert!(KgParams::new(0.0, 1.0, 1.0).is_err());
    }
}
