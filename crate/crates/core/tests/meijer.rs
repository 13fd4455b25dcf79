use ris_esc::integrate::{integrate, Tolerance};
use ris_esc::specfun::{choose_abscissa, meijer_g, meijer_g_at, meijer_g_scaled, MeijerGSpec};

const REL: f64 = 1e-7;

fn log_grid() -> impl Iterator<Item = f64> {
    (0..=60).map(|i| 10f64.powf(-3.0 + 0.1 * f64::from(i)))
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt
fn bessel_k_oracle(nu: f64, x: f64) -> f64 {
    let t_max = (800.0 / x).max(1.0).acosh() + 1.0;
    let tol = Tolerance {
        abs: 0.0,
        rel: 1e-13,
        max_subdivisions: 2000,
    };
    integrate(
        |t| (-x * t.cosh() + nu * t).exp() * 0.5 * (1.0 + (-2.0 * nu * t).exp()),
        0.0,
        t_max,
        tol,
    )
    .unwrap()
    .value
}

#[test]
fn exponential_identity() {
    // G^{1,0}_{0,1}(z | - ; 0) = exp(-z); scaled by e^z so large z stays representable
    let spec = MeijerGSpec::new(1, 0, vec![], vec![0.0]).unwrap();
    for z in log_grid() {
        let v = meijer_g_scaled(&spec, z, z).unwrap();
        assert!(rel_err(v, 1.0) < REL, "z={z}: {v}");
    }
}

#[test]
fn logarithm_identities() {
    let ln1p = MeijerGSpec::new(1, 2, vec![1.0, 1.0], vec![1.0, 0.0]).unwrap();
    let ln1p_over_z = MeijerGSpec::new(1, 2, vec![0.0, 0.0], vec![0.0, -1.0]).unwrap();
    for z in log_grid() {
        let v = meijer_g(&ln1p, z).unwrap();
        assert!(rel_err(v, z.ln_1p()) < REL, "z={z}: {v}");
        let v = meijer_g(&ln1p_over_z, z).unwrap();
        assert!(rel_err(v, z.ln_1p() / z) < REL, "z={z}: {v}");
    }
}

#[test]
fn bessel_identity() {
    // G^{2,0}_{0,2}(z | - ; nu/2, -nu/2) = 2 K_nu(2 sqrt z)
    for nu in [0.0, 0.5, 1.3, 4.0, 11.7] {
        let spec = MeijerGSpec::new(2, 0, vec![], vec![0.5 * nu, -0.5 * nu]).unwrap();
        for z in log_grid().step_by(3) {
            let want = 2.0 * bessel_k_oracle(nu, 2.0 * z.sqrt());
            let v = meijer_g(&spec, z).unwrap();
            assert!(rel_err(v, want) < REL, "nu={nu} z={z}: {v} vs {want}");
        }
    }
}

#[test]
fn contour_position_does_not_matter() {
    // Far from the saddle the contour integral cancels heavily (the evaluator
    // reports that as a convergence error), so compare nearby abscissae.
    let specs = [
        MeijerGSpec::new(1, 2, vec![1.0, 1.0], vec![1.0, 0.0]).unwrap(),
        MeijerGSpec::new(2, 0, vec![], vec![0.65, -0.65]).unwrap(),
        MeijerGSpec::new(1, 0, vec![], vec![0.0]).unwrap(),
    ];
    for (i, spec) in specs.iter().enumerate() {
        let (left, right) = spec.strip().unwrap();
        // exp(-1000) underflows unscaled
        let scale = |z: f64| if i == 2 { z } else { 0.0 };
        for z in [1e-3, 0.2, 1.0, 7.5, 1e3] {
            let s0 = choose_abscissa(spec, z).unwrap();
            let s1 = if s0 + 0.3 < right {
                s0 + 0.3
            } else {
                0.5 * (s0 + left.max(s0 - 1.0))
            };
            let a = meijer_g_at(spec, z, s0, scale(z)).unwrap();
            let b = meijer_g_at(spec, z, s1, scale(z)).unwrap();
            assert!(rel_err(a, b) < 1e-8, "z={z} sigma {s0} vs {s1}: {a} vs {b}");
        }
    }
}

#[test]
fn underflowing_value_is_zero() {
    let spec = MeijerGSpec::new(1, 0, vec![], vec![0.0]).unwrap();
    assert_eq!(meijer_g(&spec, 1e3).unwrap(), 0.0);
}

#[test]
fn abscissa_outside_the_strip_is_rejected() {
    let ln1p = MeijerGSpec::new(1, 2, vec![1.0, 1.0], vec![1.0, 0.0]).unwrap();
    assert!(meijer_g_at(&ln1p, 1.0, 1.5, 0.0).is_err());
    assert!(meijer_g(&ln1p, -1.0).is_err());
}
