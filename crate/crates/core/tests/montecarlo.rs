use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ris_esc::capacity::{ergodic_secrecy_capacity, Scenario};
use ris_esc::mg_model::{fit_nakagami, fit_rice, mg_cdf, MixtureGamma};
use ris_esc::montecarlo::{confidence_halfwidth, simulate_esc, ChannelSource, McConfig, MgSampler};

fn hop() -> MixtureGamma {
    fit_rice(10f64.powf(0.5), 20).unwrap()
}

fn scenario(n: u32, e_db: f64) -> Scenario {
    let eve = fit_nakagami(2.0).unwrap();
    Scenario::new(n, hop(), hop(), eve, 1.0, 10f64.powf(e_db / 10.0), 1.0).unwrap()
}

#[test]
fn sampled_rice_fit_passes_ks_test() {
    let d = hop();
    let sampler = MgSampler::new(&d).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 1_000_000;
    let mut xs: Vec<f64> = (0..n).map(|_| sampler.sample(&mut rng)).collect();
    xs.sort_by(f64::total_cmp);
    let mut ks: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = mg_cdf(&d, x).unwrap();
        let lo = i as f64 / n as f64;
        let hi = (i + 1) as f64 / n as f64;
        ks = ks.max((f - lo).abs()).max((hi - f).abs());
    }
    assert!(ks < 0.002, "KS statistic {ks}");
}

#[test]
fn closed_form_inside_small_run_interval() {
    for (n, e) in [(4, -5.0), (10, 5.0)] {
        let scn = scenario(n, e);
        let cfg = McConfig::new(200_000, 7);
        let mc = simulate_esc(&scn, &cfg).unwrap();
        let cf = ergodic_secrecy_capacity(&scn).unwrap();
        let h99 =
            confidence_halfwidth(mc.std_error.unwrap(), cfg.effective_batches(), 0.99).unwrap();
        assert!(
            (cf.cs - mc.cs).abs() <= h99,
            "N={n}: cf {} mc {} +- {h99}",
            cf.cs,
            mc.cs
        );
    }
}

#[test]
fn mixture_and_exact_sources_agree() {
    let scn = scenario(8, 0.0);
    let mg = simulate_esc(&scn, &McConfig::new(200_000, 3)).unwrap();
    let exact = simulate_esc(
        &scn,
        &McConfig::new(200_000, 3).with_source(ChannelSource::ExactRiceNakagami),
    )
    .unwrap();
    assert!((mg.cs - exact.cs).abs() < 0.02, "{} vs {}", mg.cs, exact.cs);
}

#[test]
fn fewer_trials_than_batches() {
    let scn = scenario(2, 0.0);
    let res = simulate_esc(&scn, &McConfig::new(5, 1)).unwrap();
    assert!(res.cs.is_finite() && res.ci_halfwidth.is_some());
    let one = simulate_esc(&scn, &McConfig::new(1, 1)).unwrap();
    assert!(one.ci_halfwidth.is_none());
}
