#![no_main]

use libfuzzer_sys::fuzz_target;
use ris_esc::mg_model::{mg_cdf, mg_envelope_moment, mg_pdf, MgTerm, MixtureGamma};

// Layout: rate, then (a, b) pairs, then probe points; little-endian f64s.
fuzz_target!(|data: &[u8]| {
    let vals: Vec<f64> = data
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let Some((&rate, rest)) = vals.split_first() else {
        return;
    };
    let pairs = (rest.len() / 2).min(64);
    let terms = rest[..2 * pairs]
        .chunks_exact(2)
        .map(|p| MgTerm { a: p[0], b: p[1] })
        .collect();
    let Ok(dist) = MixtureGamma::new(terms, rate) else {
        return;
    };
    for &x in &rest[2 * pairs..] {
        if let Ok(p) = mg_pdf(&dist, x) {
            assert!(p >= 0.0 || p.is_nan());
        }
        if let Ok(f) = mg_cdf(&dist, x) {
            assert!(!(f < -1e-9 || f > 1.0 + 1e-9), "cdf {f} at {x}");
        }
    }
    for n in 0..=6 {
        let _ = mg_envelope_moment(&dist, n);
    }
});
