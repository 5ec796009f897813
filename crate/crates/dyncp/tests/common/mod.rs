//! Helpers shared by the integration suites.

use dyncp::mirror::TabulatedShape;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Random trig polynomial in the first `k_max` harmonics of `base`,
/// tabulated on `segments + 1` uniform nodes spanning `window`, scaled so
/// max |f| = 0.95.
pub fn random_bandlimited(
    seed: u64,
    base: f64,
    k_max: usize,
    window: f64,
    segments: usize,
) -> TabulatedShape {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<(f64, f64)> = (1..=k_max)
        .map(|k| {
            (
                rng.gen_range(-1.0..1.0) / (1.0 + k as f64 / 4.0),
                rng.gen_range(0.0..TAU),
            )
        })
        .collect();
    let f = |u: f64| -> f64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, (c, phi))| c * ((i + 1) as f64 * base * u + phi).sin())
            .sum()
    };
    let peak = (0..4096)
        .map(|i| f(window * i as f64 / 4096.0).abs())
        .fold(0.0f64, f64::max);
    let times: Vec<f64> = (0..=segments)
        .map(|i| window * i as f64 / segments as f64)
        .collect();
    let values: Vec<f64> = times.iter().map(|&u| 0.95 * f(u) / peak).collect();
    TabulatedShape::new(times, values).unwrap()
}
