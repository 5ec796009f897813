//! Windowed frequency content of mirror waveforms: a harmonic line and
//! the odd-harmonic comb of a square pulse train.

use dyncp::mirror::{MirrorMotion, Shape};
use std::f64::consts::PI;

fn main() -> dyncp::Result<()> {
    let omega = 1.0e8; // rad/s
    let window = 2.0 * PI / omega * 64.0; // 64 periods

    let harmonic = MirrorMotion::new(2e-3, 2e-4, Shape::harmonic(omega, 0.0)?)?;
    let spec = harmonic.spectrum(window, 4097)?;
    let exact_ms = harmonic.shape().mean_square_integral(window)?;
    println!("harmonic drive, 64-period window, 4097 samples:");
    println!(
        "  Parseval residual = {:.2e} (relative to the exact mean-square integral)",
        spec.parseval_residual(exact_ms)
    );
    let peak = spec
        .omegas
        .iter()
        .zip(spec.g.iter())
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .unwrap();
    println!(
        "  dominant line at omega = {:+.4e} rad/s (drive = {:.4e}), |g| = {:.4e}\n",
        peak.0,
        omega,
        peak.1.norm()
    );

    let train = MirrorMotion::new(2e-3, 2e-4, Shape::square_train(omega, 0.25)?)?;
    let spec = train.spectrum(window, 8193)?;
    let exact_ms = train.shape().mean_square_integral(window)?;
    println!("square train (duty 0.25), same window:");
    println!("  Parseval residual = {:.2e}", spec.parseval_residual(exact_ms));
    println!("  lines at k * rep_rate; |g_k| versus the series 2|sin(pi k d)|/(pi k):");
    println!("  {:>3}  {:>12}  {:>12}  {:>9}", "k", "|g_k| [s]", "series [s]", "rel diff");

    // line k sits 64*k grid steps from zero; window/(2 sqrt(2 pi)) scales a
    // unit cosine-series coefficient to the windowed transform magnitude
    let dw = spec.delta_omega();
    let unit = window / (2.0 * PI).sqrt() / 2.0;
    for k in 1..=6 {
        let idx = spec
            .omegas
            .iter()
            .position(|&w| (w - k as f64 * omega).abs() < 0.5 * dw)
            .unwrap();
        let measured = spec.g[idx].norm();
        let series = 2.0 * (PI * k as f64 * 0.25).sin().abs() / (PI * k as f64) * unit;
        let rel = if series < 1e-12 * unit {
            "vanishes".to_string()
        } else {
            format!("{:.2e}", (measured - series).abs() / series)
        };
        println!("  {k:>3}  {measured:>12.5e}  {series:>12.5e}  {rel:>9}");
    }
    println!("\n  k = 4 falls on a zero of sin(pi k d) at duty 0.25: the line vanishes.");
    Ok(())
}
