//! A tabulated, non-analytic mirror waveform driven through both
//! excitation routes: adaptive time integration and the windowed
//! spectral decomposition.

use dyncp::atom::make_transition;
use dyncp::excitation::{amplitude_spectral, amplitude_time_domain};
use dyncp::mirror::{MirrorMotion, Shape, TabulatedShape};
use std::f64::consts::TAU;

fn main() -> dyncp::Result<()> {
    let tr = make_transition(50, 52)?;
    let base = tr.omega0 / 8.0; // window holds 8 periods of the resonance
    let window = TAU / base;

    // three incommensurate-phase harmonics of the window, one of them resonant
    let f = |u: f64| {
        0.55 * (8.0 * base * u + 0.3).sin()
            + 0.25 * (3.0 * base * u).sin()
            + 0.15 * (13.0 * base * u + 1.1).cos()
    };
    let n = 512usize;
    let times: Vec<f64> = (0..=n).map(|k| window * k as f64 / n as f64).collect();
    let values: Vec<f64> = times.iter().map(|&u| f(u)).collect();
    let shape = Shape::Tabulated(TabulatedShape::new(times, values)?);

    let motion = MirrorMotion::new(2e-3, 1e-4, shape)?;
    println!(
        "waveform: 3 harmonics of the window (indices 3, 8, 13), tabulated at {} nodes",
        n + 1
    );
    println!("window: 8 periods of the 50 -> 52 resonance ({window:.3e} s)\n");

    let t = window;
    let td = amplitude_time_domain(&tr, &motion, t)?;
    let spectrum = motion.spectrum(window, 1025)?;
    let sp = amplitude_spectral(&tr, &motion, &spectrum, t)?;

    println!("excitation amplitude at t = window:");
    println!(
        "  time domain: {:+.9e} {:+.9e} i  (P = {:.6e})",
        td.amplitude.re, td.amplitude.im, td.probability
    );
    println!(
        "  spectral:    {:+.9e} {:+.9e} i  (P = {:.6e})",
        sp.amplitude.re, sp.amplitude.im, sp.probability
    );
    println!(
        "  relative difference: {:.2e}",
        (td.amplitude - sp.amplitude).norm() / td.amplitude.norm()
    );

    // only the resonant line drives the atom appreciably; find it
    let dw = spectrum.delta_omega();
    let idx = spectrum
        .omegas
        .iter()
        .position(|&w| (w + tr.omega0).abs() < 0.5 * dw)
        .unwrap();
    println!(
        "\nthe line at omega = -omega0 carries |g| = {:.4e} s; its weight 0.55/2\n\
         of the window ({:.4e} s) dominates the response.",
        spectrum.g[idx].norm(),
        0.55 / 2.0 * window / TAU.sqrt()
    );
    Ok(())
}
