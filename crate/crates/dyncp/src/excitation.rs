//! Excitation amplitudes for an atom driven by a vibrating mirror.
//!
//! To first order in a/z_0 and in time-dependent perturbation theory, the
//! amplitude to find the atom in the upper state after time t is
//!
//! ```text
//! c_e(t) = i Lambda int_0^t f(u) exp(i omega_0 u) du,
//! Lambda = 3 a S / (16 hbar z_0^4),
//! ```
//!
//! with S the sigma-weighted squared dipole matrix element and f the mirror
//! waveform. For a resonant harmonic drive f = sin(omega_0 t + phi) the
//! rotating-wave result is c_e = -(Lambda t / 2) exp(-i phi), so
//!
//! ```text
//! P(t) = (Lambda t / 2)^2
//!      = (9 / 2^10) (a/z_0)^2 S^2 t^2 / (hbar^2 z_0^6),
//! ```
//!
//! which with S = e^2 a_0^2 n^4 becomes the scaling law
//! P = C a^2 n^8 t^2 / z_0^8, C = 9 e^4 a_0^4 / (1024 hbar^2).
//!
//! Three routes to the amplitude are provided and agree with each other:
//! closed forms / adaptive quadrature in the time domain, the rotating-wave
//! approximation on resonance, and a sum over the windowed motion spectrum
//!
//! ```text
//! c_e(t) = i Lambda (dw / sqrt(2 pi)) sum_j g_j E(omega_0 + omega_j, t),
//! ```
//!
//! where E(x, t) = int_0^t exp(i x u) du and g_j is the spectrum of f on the
//! Fourier grid of its window. On that grid the sum is the Fourier series of
//! f term by term, so the spectral route is exact up to out-of-band content.

use crate::atom::RydbergTransition;
use crate::constants::constants;
use crate::error::{Error, Result};
use crate::kernel::phase_integral;
use crate::mirror::{MirrorMotion, MotionSpectrum, Shape};
use crate::quad::{integrate_oscillatory, QuadOptions};
use num_complex::Complex64 as C64;
use std::f64::consts::TAU;

/// How an amplitude was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    TimeDomain,
    ResonantRwa,
    Spectral,
}

/// Treatment of the z(t)^{-3} coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingModel {
    /// First order in a/z_0 (the standard route).
    Linearized,
    /// Full (1 - (a/z_0) f)^{-3} dependence, for gauging the linearization.
    Exact,
}

/// Upper-state amplitude and probability after the drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcitationResult {
    pub amplitude: C64,
    pub probability: f64,
    pub method: Method,
}

impl ExcitationResult {
    fn from_amplitude(amplitude: C64, method: Method) -> Self {
        ExcitationResult {
            amplitude,
            probability: amplitude.norm_sqr(),
            method,
        }
    }
}

/// Drive strength Lambda = 3 a S / (16 hbar z_0^4), rad/s.
pub fn coupling_rate(transition: &RydbergTransition, motion: &MirrorMotion) -> f64 {
    3.0 * motion.amplitude() * transition.dipole_sq
        / (16.0 * constants().hbar * motion.z0().powi(4))
}

/// int_0^t sin(omega u + phase) exp(i omega_0 u) du, exactly.
pub fn drive_integral_harmonic(omega0: f64, omega: f64, phase: f64, t: f64) -> C64 {
    let plus = C64::from_polar(1.0, phase) * phase_integral(omega0 + omega, t);
    let minus = C64::from_polar(1.0, -phase) * phase_integral(omega0 - omega, t);
    // 1/(2i) = -i/2
    C64::new(0.0, -0.5) * (plus - minus)
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidTime { t });
    }
    Ok(())
}

fn check_span_covers(shape: &Shape, t: f64) -> Result<()> {
    if let Shape::Tabulated(tab) = shape {
        let (start, end) = tab.span();
        if !(start <= 0.0 && end >= t) {
            return Err(Error::OutOfSpan { t, start, end });
        }
    }
    Ok(())
}

/// First-order amplitude by direct time integration: closed form for a
/// harmonic drive, adaptive oscillatory quadrature otherwise.
pub fn amplitude_time_domain(
    transition: &RydbergTransition,
    motion: &MirrorMotion,
    t: f64,
) -> Result<ExcitationResult> {
    check_time(t)?;
    check_span_covers(motion.shape(), t)?;
    let rate = coupling_rate(transition, motion);
    let drive = match *motion.shape() {
        Shape::Harmonic { omega, phase } => {
            drive_integral_harmonic(transition.omega0, omega, phase, t)
        }
        ref shape => {
            let omega0 = transition.omega0;
            let max_omega = omega0.max(shape.max_relevant_omega());
            let breakpoints = shape.breakpoints(0.0, t);
            integrate_oscillatory(
                |u| C64::from_polar(1.0, omega0 * u) * shape.evaluate(u).unwrap(),
                0.0,
                t,
                max_omega,
                &breakpoints,
                &QuadOptions::default(),
            )?
            .value
        }
    };
    Ok(ExcitationResult::from_amplitude(
        C64::new(0.0, rate) * drive,
        Method::TimeDomain,
    ))
}

/// Time-domain amplitude with a choice of coupling model. The exact model
/// integrates the full (1 - (a/z_0) f)^{-3} - 1 drive, normalized so the
/// two models coincide as a/z_0 -> 0.
pub fn amplitude_time_domain_with(
    transition: &RydbergTransition,
    motion: &MirrorMotion,
    t: f64,
    model: CouplingModel,
) -> Result<ExcitationResult> {
    match model {
        CouplingModel::Linearized => amplitude_time_domain(transition, motion, t),
        CouplingModel::Exact => {
            check_time(t)?;
            check_span_covers(motion.shape(), t)?;
            let rate = coupling_rate(transition, motion);
            let eps = motion.amplitude() / motion.z0();
            if eps == 0.0 {
                return Ok(ExcitationResult::from_amplitude(
                    C64::new(0.0, 0.0),
                    Method::TimeDomain,
                ));
            }
            let shape = motion.shape().clone();
            let omega0 = transition.omega0;
            let max_omega = omega0.max(shape.max_relevant_omega());
            let breakpoints = shape.breakpoints(0.0, t);
            let drive = integrate_oscillatory(
                |u| {
                    let f = shape.evaluate(u).unwrap();
                    let full = (1.0 - eps * f).powi(-3) - 1.0;
                    C64::from_polar(1.0, omega0 * u) * (full / (3.0 * eps))
                },
                0.0,
                t,
                max_omega,
                &breakpoints,
                &QuadOptions::default(),
            )?
            .value;
            Ok(ExcitationResult::from_amplitude(
                C64::new(0.0, rate) * drive,
                Method::TimeDomain,
            ))
        }
    }
}

/// Rotating-wave amplitude for a near-resonant harmonic drive:
/// c_e = -(Lambda t / 2) exp(-i phase). Requires |omega - omega_0| t < 0.1.
pub fn probability_resonant(
    transition: &RydbergTransition,
    motion: &MirrorMotion,
    t: f64,
) -> Result<ExcitationResult> {
    check_time(t)?;
    let Shape::Harmonic { omega, phase } = *motion.shape() else {
        return Err(Error::InvalidInput {
            reason: "the rotating-wave result requires a harmonic drive".into(),
        });
    };
    let detuning_times_t = (omega - transition.omega0).abs() * t;
    if detuning_times_t >= 0.1 {
        return Err(Error::Detuned { detuning_times_t });
    }
    let rate = coupling_rate(transition, motion);
    let amplitude = C64::from_polar(0.5 * rate * t, -phase) * (-1.0);
    Ok(ExcitationResult::from_amplitude(
        amplitude,
        Method::ResonantRwa,
    ))
}

/// C = 9 e^4 a_0^4 / (1024 hbar^2), cm^6 s^-2: the constant in the resonant
/// scaling law P = C a^2 n^8 t^2 / z_0^8.
pub fn scaling_constant() -> f64 {
    let c = constants();
    9.0 * c.electron_charge.powi(4) * c.bohr_radius.powi(4) / (1024.0 * c.hbar * c.hbar)
}

/// Resonant excitation probability from the scaling law
/// P = C a^2 n^8 t^2 / z_0^8.
pub fn probability_scaling(n: u32, z0: f64, amplitude: f64, t: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumber { n });
    }
    if !(z0.is_finite() && z0 > 0.0) {
        return Err(Error::NonpositiveDistance { z: z0 });
    }
    if !(amplitude.is_finite() && amplitude >= 0.0) || amplitude >= z0 {
        return Err(Error::AmplitudeExceedsDistance { amplitude, z0 });
    }
    check_time(t)?;
    let n8 = (n as f64).powi(8);
    Ok(scaling_constant() * amplitude * amplitude * n8 * t * t / z0.powi(8))
}

struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn new() -> Self {
        Neumaier { sum: 0.0, comp: 0.0 }
    }
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }
    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// First-order amplitude summed over a windowed motion spectrum. The
/// spectrum must come from the same waveform on the Fourier grid of a window
/// at least as long as t, and the grid must reach the transition frequency.
pub fn amplitude_spectral(
    transition: &RydbergTransition,
    motion: &MirrorMotion,
    spectrum: &MotionSpectrum,
    t: f64,
) -> Result<ExcitationResult> {
    check_time(t)?;
    if t > spectrum.window * (1.0 + 1e-12) {
        return Err(Error::WindowMismatch {
            t,
            window: spectrum.window,
        });
    }
    let n = spectrum.omegas.len();
    if n != spectrum.g.len() {
        return Err(Error::GridResolution {
            detail: format!(
                "frequency and spectrum arrays differ in length ({n} vs {})",
                spectrum.g.len()
            ),
        });
    }
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::GridResolution {
            detail: format!("grid must hold an odd number >= 3 of frequencies, got {n}"),
        });
    }
    let m = (n - 1) / 2;
    let dw = spectrum.delta_omega();
    for (j, &w) in spectrum.omegas.iter().enumerate() {
        let expect = (j as f64 - m as f64) * dw;
        if (w - expect).abs() > 1e-6 * dw {
            return Err(Error::GridResolution {
                detail: format!(
                    "grid point {j} is {w:e} rad/s, expected the Fourier grid value {expect:e}"
                ),
            });
        }
    }
    let omega0 = transition.omega0;
    let reach = spectrum.omegas[n - 1];
    if reach + 0.5 * dw < omega0 {
        return Err(Error::GridResolution {
            detail: format!(
                "grid reaches {reach:e} rad/s but the transition sits at {omega0:e} rad/s"
            ),
        });
    }

    let rate = coupling_rate(transition, motion);
    let mut re = Neumaier::new();
    let mut im = Neumaier::new();
    for (&w, &g) in spectrum.omegas.iter().zip(&spectrum.g) {
        let term = g * phase_integral(omega0 + w, t);
        re.add(term.re);
        im.add(term.im);
    }
    let drive = C64::new(re.total(), im.total()) * (dw / TAU.sqrt());
    Ok(ExcitationResult::from_amplitude(
        C64::new(0.0, rate) * drive,
        Method::Spectral,
    ))
}
