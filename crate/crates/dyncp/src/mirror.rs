//! Mirror motion: waveforms, atom-mirror distance, and windowed spectra.
//!
//! The mirror surface oscillates about its rest position with amplitude `a`
//! and a dimensionless waveform f(t) normalized to |f| <= 1, so the
//! atom-mirror distance is
//!
//! ```text
//! z(t) = z_0 - a f(t) = z_0 [1 - (a/z_0) f(t)]
//! ```
//!
//! Three waveforms are supported: a harmonic drive sin(omega t + phase), a
//! rectangular pulse train recentred to zero mean (value 1 - d on pulses and
//! -d between them, duty cycle d, so the k-th harmonic has sine amplitude
//! 2|sin(pi k d)| / (pi k)), and an arbitrary tabulated waveform interpolated
//! linearly between samples.
//!
//! The windowed spectrum over [0, W] uses the convention
//!
//! ```text
//! g(omega) = (2 pi)^{-1/2} int_0^W f(u) exp(-i omega u) du
//! ```
//!
//! evaluated exactly (closed form per waveform, no FFT leakage) on the
//! Fourier grid omega_j = 2 pi j / W. On that grid with rectangle weights,
//! the inverse sum reproduces f on [0, W] up to out-of-band truncation,
//! which is what makes the spectral excitation route agree with the
//! time-domain one.

use crate::error::{Error, Result};
use crate::kernel::{phase_integral, ramp_integral};
use num_complex::Complex64 as C64;
use std::f64::consts::TAU;
use std::io::BufRead;

/// Arbitrary waveform sampled at strictly increasing times, |f| <= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedShape {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TabulatedShape {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidShape {
                reason: format!(
                    "time and value columns differ in length ({} vs {})",
                    times.len(),
                    values.len()
                ),
            });
        }
        if times.len() < 2 {
            return Err(Error::InvalidShape {
                reason: "a tabulated waveform needs at least two samples".into(),
            });
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidShape {
                reason: "sample times must be finite".into(),
            });
        }
        for (i, w) in times.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::InvalidShape {
                    reason: format!(
                        "sample times must be strictly increasing (rows {i} and {}: {} then {})",
                        i + 1,
                        w[0],
                        w[1]
                    ),
                });
            }
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v.abs() > 1.0 {
                return Err(Error::InvalidShape {
                    reason: format!("waveform values must lie in [-1, 1]; row {i} has {v}"),
                });
            }
        }
        Ok(TabulatedShape { times, values })
    }

    /// Parse two whitespace-separated columns (time, value); `#` starts a
    /// comment, blank lines are skipped.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut times = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut cols = body.split_whitespace();
            let (Some(ts), Some(vs)) = (cols.next(), cols.next()) else {
                return Err(Error::InvalidShape {
                    reason: format!("line {}: expected two columns", lineno + 1),
                });
            };
            if cols.next().is_some() {
                return Err(Error::InvalidShape {
                    reason: format!("line {}: more than two columns", lineno + 1),
                });
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|_| Error::InvalidShape {
                    reason: format!("line {}: cannot parse `{s}` as a number", lineno + 1),
                })
            };
            times.push(parse(ts)?);
            values.push(parse(vs)?);
        }
        TabulatedShape::new(times, values)
    }

    pub fn from_path<P: AsRef<std::path::Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        TabulatedShape::from_reader(std::io::BufReader::new(file))
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Covered time span (first sample, last sample).
    pub fn span(&self) -> (f64, f64) {
        (self.times[0], *self.times.last().unwrap())
    }

    fn min_dt(&self) -> f64 {
        self.times
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    fn value_at(&self, t: f64) -> Result<f64> {
        let (start, end) = self.span();
        if !(t >= start && t <= end) {
            return Err(Error::OutOfSpan { t, start, end });
        }
        // index of the segment containing t
        let i = match self.times.partition_point(|&x| x <= t) {
            0 => 0,
            k if k >= self.times.len() => self.times.len() - 2,
            k => k - 1,
        };
        let (t0, t1) = (self.times[i], self.times[i + 1]);
        let (f0, f1) = (self.values[i], self.values[i + 1]);
        Ok(f0 + (f1 - f0) * (t - t0) / (t1 - t0))
    }
}

/// Dimensionless mirror waveform f(t), |f| <= 1.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// sin(omega t + phase)
    Harmonic { omega: f64, phase: f64 },
    /// Pulse train of period 2 pi / rep_rate recentred to zero mean:
    /// 1 - duty on pulses, -duty off.
    SquareTrain { rep_rate: f64, duty: f64 },
    Tabulated(TabulatedShape),
}

impl Shape {
    pub fn harmonic(omega: f64, phase: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidShape {
                reason: format!("harmonic drive frequency must be positive, got {omega:e}"),
            });
        }
        if !phase.is_finite() {
            return Err(Error::InvalidShape {
                reason: "harmonic drive phase must be finite".into(),
            });
        }
        Ok(Shape::Harmonic { omega, phase })
    }

    pub fn square_train(rep_rate: f64, duty: f64) -> Result<Self> {
        if !(rep_rate.is_finite() && rep_rate > 0.0) {
            return Err(Error::InvalidShape {
                reason: format!("pulse repetition rate must be positive, got {rep_rate:e}"),
            });
        }
        if !(duty.is_finite() && duty > 0.0 && duty < 1.0) {
            return Err(Error::InvalidShape {
                reason: format!("duty cycle must lie strictly between 0 and 1, got {duty}"),
            });
        }
        Ok(Shape::SquareTrain { rep_rate, duty })
    }

    /// Waveform value at time t. Tabulated shapes fail outside their span.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::InvalidTime { t });
        }
        match self {
            Shape::Harmonic { omega, phase } => Ok((omega * t + phase).sin()),
            Shape::SquareTrain { rep_rate, duty } => {
                let period = TAU / rep_rate;
                let tau = t - period * (t / period).floor();
                let on = tau < duty * period;
                Ok(if on { 1.0 - duty } else { -duty })
            }
            Shape::Tabulated(tab) => tab.value_at(t),
        }
    }

    /// Fastest angular frequency the waveform carries: the drive frequency,
    /// the pulse repetition rate (edges are handled as breakpoints), or the
    /// Nyquist rate of the tabulation.
    pub fn max_relevant_omega(&self) -> f64 {
        match self {
            Shape::Harmonic { omega, .. } => *omega,
            Shape::SquareTrain { rep_rate, .. } => *rep_rate,
            Shape::Tabulated(tab) => std::f64::consts::PI / tab.min_dt(),
        }
    }

    /// Times in (a, b) where the waveform is not smooth: pulse edges and
    /// tabulation nodes.
    pub fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        match self {
            Shape::Harmonic { .. } => Vec::new(),
            Shape::SquareTrain { rep_rate, duty } => {
                let period = TAU / rep_rate;
                let mut out = Vec::new();
                let mut k = (a / period).floor();
                while k * period < b {
                    for edge in [k * period, (k + duty) * period] {
                        if edge > a && edge < b {
                            out.push(edge);
                        }
                    }
                    k += 1.0;
                }
                out
            }
            Shape::Tabulated(tab) => tab
                .times
                .iter()
                .copied()
                .filter(|&x| x > a && x < b)
                .collect(),
        }
    }

    /// Exact int_0^t f(u)^2 du.
    pub fn mean_square_integral(&self, t: f64) -> Result<f64> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidTime { t });
        }
        match self {
            Shape::Harmonic { omega, phase } => {
                // int sin^2(w u + p) = t/2 - [sin(2(w t + p)) - sin(2 p)]/(4 w)
                Ok(0.5 * t - ((2.0 * (omega * t + phase)).sin() - (2.0 * phase).sin()) / (4.0 * omega))
            }
            Shape::SquareTrain { rep_rate, duty } => {
                let period = TAU / rep_rate;
                let full = (t / period).floor();
                let rem = t - full * period;
                let on = full * duty * period + rem.min(duty * period);
                Ok(on * (1.0 - duty).powi(2) + (t - on) * duty * duty)
            }
            Shape::Tabulated(tab) => {
                let (start, end) = tab.span();
                if !(0.0 >= start && t <= end) {
                    return Err(Error::OutOfSpan { t, start, end });
                }
                // per linear segment: int (f0 + m u)^2 du = h (f0^2 + f0 f1 + f1^2)/3
                let mut acc = 0.0;
                for i in 0..tab.times.len() - 1 {
                    let (lo, hi) = (tab.times[i].max(0.0), tab.times[i + 1].min(t));
                    if hi <= lo {
                        continue;
                    }
                    let f0 = tab.value_at(lo)?;
                    let f1 = tab.value_at(hi)?;
                    acc += (hi - lo) * (f0 * f0 + f0 * f1 + f1 * f1) / 3.0;
                }
                Ok(acc)
            }
        }
    }

    /// Windowed transform on the Fourier grid of [0, window]:
    /// g_j = (2 pi)^{-1/2} int_0^window f(u) exp(-i omega_j u) du at
    /// omega_j = 2 pi j / window, j = -M..=M with M = n_samples / 2.
    /// Each g_j is evaluated in closed form.
    pub fn spectrum(&self, window: f64, n_samples: usize) -> Result<MotionSpectrum> {
        if !(window.is_finite() && window > 0.0) {
            return Err(Error::InvalidTime { t: window });
        }
        let m = n_samples / 2;
        if m == 0 {
            return Err(Error::UndersampledSpectrum {
                required: 2,
                given: n_samples,
            });
        }
        // The grid must reach the waveform's own bandwidth. The slack keeps
        // the boundary case (window an exact multiple of the drive period)
        // from failing on float rounding.
        let dw = TAU / window;
        let needed = self.max_relevant_omega();
        if (m as f64) * dw < needed * (1.0 - 1e-9) {
            return Err(Error::UndersampledSpectrum {
                required: (needed * window / std::f64::consts::PI).ceil() as usize,
                given: n_samples,
            });
        }
        if let Shape::Tabulated(tab) = self {
            let (start, end) = tab.span();
            if !(start <= 0.0 && end >= window) {
                return Err(Error::OutOfSpan {
                    t: window,
                    start,
                    end,
                });
            }
        }

        let norm = 1.0 / (TAU.sqrt());
        let mut omegas = Vec::with_capacity(2 * m + 1);
        let mut g = Vec::with_capacity(2 * m + 1);
        for j in -(m as i64)..=(m as i64) {
            let w = j as f64 * dw;
            omegas.push(w);
            g.push(self.transform_at(w, window)? * norm);
        }
        Ok(MotionSpectrum {
            omegas,
            g,
            window,
        })
    }

    /// int_0^W f(u) exp(-i omega u) du, exactly.
    fn transform_at(&self, omega: f64, window: f64) -> Result<C64> {
        match self {
            Shape::Harmonic {
                omega: wbar,
                phase,
            } => {
                // sin(x) = (e^{ix} - e^{-ix}) / 2i
                let plus = C64::from_polar(1.0, *phase) * phase_integral(wbar - omega, window);
                let minus =
                    C64::from_polar(1.0, -*phase) * phase_integral(-wbar - omega, window);
                Ok(C64::new(0.0, -0.5) * (plus - minus))
            }
            Shape::SquareTrain { rep_rate, duty } => {
                let period = TAU / rep_rate;
                let mut acc = C64::new(0.0, 0.0);
                let mut k = 0.0;
                while k * period < window {
                    let p = k * period;
                    let q = (p + duty * period).min(window);
                    acc += C64::from_polar(1.0, -omega * p) * phase_integral(-omega, q - p);
                    k += 1.0;
                }
                acc -= duty * phase_integral(-omega, window);
                Ok(acc)
            }
            Shape::Tabulated(tab) => {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..tab.times.len() - 1 {
                    let (lo, hi) = (tab.times[i].max(0.0), tab.times[i + 1].min(window));
                    if hi <= lo {
                        continue;
                    }
                    let f0 = tab.value_at(lo)?;
                    let f1 = tab.value_at(hi)?;
                    let h = hi - lo;
                    let slope = (f1 - f0) / h;
                    acc += C64::from_polar(1.0, -omega * lo)
                        * (phase_integral(-omega, h) * f0 + ramp_integral(-omega, h) * slope);
                }
                Ok(acc)
            }
        }
    }

    /// One-line description for tabular output.
    pub fn describe(&self) -> String {
        match self {
            Shape::Harmonic { omega, phase } => {
                format!("harmonic(omega={omega:.9e} rad/s, phase={phase})")
            }
            Shape::SquareTrain { rep_rate, duty } => {
                format!("square_train(rep_rate={rep_rate:.9e} rad/s, duty={duty})")
            }
            Shape::Tabulated(tab) => {
                let (s, e) = tab.span();
                format!(
                    "tabulated({} samples, span [{s:.6e}, {e:.6e}] s)",
                    tab.times.len()
                )
            }
        }
    }
}

/// Windowed waveform spectrum on the Fourier grid of its window.
#[derive(Debug, Clone)]
pub struct MotionSpectrum {
    /// Grid frequencies, rad/s, symmetric about zero.
    pub omegas: Vec<f64>,
    /// g(omega_j) per the module convention.
    pub g: Vec<C64>,
    /// Window length W the transform was taken over, s.
    pub window: f64,
}

impl MotionSpectrum {
    /// Grid spacing 2 pi / W, also the rectangle quadrature weight.
    pub fn delta_omega(&self) -> f64 {
        TAU / self.window
    }

    /// Relative defect of the discrete Parseval identity
    /// delta_omega * sum |g_j|^2 = int_0^W f^2, given the exact right side.
    /// Small only when the waveform is bandlimited to the grid.
    pub fn parseval_residual(&self, mean_square_integral: f64) -> f64 {
        let sum: f64 = self.g.iter().map(|z| z.norm_sqr()).sum();
        let lhs = self.delta_omega() * sum;
        if mean_square_integral == 0.0 {
            return lhs.abs();
        }
        ((lhs - mean_square_integral) / mean_square_integral).abs()
    }
}

/// Oscillating mirror at rest distance z_0 with amplitude a < z_0.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorMotion {
    z0: f64,
    amplitude: f64,
    shape: Shape,
}

impl MirrorMotion {
    pub fn new(z0: f64, amplitude: f64, shape: Shape) -> Result<Self> {
        if !(z0.is_finite() && z0 > 0.0) {
            return Err(Error::NonpositiveDistance { z: z0 });
        }
        if !(amplitude.is_finite() && amplitude >= 0.0) || amplitude >= z0 {
            return Err(Error::AmplitudeExceedsDistance { amplitude, z0 });
        }
        Ok(MirrorMotion {
            z0,
            amplitude,
            shape,
        })
    }

    pub fn z0(&self) -> f64 {
        self.z0
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn evaluate_shape(&self, t: f64) -> Result<f64> {
        self.shape.evaluate(t)
    }

    /// Atom-mirror distance z_0 - a f(t).
    pub fn distance(&self, t: f64) -> Result<f64> {
        Ok(self.z0 - self.amplitude * self.shape.evaluate(t)?)
    }

    pub fn spectrum(&self, window: f64, n_samples: usize) -> Result<MotionSpectrum> {
        self.shape.spectrum(window, n_samples)
    }
}
