//! Singularity-free oscillatory kernels shared by the time-domain and
//! spectral excitation routes.
//!
//! The workhorse identity is
//!
//! ```text
//! phase_integral(x, t) = int_0^t e^{i x u} du
//!                      = (e^{i x t} - 1)/(i x)
//!                      = t e^{i x t / 2} sinc(x t / 2),
//! ```
//!
//! whose right-hand side is finite and smooth through x = 0 (it tends to t).
//! Evaluating resonance denominators through this form keeps the on-resonance
//! limit exact instead of 0/0.

use num_complex::Complex64 as C64;

/// sin(x)/x with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-4 {
        // |x| < 1e-4: the next term x^6/5040 is below 2^-63, so two
        // corrections give full f64 precision.
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `int_0^t e^{i x u} du`, exact through x = 0. Magnitude is bounded by
/// `min(t, 2/|x|)`.
pub fn phase_integral(x: f64, t: f64) -> C64 {
    let h = 0.5 * x * t;
    C64::new(h.cos(), h.sin()) * (t * sinc(h))
}

/// `int_0^h u e^{i x u} du`, exact through x = 0. Used for the exact
/// transform of linear-in-time segments.
pub fn ramp_integral(x: f64, h: f64) -> C64 {
    let w = x * h;
    if w.abs() < 1e-3 {
        // h^2 * sum_m (iw)^m / (m! (m+2)); five terms reach f64 precision
        // for |w| < 1e-3.
        let iw = C64::new(0.0, w);
        let h2 = h * h;
        let mut acc = C64::new(1.0 / 144.0, 0.0);
        acc = acc * iw + 1.0 / 30.0;
        acc = acc * iw + 1.0 / 8.0;
        acc = acc * iw + 1.0 / 3.0;
        acc = acc * iw + 0.5;
        acc * h2
    } else {
        // e^{iw} (h/(ix)) - (e^{iw} - 1)/(ix)^2
        let e = C64::new(w.cos(), w.sin());
        let x2 = x * x;
        e * C64::new(0.0, -h / x) + (e - 1.0) / x2
    }
}
