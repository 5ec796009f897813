//! Crate-wide error type and result alias.

use crate::units::Unit;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("principal quantum number n = {n} is invalid (need n >= 1)")]
    InvalidQuantumNumber { n: u32 },

    #[error("transition {n} -> {n_prime} is not upward (need n < n_prime)")]
    NotUpwardTransition { n: u32, n_prime: u32 },

    #[error("cannot convert {from} to {to}: incompatible dimensions")]
    IncompatibleUnits { from: Unit, to: Unit },

    #[error("cannot parse quantity {input:?}: {reason}")]
    QuantityParse { input: String, reason: String },

    #[error("atom-mirror distance z = {z:e} cm must be positive and finite")]
    NonpositiveDistance { z: f64 },

    #[error("oscillation amplitude a = {amplitude:e} cm must satisfy 0 <= a < z0 = {z0:e} cm")]
    AmplitudeExceedsDistance { amplitude: f64, z0: f64 },

    #[error("invalid motion shape: {reason}")]
    InvalidShape { reason: String },

    #[error("time t = {t:e} s is outside the tabulated span [{start:e}, {end:e}] s")]
    OutOfSpan { t: f64, start: f64, end: f64 },

    #[error("time t = {t:e} s must be non-negative and finite")]
    InvalidTime { t: f64 },

    #[error(
        "spectrum is undersampled: {given} samples cover the window, \
         but at least {required} are needed (32 per period of the fastest relevant frequency)"
    )]
    UndersampledSpectrum { required: usize, given: usize },

    #[error("evaluation time t = {t:e} s exceeds the spectrum window {window:e} s")]
    WindowMismatch { t: f64, window: f64 },

    #[error("frequency grid cannot resolve the request: {detail}")]
    GridResolution { detail: String },

    #[error(
        "drive is detuned: |omega - omega0| * t = {detuning_times_t:e} >= 0.1, \
         the resonant closed form does not apply"
    )]
    Detuned { detuning_times_t: f64 },

    #[error(
        "quadrature failed to converge: achieved absolute error {achieved:e} \
         (target {requested:e}) after {panels} panels"
    )]
    QuadratureNonConvergence {
        achieved: f64,
        requested: f64,
        panels: usize,
    },

    #[error("position z = {z:e} cm must be positive and finite")]
    NonpositivePosition { z: f64 },

    #[error("invalid gas profile: {reason}")]
    InvalidProfile { reason: String },

    #[error(
        "profile support reaches down to z = {z_min:e} cm, which is not strictly \
         above the mirror excursion a = {amplitude:e} cm"
    )]
    SupportTouchesWall { z_min: f64, amplitude: f64 },

    #[error(
        "closed form diverges: z_center/half_width = {z_bar:e} must exceed 1 \
         (support must not touch the wall)"
    )]
    InvalidGeometry { z_bar: f64 },

    #[error("invalid input: {reason}")]
    InvalidInput { reason: String },

    #[error("config error at `{key_path}`: {reason}")]
    Config { key_path: String, reason: String },

    #[error("unknown preset {name:?}; available: {available}")]
    UnknownPreset { name: String, available: String },

    #[error("sweep would produce {points} rows, exceeding the cap of {cap}")]
    SweepCapExceeded { points: u64, cap: u64 },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: numerical-convergence failures are
    /// distinguished from validation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::QuadratureNonConvergence { .. } => 2,
            _ => 1,
        }
    }
}
