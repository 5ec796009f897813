//! Rydberg-atom excitation by a vibrating mirror.
//!
//! An atom held at distance z_0 from a conducting surface interacts with its
//! own image; in the near zone (z_0 much shorter than the transition
//! wavelength) the interaction energy is -(d_x^2 + d_y^2 + 2 d_z^2)/(16 z^3)
//! in cgs units. Vibrating the surface, z(t) = z_0 [1 - (a/z_0) f(t)],
//! modulates that energy and can drive the atom's internal transition: for a
//! resonant harmonic drive the excitation probability grows as
//!
//! ```text
//! P(t) = (9 / 2^10) (a / z_0)^2 (S t / hbar)^2 / z_0^6,
//! S = e^2 a_0^2 n^4,
//! ```
//!
//! i.e. P = C a^2 n^8 t^2 / z_0^8 with C = 9 e^4 a_0^4 / (1024 hbar^2).
//! The n^8 growth makes micron-scale surface motion observable with Rydberg
//! atoms (n ~ 75) at tens-of-micron distances within microseconds, and a
//! dilute cloud of N atoms multiplies the expected count accordingly.
//!
//! The crate computes excitation amplitudes three ways (closed form /
//! adaptive time integration, rotating-wave approximation, and a windowed
//! spectral decomposition of the motion), integrates them over gas clouds,
//! and grades every run against the model's validity conditions (near-zone,
//! linearization, perturbation theory, interaction hierarchy, photon
//! background).
//!
//! Start with the runnable examples (`cargo run --example single_atom_excitation`,
//! `gas_excited_count`, `mirror_spectrum`, `arbitrary_motion`,
//! `square_train_drive`, `validity_report`, `parameter_sweep`,
//! `linearization_error`), or with the `dyncp` binary's `single`, `sweep`,
//! `validate`, and `preset` subcommands driven by JSON scenario files.
//!
//! All quantities are cgs (centimeters, seconds, ergs, statcoulombs);
//! [`units::Quantity`] parses human-friendly inputs like `"20 um"` or
//! `"30 GHz"` and converts them to those base units.

// Reference constants and quadrature nodes keep every digit of their source.
#![allow(clippy::excessive_precision)]

pub mod atom;
pub mod constants;
pub mod coupling;
pub mod error;
pub mod excitation;
pub mod gas;
pub mod kernel;
pub mod mirror;
pub mod quad;
pub mod scenario;
pub mod units;
pub mod validity;

pub use atom::{dipole_sq_scale, make_transition, transition_frequency, RydbergTransition};
pub use constants::{constants, PhysicalConstants, CONSTANTS};
pub use coupling::{
    image_field, interaction_coefficient, perturbation_coefficient, static_cp_potential,
    DipoleExpectation, PerturbationCoefficient, SIGMA,
};
pub use error::{Error, Result};
pub use excitation::{
    amplitude_spectral, amplitude_time_domain, amplitude_time_domain_with, coupling_rate,
    drive_integral_harmonic, probability_resonant, probability_scaling, scaling_constant,
    CouplingModel, ExcitationResult, Method,
};
pub use gas::{
    excited_count_closed_form, excited_count_quadrature, excited_count_scaled, GasProfile,
    ProfileShape, TabulatedProfile, GAUSSIAN_SUPPORT_SIGMAS,
};
pub use mirror::{MirrorMotion, MotionSpectrum, Shape, TabulatedShape};
pub use scenario::{
    preset, preset_names, run_single, run_sweep, validate, write_csv, write_json, ResultRow,
    ScenarioConfig, SweepTable, PRESETS,
};
pub use units::{Dimension, Quantity, Unit};
pub use validity::{
    check_amplitude, check_near_zone, check_perturbative, full_report, interaction_hierarchy,
    photon_excitation_bound, Check, Flag, PhotonComparison, PhotonInputs, ScenarioSummary,
    ValidityReport,
};
