//! Physical constants in Gaussian cgs units, pinned to CODATA-2018.
//!
//! Everything downstream works in cgs (cm, s, erg, statC), where the
//! electrostatic energy of two charges is e^2/r with no 4*pi*eps0. The
//! elementary charge is the exact SI value 1.602176634e-19 C converted to
//! statcoulombs (multiply by c_cgs/10); the identity Ry = e^2/(2*a0) then
//! holds to ~5e-10 relative, which doubles as a self-consistency test of the
//! table.

/// Fundamental constants in Gaussian cgs units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Elementary charge in statC: 1.602176634e-19 C * c/10.
    pub electron_charge: f64,
    /// Bohr radius in cm: 5.29177210903e-11 m.
    pub bohr_radius: f64,
    /// Reduced Planck constant in erg s: 1.054571817e-34 J s.
    pub hbar: f64,
    /// Speed of light in cm/s, exact.
    pub light_speed: f64,
    /// Rydberg energy hc*R_inf in erg: 2.1798723611035e-18 J.
    pub rydberg_energy: f64,
}

/// The CODATA-2018 table. A `const`, so every call site sees bit-identical
/// values.
pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    electron_charge: 4.80320471257026338e-10,
    bohr_radius: 5.29177210903e-9,
    hbar: 1.054571817e-27,
    light_speed: 2.99792458e10,
    rydberg_energy: 2.1798723611035e-11,
};

/// Accessor mirroring the rest of the API surface.
pub const fn constants() -> PhysicalConstants {
    CONSTANTS
}
