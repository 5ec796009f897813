//! Near-zone atom-mirror coupling through the instantaneous image field.
//!
//! An atom at distance z from a perfect mirror sees the quasi-electrostatic
//! field of its own image. With the mirror normal along z, the anisotropy
//! weights are sigma = (1, 1, 2) and, in cgs units,
//!
//! ```text
//! E_i(z)  = sigma_i d_i / (8 z^3)                  (image field)
//! V(z)    = -(sum_i sigma_i <d_i^2>) / (16 z^3)    (level shift)
//! ```
//!
//! which is the familiar -(<d_x^2> + <d_y^2> + 2 <d_z^2>) / (16 z^3) and
//! equals -(1/2) d.E, the factor 1/2 marking an induced rather than
//! permanent image.
//!
//! When the mirror oscillates, z(t) = z_0 [1 - (a/z_0) f(t)] and expanding
//! z^{-3} to first order in a/z_0 turns the coupling operator into a static
//! part plus a drive term with coefficient
//!
//! ```text
//! K = 3 a / (16 z_0^4)
//! ```
//!
//! multiplying f(t) and the sigma-weighted dipole operator. The discarded
//! remainder of the expansion obeys the sharp bound
//!
//! ```text
//! |(1 - e)^{-3} - 1 - 3 e| <= 6 e^2 / (1 - |e|)^3,  e = (a/z_0) f,
//! ```
//!
//! (termwise, since (k+1)(k+2)/2 <= 3 k (k-1) for k >= 2), which the tests
//! verify; the quality figure reported alongside K is the leading relative
//! correction 3 a / z_0.

use crate::error::{Error, Result};

/// Anisotropy weights (x, y, z) of the image interaction.
pub const SIGMA: [f64; 3] = [1.0, 1.0, 2.0];

/// Squared dipole expectation values per Cartesian component, statC^2 cm^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleExpectation {
    pub dxx: f64,
    pub dyy: f64,
    pub dzz: f64,
}

impl DipoleExpectation {
    pub fn new(dxx: f64, dyy: f64, dzz: f64) -> Result<Self> {
        for (name, v) in [("dxx", dxx), ("dyy", dyy), ("dzz", dzz)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidInput {
                    reason: format!("squared dipole component {name} must be >= 0, got {v:e}"),
                });
            }
        }
        Ok(DipoleExpectation { dxx, dyy, dzz })
    }

    /// Unpolarized state: a total <d^2> split equally over components.
    pub fn isotropic(total: f64) -> Result<Self> {
        DipoleExpectation::new(total / 3.0, total / 3.0, total / 3.0)
    }

    /// sum_i sigma_i <d_i^2> = dxx + dyy + 2 dzz.
    pub fn sigma_weighted(&self) -> f64 {
        SIGMA[0] * self.dxx + SIGMA[1] * self.dyy + SIGMA[2] * self.dzz
    }
}

fn check_distance(z: f64) -> Result<()> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::NonpositiveDistance { z });
    }
    Ok(())
}

/// Static level shift -(dxx + dyy + 2 dzz) / (16 z^3), erg.
pub fn static_cp_potential(d: &DipoleExpectation, z: f64) -> Result<f64> {
    check_distance(z)?;
    Ok(-d.sigma_weighted() / (16.0 * z.powi(3)))
}

/// Image field component seen by dipole component i: sigma_i d_i / (8 z^3).
pub fn image_field(dipole_component: f64, axis: usize, z: f64) -> Result<f64> {
    check_distance(z)?;
    if axis > 2 {
        return Err(Error::InvalidInput {
            reason: format!("axis index must be 0, 1, or 2, got {axis}"),
        });
    }
    Ok(SIGMA[axis] * dipole_component / (8.0 * z.powi(3)))
}

/// Coefficient of -sigma_ij d_i d_j in the interaction operator: 1/(16 z^3).
pub fn interaction_coefficient(z: f64) -> Result<f64> {
    check_distance(z)?;
    Ok(1.0 / (16.0 * z.powi(3)))
}

/// First-order drive coefficient and the quality of the linearization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationCoefficient {
    /// K = 3 a / (16 z_0^4), statC^-2 cm^-1 per unit dipole-squared.
    pub k: f64,
    /// Leading relative size of the dropped terms, 3 a / z_0.
    pub linearization_quality: f64,
}

/// Expand the oscillating coupling to first order in a/z_0.
pub fn perturbation_coefficient(z0: f64, amplitude: f64) -> Result<PerturbationCoefficient> {
    check_distance(z0)?;
    if !(amplitude.is_finite() && amplitude >= 0.0) || amplitude >= z0 {
        return Err(Error::AmplitudeExceedsDistance { amplitude, z0 });
    }
    Ok(PerturbationCoefficient {
        k: 3.0 * amplitude / (16.0 * z0.powi(4)),
        linearization_quality: 3.0 * amplitude / z0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::dipole_sq_scale;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn unit_inputs_give_minus_one_eighth() {
        // dxx = dyy = dzz = 1 at z = 0.5: -(1+1+2)/(16/8) = -2
        let d = DipoleExpectation::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(static_cp_potential(&d, 0.5).unwrap(), -2.0);
        // and at z = 1: -(4)/16 = -0.25; isotropic total 3 gives the same
        let iso = DipoleExpectation::isotropic(3.0).unwrap();
        assert_eq!(static_cp_potential(&iso, 1.0).unwrap(), -0.25);
        // single unit component along z at z = 1: -2/16 = -0.125
        let dz = DipoleExpectation::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(static_cp_potential(&dz, 1.0).unwrap(), -0.125);
    }

    #[test]
    fn rydberg_scale_potential() {
        let d = DipoleExpectation::isotropic(dipole_sq_scale(75).unwrap()).unwrap();
        let v = static_cp_potential(&d, 2e-3).unwrap();
        assert!(rel(v, -2.12930698996401828e-21) < 1e-12, "{v:e}");
    }

    #[test]
    fn potential_is_half_dipole_dot_field() {
        let d = DipoleExpectation::new(0.3, 0.5, 0.9).unwrap();
        let z = 1.7e-3;
        // treat <d_i^2> as d_i * d_i for a coherent check of the 1/2 factor
        let dot: f64 = [d.dxx, d.dyy, d.dzz]
            .iter()
            .enumerate()
            .map(|(i, &di2)| di2.sqrt() * image_field(di2.sqrt(), i, z).unwrap())
            .sum();
        let v = static_cp_potential(&d, z).unwrap();
        assert!(rel(v, -0.5 * dot) < 1e-12);
    }

    #[test]
    fn interaction_coefficient_matches_potential() {
        let d = DipoleExpectation::new(0.2, 0.4, 0.6).unwrap();
        let z = 3.3e-3;
        let via_coeff = -interaction_coefficient(z).unwrap() * d.sigma_weighted();
        assert_eq!(via_coeff, static_cp_potential(&d, z).unwrap());
    }

    #[test]
    fn cubic_distance_falloff() {
        let d = DipoleExpectation::isotropic(1.0).unwrap();
        let v1 = static_cp_potential(&d, 1e-3).unwrap();
        let v2 = static_cp_potential(&d, 2e-3).unwrap();
        assert!(rel(v1 / v2, 8.0) < 1e-12);
    }

    #[test]
    fn drive_coefficient_values() {
        let p = perturbation_coefficient(2e-3, 2e-4).unwrap();
        assert!(rel(p.k, 2.34375e6) < 1e-13);
        assert!(rel(p.linearization_quality, 0.3) < 1e-13);
        let still = perturbation_coefficient(2e-3, 0.0).unwrap();
        assert_eq!(still.k, 0.0);
        assert_eq!(still.linearization_quality, 0.0);
    }

    #[test]
    fn drive_coefficient_validation() {
        assert!(perturbation_coefficient(-1.0, 0.0).is_err());
        assert!(perturbation_coefficient(1.0, 1.0).is_err());
        assert!(perturbation_coefficient(1.0, -0.1).is_err());
    }

    #[test]
    fn linearization_remainder_obeys_sharp_bound() {
        // |(1-e)^{-3} - 1 - 3e| <= 6 e^2 (1-|e|)^{-3} over the working range
        for i in 0..=60 {
            let ratio = 0.3 * i as f64 / 60.0;
            for j in -10..=10 {
                let e = ratio * j as f64 / 10.0;
                let lhs = ((1.0 - e).powi(-3) - 1.0 - 3.0 * e).abs();
                let rhs = 6.0 * e * e * (1.0 - e.abs()).powi(-3);
                assert!(
                    lhs <= rhs * (1.0 + 1e-12) + 1e-15,
                    "e = {e}: {lhs} vs {rhs}"
                );
            }
        }
        // and the quadratic coefficient really is 6
        let e: f64 = 1e-6;
        let rem = (1.0 - e).powi(-3) - 1.0 - 3.0 * e;
        assert!((rem / (e * e) - 6.0).abs() < 1e-4);
    }

    #[test]
    fn rejects_negative_squared_dipoles() {
        assert!(DipoleExpectation::new(-0.1, 0.0, 0.0).is_err());
        assert!(DipoleExpectation::isotropic(-1.0).is_err());
        assert!(static_cp_potential(
            &DipoleExpectation::isotropic(1.0).unwrap(),
            0.0
        )
        .is_err());
    }
}
