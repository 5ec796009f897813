//! Regime checks for the model's assumptions.
//!
//! The amplitude formulas rest on a stack of approximations, each with a
//! dimensionless ratio that should be small (or large, for the hierarchy):
//!
//! * near zone: every atom-mirror distance must sit well inside the
//!   transition wavelength, ratio = z_max omega_0 / (2 pi c);
//! * linearization: the drive expansion needs a/z_0 small;
//! * perturbation theory: the largest excitation probability must stay
//!   below unity, with 0.1 already worth flagging;
//! * interaction hierarchy: the wall-induced level shift S / (12 z_0^3)
//!   should dominate the atom-atom van der Waals scale
//!   C_6 / r^6, C_6 = (3/4) (S/4)^2 / (hbar omega_0), at the nearest
//!   neighbor distance r;
//! * photon background: stray thermal/blackbody photons excite at most
//!   (areal density) x (front area) atoms, which the mirror-induced signal
//!   should dwarf.
//!
//! Each check reports its ratio and a flag; a report's overall flag is the
//! worst among the flags present.

use crate::atom::RydbergTransition;
use crate::constants::constants;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Traffic-light verdict; ordering is by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Ok,
    Marginal,
    Invalid,
}

impl std::fmt::Display for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flag::Ok => "ok",
            Flag::Marginal => "marginal",
            Flag::Invalid => "invalid",
        })
    }
}

/// A dimensionless ratio and its verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub ratio: f64,
    pub flag: Flag,
}

pub const NEAR_ZONE_OK: f64 = 0.05;
pub const NEAR_ZONE_MARGINAL: f64 = 0.2;
pub const AMPLITUDE_OK: f64 = 0.1;
pub const AMPLITUDE_MARGINAL: f64 = 0.3;
pub const PERTURBATIVE_OK: f64 = 0.1;
pub const PERTURBATIVE_MARGINAL: f64 = 0.5;
pub const HIERARCHY_OK: f64 = 10.0;
pub const HIERARCHY_MARGINAL: f64 = 1.0;

/// z_max / (transition wavelength / 2 pi reduced measure): the quasi-static
/// image treatment needs z omega_0 / (2 pi c) << 1 at the farthest atom.
pub fn check_near_zone(z_max: f64, omega0: f64) -> Result<Check> {
    if !(z_max.is_finite() && z_max > 0.0) {
        return Err(Error::NonpositiveDistance { z: z_max });
    }
    if !(omega0.is_finite() && omega0 > 0.0) {
        return Err(Error::InvalidInput {
            reason: format!("transition frequency must be positive, got {omega0:e}"),
        });
    }
    let ratio = z_max * omega0 / (std::f64::consts::TAU * constants().light_speed);
    let flag = if ratio < NEAR_ZONE_OK {
        Flag::Ok
    } else if ratio < NEAR_ZONE_MARGINAL {
        Flag::Marginal
    } else {
        Flag::Invalid
    };
    Ok(Check { ratio, flag })
}

/// a/z_0, the linearization parameter; the boundaries are inclusive so a
/// drive at exactly a/z_0 = 0.1 still rates ok.
pub fn check_amplitude(amplitude: f64, z0: f64) -> Result<Check> {
    if !(z0.is_finite() && z0 > 0.0) {
        return Err(Error::NonpositiveDistance { z: z0 });
    }
    if !(amplitude.is_finite() && amplitude >= 0.0) || amplitude >= z0 {
        return Err(Error::AmplitudeExceedsDistance { amplitude, z0 });
    }
    let ratio = amplitude / z0;
    let flag = if ratio <= AMPLITUDE_OK {
        Flag::Ok
    } else if ratio <= AMPLITUDE_MARGINAL {
        Flag::Marginal
    } else {
        Flag::Invalid
    };
    Ok(Check { ratio, flag })
}

/// The largest first-order probability in the scenario.
pub fn check_perturbative(max_probability: f64) -> Result<Check> {
    if !(max_probability.is_finite() && max_probability >= 0.0) {
        return Err(Error::InvalidInput {
            reason: format!("probability must be >= 0, got {max_probability:e}"),
        });
    }
    let flag = if max_probability < PERTURBATIVE_OK {
        Flag::Ok
    } else if max_probability < PERTURBATIVE_MARGINAL {
        Flag::Marginal
    } else {
        Flag::Invalid
    };
    Ok(Check {
        ratio: max_probability,
        flag,
    })
}

/// Wall-induced shift scale S / (12 z_0^3), erg.
pub fn wall_shift_scale(dipole_sq: f64, z0: f64) -> Result<f64> {
    if !(z0.is_finite() && z0 > 0.0) {
        return Err(Error::NonpositiveDistance { z: z0 });
    }
    Ok(dipole_sq / (12.0 * z0.powi(3)))
}

/// Resonant van der Waals coefficient (3/4) (S/4)^2 / (hbar omega_0),
/// erg cm^6.
pub fn van_der_waals_c6(transition: &RydbergTransition) -> f64 {
    0.75 * (transition.dipole_sq / 4.0).powi(2) / (constants().hbar * transition.omega0)
}

/// Wall shift over the neighbor van der Waals shift at separation
/// `nearest_neighbor`; large means the mirror dominates the dynamics.
pub fn interaction_hierarchy(
    transition: &RydbergTransition,
    z0: f64,
    nearest_neighbor: f64,
) -> Result<Check> {
    if !(nearest_neighbor.is_finite() && nearest_neighbor > 0.0) {
        return Err(Error::InvalidInput {
            reason: format!(
                "nearest neighbor distance must be positive, got {nearest_neighbor:e}"
            ),
        });
    }
    let wall = wall_shift_scale(transition.dipole_sq, z0)?;
    let vdw = van_der_waals_c6(transition) / nearest_neighbor.powi(6);
    let ratio = wall / vdw;
    let flag = if ratio >= HIERARCHY_OK {
        Flag::Ok
    } else if ratio >= HIERARCHY_MARGINAL {
        Flag::Marginal
    } else {
        Flag::Invalid
    };
    Ok(Check { ratio, flag })
}

/// Upper bound on photon-driven excitations: areal density times the cloud's
/// front area.
pub fn photon_excitation_bound(areal_density_per_cm2: f64, front_area_cm2: f64) -> Result<f64> {
    for (name, v) in [
        ("areal density", areal_density_per_cm2),
        ("front area", front_area_cm2),
    ] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::InvalidInput {
                reason: format!("{name} must be >= 0, got {v:e}"),
            });
        }
    }
    Ok(areal_density_per_cm2 * front_area_cm2)
}

/// Photon inputs for the background comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonInputs {
    pub areal_density_per_cm2: f64,
    pub front_area_cm2: f64,
}

/// Mirror-induced signal against the photon background bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonComparison {
    pub bound: f64,
    pub reference_probability: f64,
    /// reference_probability / bound; infinite when the bound is zero.
    pub contrast: f64,
}

/// Everything the checks need to know about a configured run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioSummary {
    pub transition: RydbergTransition,
    pub z0: f64,
    pub amplitude: f64,
    /// Farthest atom-mirror distance (z_0, or the cloud's far edge).
    pub z_max: f64,
    /// Largest first-order probability anywhere in the scenario.
    pub max_probability: f64,
    /// Signal size used for the photon contrast.
    pub reference_probability: f64,
    pub nearest_neighbor: Option<f64>,
    pub photon: Option<PhotonInputs>,
}

/// Verdicts for one scenario; `overall` is the worst flag present.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub near_zone: Check,
    pub amplitude: Check,
    pub perturbative: Check,
    pub hierarchy: Option<Check>,
    pub photon: Option<PhotonComparison>,
    pub overall: Flag,
}

pub fn full_report(summary: &ScenarioSummary) -> Result<ValidityReport> {
    let near_zone = check_near_zone(summary.z_max, summary.transition.omega0)?;
    let amplitude = check_amplitude(summary.amplitude, summary.z0)?;
    let perturbative = check_perturbative(summary.max_probability)?;
    let hierarchy = summary
        .nearest_neighbor
        .map(|nn| interaction_hierarchy(&summary.transition, summary.z0, nn))
        .transpose()?;
    let photon = summary
        .photon
        .map(|p| -> Result<PhotonComparison> {
            let bound = photon_excitation_bound(p.areal_density_per_cm2, p.front_area_cm2)?;
            Ok(PhotonComparison {
                bound,
                reference_probability: summary.reference_probability,
                contrast: summary.reference_probability / bound,
            })
        })
        .transpose()?;
    let mut overall = near_zone.flag.max(amplitude.flag).max(perturbative.flag);
    if let Some(h) = hierarchy {
        overall = overall.max(h.flag);
    }
    Ok(ValidityReport {
        near_zone,
        amplitude,
        perturbative,
        hierarchy,
        photon,
        overall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::make_transition;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn paper_summary() -> ScenarioSummary {
        let tr = make_transition(75, 77).unwrap();
        ScenarioSummary {
            transition: tr,
            z0: 2e-3,
            amplitude: 2e-4,
            z_max: 2e-3,
            max_probability: 0.206390296119846745,
            reference_probability: 0.206390296119846745,
            nearest_neighbor: Some(1e-3),
            photon: Some(PhotonInputs {
                areal_density_per_cm2: 0.1,
                front_area_cm2: 1e-5,
            }),
        }
    }

    #[test]
    fn near_zone_ratios() {
        let tr = make_transition(75, 77).unwrap();
        let single = check_near_zone(2e-3, tr.omega0).unwrap();
        assert!(rel(single.ratio, 2.000571e-3) < 1e-6, "{:e}", single.ratio);
        assert_eq!(single.flag, Flag::Ok);
        let gas = check_near_zone(3e-3, tr.omega0).unwrap();
        assert!(rel(gas.ratio, 3.000856e-3) < 1e-6);
        // a quarter wavelength out is no longer near zone
        let far = check_near_zone(0.25, tr.omega0).unwrap();
        assert_eq!(far.flag, Flag::Invalid);
        let edge = check_near_zone(0.1, tr.omega0).unwrap();
        assert_eq!(edge.flag, Flag::Marginal);
    }

    #[test]
    fn amplitude_boundaries_are_inclusive() {
        // 2e-4 / 2e-3 is exactly 0.1 in binary, sitting right on the edge
        assert_eq!(check_amplitude(2e-4, 2e-3).unwrap().flag, Flag::Ok);
        assert_eq!(check_amplitude(0.1001, 1.0).unwrap().flag, Flag::Marginal);
        assert_eq!(check_amplitude(0.3, 1.0).unwrap().flag, Flag::Marginal);
        assert_eq!(check_amplitude(0.301, 1.0).unwrap().flag, Flag::Invalid);
        assert_eq!(check_amplitude(0.0, 1.0).unwrap().flag, Flag::Ok);
        assert!(check_amplitude(1.0, 1.0).is_err());
    }

    #[test]
    fn perturbative_boundaries() {
        assert_eq!(check_perturbative(0.05).unwrap().flag, Flag::Ok);
        assert_eq!(check_perturbative(0.2064).unwrap().flag, Flag::Marginal);
        assert_eq!(check_perturbative(0.5).unwrap().flag, Flag::Invalid);
        assert_eq!(check_perturbative(3.3).unwrap().flag, Flag::Invalid);
        assert!(check_perturbative(-0.1).is_err());
        assert!(check_perturbative(f64::NAN).is_err());
    }

    #[test]
    fn hierarchy_ratio_for_the_reference_cloud() {
        let tr = make_transition(75, 77).unwrap();
        let h = interaction_hierarchy(&tr, 2e-3, 1e-3).unwrap();
        assert!(rel(h.ratio, 216.012381) < 1e-6, "{}", h.ratio);
        assert_eq!(h.flag, Flag::Ok);
        // denser packing raises the vdW shift as r^-6: 216/64, then 216*0.4^6
        assert_eq!(
            interaction_hierarchy(&tr, 2e-3, 5e-4).unwrap().flag,
            Flag::Marginal
        );
        assert_eq!(
            interaction_hierarchy(&tr, 2e-3, 4e-4).unwrap().flag,
            Flag::Invalid
        );
    }

    #[test]
    fn photon_bound_and_contrast() {
        let b = photon_excitation_bound(0.1, 1e-5).unwrap();
        assert!(rel(b, 1e-6) < 1e-12);
        let report = full_report(&paper_summary()).unwrap();
        let photon = report.photon.unwrap();
        assert!(rel(photon.contrast, 2.0639e5) < 1e-3, "{}", photon.contrast);
        assert!(photon.contrast > 1e4);
    }

    #[test]
    fn full_report_flags_for_the_reference_scenarios() {
        let report = full_report(&paper_summary()).unwrap();
        assert_eq!(report.near_zone.flag, Flag::Ok);
        assert_eq!(report.amplitude.flag, Flag::Ok);
        assert_eq!(report.perturbative.flag, Flag::Marginal);
        assert_eq!(report.hierarchy.unwrap().flag, Flag::Ok);
        assert_eq!(report.overall, Flag::Marginal);

        // the gas cloud's near edge blows past unit probability
        let mut gas = paper_summary();
        gas.z_max = 3e-3;
        gas.max_probability = 3.30224473791754702;
        let report = full_report(&gas).unwrap();
        assert_eq!(report.perturbative.flag, Flag::Invalid);
        assert_eq!(report.overall, Flag::Invalid);
    }

    #[test]
    fn optional_checks_stay_out_of_overall_when_absent() {
        let mut s = paper_summary();
        s.nearest_neighbor = None;
        s.photon = None;
        s.max_probability = 0.01;
        s.reference_probability = 0.01;
        let report = full_report(&s).unwrap();
        assert!(report.hierarchy.is_none());
        assert!(report.photon.is_none());
        assert_eq!(report.overall, Flag::Ok);
    }

    #[test]
    fn severity_ordering() {
        assert!(Flag::Ok < Flag::Marginal);
        assert!(Flag::Marginal < Flag::Invalid);
        assert_eq!(Flag::Ok.max(Flag::Invalid), Flag::Invalid);
        assert_eq!(format!("{}", Flag::Marginal), "marginal");
    }
}
