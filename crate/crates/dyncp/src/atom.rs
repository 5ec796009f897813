//! Rydberg transitions: frequencies and dipole matrix elements.
//!
//! For principal quantum numbers n -> n' (n' > n) the transition angular
//! frequency follows from the hydrogenic level energies E_n = -Ry / n^2:
//!
//! ```text
//! omega_0 = (Ry / hbar) (1/n^2 - 1/n'^2)
//! ```
//!
//! Near-resonant neighbor transitions between high-n states have dipole
//! matrix elements growing as n^2 a_0 e, so the squared scale used for
//! coupling strengths is
//!
//! ```text
//! S(n) = e^2 a_0^2 n^4
//! ```
//!
//! in cgs units (statC^2 cm^2).

use crate::constants::constants;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A two-level upward transition n -> n' with its derived coupling inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RydbergTransition {
    pub n_initial: u32,
    pub n_final: u32,
    /// Angular frequency omega_0 in rad/s.
    pub omega0: f64,
    /// Squared dipole scale S = e^2 a_0^2 n^4 in statC^2 cm^2,
    /// evaluated at n_initial.
    pub dipole_sq: f64,
}

/// Angular frequency of the n -> n' hydrogenic transition, rad/s.
pub fn transition_frequency(n: u32, n_prime: u32) -> Result<f64> {
    validate_pair(n, n_prime)?;
    let c = constants();
    let (ni, nf) = (n as f64, n_prime as f64);
    Ok(c.rydberg_energy / c.hbar * (1.0 / (ni * ni) - 1.0 / (nf * nf)))
}

/// Squared dipole scale S(n) = e^2 a_0^2 n^4, statC^2 cm^2.
pub fn dipole_sq_scale(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumber { n });
    }
    let c = constants();
    let n4 = (n as f64).powi(4);
    Ok(c.electron_charge.powi(2) * c.bohr_radius.powi(2) * n4)
}

/// Build a transition; the dipole scale is evaluated at `n_initial`.
pub fn make_transition(n_initial: u32, n_final: u32) -> Result<RydbergTransition> {
    let omega0 = transition_frequency(n_initial, n_final)?;
    let dipole_sq = dipole_sq_scale(n_initial)?;
    Ok(RydbergTransition {
        n_initial,
        n_final,
        omega0,
        dipole_sq,
    })
}

fn validate_pair(n: u32, n_prime: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumber { n });
    }
    if n_prime <= n {
        return Err(Error::NotUpwardTransition { n, n_prime });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn frequency_75_to_77() {
        let w = transition_frequency(75, 77).unwrap();
        assert!(rel(w, 1.88418920209074249e11) < 1e-12, "{w:e}");
        // about 30 GHz
        let f_ghz = w / std::f64::consts::TAU / 1e9;
        assert!((f_ghz - 29.987803).abs() < 1e-4, "{f_ghz}");
    }

    #[test]
    fn frequency_50_to_52() {
        let w = transition_frequency(50, 52).unwrap();
        assert!(rel(w, 6.23789953072807129e11) < 1e-12);
        let f = w / std::f64::consts::TAU;
        assert!(rel(f, 9.92792544825986786e10) < 1e-12);
    }

    #[test]
    fn frequency_1_to_2_is_three_quarters_rydberg() {
        let w = transition_frequency(1, 2).unwrap();
        let c = constants();
        assert_eq!(w, 0.75 * c.rydberg_energy / c.hbar);
    }

    #[test]
    fn neighbor_gap_frequency_falls_with_n() {
        // Fixed gap n -> n+2: frequency scales ~ n^{-3}.
        let ratio = transition_frequency(150, 152).unwrap() / transition_frequency(75, 77).unwrap();
        assert!((ratio - 0.127467).abs() < 1e-5, "{ratio}");
        let mut prev = f64::INFINITY;
        for n in (10..300).step_by(10) {
            let w = transition_frequency(n, n + 2).unwrap();
            assert!(w < prev);
            prev = w;
        }
    }

    #[test]
    fn dipole_scale_values() {
        assert!(rel(dipole_sq_scale(1).unwrap(), 6.46047513399453389e-36) < 1e-12);
        assert!(rel(dipole_sq_scale(75).unwrap(), 2.04413471036545784e-28) < 1e-12);
    }

    #[test]
    fn dipole_scale_is_exactly_quartic() {
        let s1 = dipole_sq_scale(1).unwrap();
        for n in [2u32, 10, 75, 137] {
            let expect = s1 * (n as f64).powi(4);
            assert_eq!(dipole_sq_scale(n).unwrap(), expect);
        }
    }

    #[test]
    fn rejects_bad_quantum_numbers() {
        assert!(matches!(
            transition_frequency(0, 2),
            Err(Error::InvalidQuantumNumber { n: 0 })
        ));
        assert!(matches!(
            transition_frequency(77, 75),
            Err(Error::NotUpwardTransition { .. })
        ));
        assert!(matches!(
            transition_frequency(75, 75),
            Err(Error::NotUpwardTransition { .. })
        ));
        assert!(dipole_sq_scale(0).is_err());
    }

    #[test]
    fn make_transition_bundles_both() {
        let tr = make_transition(75, 77).unwrap();
        assert_eq!(tr.omega0, transition_frequency(75, 77).unwrap());
        assert_eq!(tr.dipole_sq, dipole_sq_scale(75).unwrap());
        assert_eq!((tr.n_initial, tr.n_final), (75, 77));
    }
}
