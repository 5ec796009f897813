//! Collective excitation of a dilute gas column near the mirror.
//!
//! Atoms are distributed along the mirror normal with a line density
//! rho(z) normalized to the atom number N. Each atom at distance z is
//! excited independently with the resonant single-atom probability
//! P(z) = C a^2 n^8 t^2 / z^8, so the expected number of excited atoms is
//!
//! ```text
//! N_e = int rho(z) P(z) dz.
//! ```
//!
//! For a parabolic cloud of half-width R centred at z_c = zbar R,
//! rho = (3N / 4R) [1 - ((z - z_c)/R)^2], the integral has the closed form
//!
//! ```text
//! N_e = (C / 35) (3 + 42 zbar^2 + 35 zbar^4) / (zbar^2 - 1)^6
//!       * N a^2 n^8 t^2 / R^8,
//! ```
//!
//! which exceeds N P(z_c) because the z^{-8} weighting favors the near edge
//! of the cloud: the enhancement is 1 + 7.2/zbar^2 + O(zbar^-4).

use crate::error::{Error, Result};
use crate::excitation::probability_scaling;
use crate::quad::{integrate_with_breakpoints, QuadOptions};

/// Gaussian clouds are treated as supported within this many standard
/// deviations of the centre; the discarded tail mass is ~2.6e-12.
pub const GAUSSIAN_SUPPORT_SIGMAS: f64 = 7.0;

/// Arbitrary line-density profile, unit-normalized over its nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedProfile {
    positions: Vec<f64>,
    /// Values scaled so the trapezoid integral over the nodes is exactly 1.
    unit_density: Vec<f64>,
    /// Relative deviation of the raw input integral from 1, kept so callers
    /// can warn when an allegedly normalized input was not.
    raw_integral_deviation: f64,
}

impl TabulatedProfile {
    pub fn new(positions: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(Error::InvalidProfile {
                reason: format!(
                    "position and density columns differ in length ({} vs {})",
                    positions.len(),
                    values.len()
                ),
            });
        }
        if positions.len() < 2 {
            return Err(Error::InvalidProfile {
                reason: "a tabulated profile needs at least two samples".into(),
            });
        }
        if positions[0] <= 0.0 || !positions.iter().all(|p| p.is_finite()) {
            return Err(Error::InvalidProfile {
                reason: format!(
                    "profile positions must be positive distances, first is {:e}",
                    positions[0]
                ),
            });
        }
        for w in positions.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidProfile {
                    reason: format!("positions must be strictly increasing ({} then {})", w[0], w[1]),
                });
            }
        }
        if values.iter().any(|&v| !v.is_finite() || v < 0.0) {
            return Err(Error::InvalidProfile {
                reason: "density values must be finite and nonnegative".into(),
            });
        }
        let mut raw = 0.0;
        for i in 0..positions.len() - 1 {
            raw += 0.5 * (values[i] + values[i + 1]) * (positions[i + 1] - positions[i]);
        }
        if raw <= 0.0 {
            return Err(Error::InvalidProfile {
                reason: "profile integrates to zero".into(),
            });
        }
        let unit_density = values.iter().map(|&v| v / raw).collect();
        Ok(TabulatedProfile {
            positions,
            unit_density,
            raw_integral_deviation: (raw - 1.0).abs(),
        })
    }

    /// Two whitespace-separated columns (position, density); `#` comments.
    pub fn from_reader<R: std::io::BufRead>(reader: R) -> Result<Self> {
        let mut positions = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut cols = body.split_whitespace();
            let (Some(ps), Some(vs)) = (cols.next(), cols.next()) else {
                return Err(Error::InvalidProfile {
                    reason: format!("line {}: expected two columns", lineno + 1),
                });
            };
            if cols.next().is_some() {
                return Err(Error::InvalidProfile {
                    reason: format!("line {}: more than two columns", lineno + 1),
                });
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|_| Error::InvalidProfile {
                    reason: format!("line {}: cannot parse `{s}` as a number", lineno + 1),
                })
            };
            positions.push(parse(ps)?);
            values.push(parse(vs)?);
        }
        TabulatedProfile::new(positions, values)
    }

    pub fn from_path<P: AsRef<std::path::Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        TabulatedProfile::from_reader(std::io::BufReader::new(file))
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    /// How far the raw input was from unit normalization.
    pub fn raw_integral_deviation(&self) -> f64 {
        self.raw_integral_deviation
    }

    fn unit_density_at(&self, z: f64) -> f64 {
        let (lo, hi) = (self.positions[0], *self.positions.last().unwrap());
        if z < lo || z > hi {
            return 0.0;
        }
        let i = match self.positions.partition_point(|&x| x <= z) {
            0 => 0,
            k if k >= self.positions.len() => self.positions.len() - 2,
            k => k - 1,
        };
        let (p0, p1) = (self.positions[i], self.positions[i + 1]);
        let (f0, f1) = (self.unit_density[i], self.unit_density[i + 1]);
        f0 + (f1 - f0) * (z - p0) / (p1 - p0)
    }
}

/// Line-density shape along the mirror normal.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileShape {
    /// rho proportional to 1 - ((z - z_center)/half_width)^2 on its support.
    Parabolic { z_center: f64, half_width: f64 },
    /// Untruncated Gaussian density; the support used for integration is
    /// z_center +/- GAUSSIAN_SUPPORT_SIGMAS * sigma_z.
    Gaussian { z_center: f64, sigma_z: f64 },
    Tabulated(TabulatedProfile),
}

impl ProfileShape {
    pub fn parabolic(z_center: f64, half_width: f64) -> Result<Self> {
        if !(z_center.is_finite() && z_center > 0.0 && half_width.is_finite() && half_width > 0.0)
        {
            return Err(Error::InvalidProfile {
                reason: format!(
                    "parabolic profile needs positive centre and half-width, got {z_center:e}, {half_width:e}"
                ),
            });
        }
        if z_center - half_width <= 0.0 {
            return Err(Error::InvalidProfile {
                reason: format!(
                    "parabolic cloud [{:e}, {:e}] reaches nonpositive distances",
                    z_center - half_width,
                    z_center + half_width
                ),
            });
        }
        Ok(ProfileShape::Parabolic {
            z_center,
            half_width,
        })
    }

    pub fn gaussian(z_center: f64, sigma_z: f64) -> Result<Self> {
        if !(z_center.is_finite() && z_center > 0.0 && sigma_z.is_finite() && sigma_z > 0.0) {
            return Err(Error::InvalidProfile {
                reason: format!(
                    "gaussian profile needs positive centre and width, got {z_center:e}, {sigma_z:e}"
                ),
            });
        }
        if z_center - GAUSSIAN_SUPPORT_SIGMAS * sigma_z <= 0.0 {
            return Err(Error::InvalidProfile {
                reason: format!(
                    "gaussian support reaches nonpositive distances (centre {z_center:e}, {GAUSSIAN_SUPPORT_SIGMAS} sigma = {:e})",
                    GAUSSIAN_SUPPORT_SIGMAS * sigma_z
                ),
            });
        }
        Ok(ProfileShape::Gaussian { z_center, sigma_z })
    }
}

/// A cloud of `n_atoms` atoms with a given line-density shape.
#[derive(Debug, Clone, PartialEq)]
pub struct GasProfile {
    pub n_atoms: f64,
    pub shape: ProfileShape,
    /// Transverse cloud size, cm; carried for reporting, the axial problem
    /// does not depend on it.
    pub transverse_extent: Option<f64>,
}

impl GasProfile {
    pub fn new(n_atoms: f64, shape: ProfileShape, transverse_extent: Option<f64>) -> Result<Self> {
        if !(n_atoms.is_finite() && n_atoms > 0.0) {
            return Err(Error::InvalidProfile {
                reason: format!("atom number must be positive, got {n_atoms:e}"),
            });
        }
        if let Some(w) = transverse_extent {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidProfile {
                    reason: format!("transverse extent must be positive, got {w:e}"),
                });
            }
        }
        Ok(GasProfile {
            n_atoms,
            shape,
            transverse_extent,
        })
    }

    /// Where the density is treated as nonzero.
    pub fn support_bounds(&self) -> (f64, f64) {
        match &self.shape {
            ProfileShape::Parabolic {
                z_center,
                half_width,
            } => (z_center - half_width, z_center + half_width),
            ProfileShape::Gaussian { z_center, sigma_z } => (
                z_center - GAUSSIAN_SUPPORT_SIGMAS * sigma_z,
                z_center + GAUSSIAN_SUPPORT_SIGMAS * sigma_z,
            ),
            ProfileShape::Tabulated(tab) => {
                (tab.positions[0], *tab.positions.last().unwrap())
            }
        }
    }

    /// Line density at distance z, atoms/cm.
    pub fn density(&self, z: f64) -> Result<f64> {
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::NonpositivePosition { z });
        }
        Ok(match &self.shape {
            ProfileShape::Parabolic {
                z_center,
                half_width,
            } => {
                let u = (z - z_center) / half_width;
                if u.abs() >= 1.0 {
                    0.0
                } else {
                    0.75 * self.n_atoms / half_width * (1.0 - u * u)
                }
            }
            ProfileShape::Gaussian { z_center, sigma_z } => {
                let u = (z - z_center) / sigma_z;
                self.n_atoms / (sigma_z * (std::f64::consts::TAU).sqrt())
                    * (-0.5 * u * u).exp()
            }
            ProfileShape::Tabulated(tab) => self.n_atoms * tab.unit_density_at(z),
        })
    }
}

fn check_gas_inputs(profile: &GasProfile, amplitude: f64, t: f64) -> Result<(f64, f64)> {
    if !(amplitude.is_finite() && amplitude >= 0.0) {
        return Err(Error::InvalidInput {
            reason: format!("mirror amplitude must be >= 0, got {amplitude:e}"),
        });
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidTime { t });
    }
    let (lo, hi) = profile.support_bounds();
    if lo <= amplitude {
        return Err(Error::SupportTouchesWall {
            z_min: lo,
            amplitude,
        });
    }
    Ok((lo, hi))
}

/// Expected excited count N_e = int rho(z) P(z) dz by adaptive quadrature.
/// Works for every profile shape; the cloud must clear the mirror's swing.
pub fn excited_count_quadrature(
    profile: &GasProfile,
    n: u32,
    amplitude: f64,
    t: f64,
) -> Result<f64> {
    let (lo, hi) = check_gas_inputs(profile, amplitude, t)?;
    let breakpoints = match &profile.shape {
        ProfileShape::Tabulated(tab) => tab.positions.clone(),
        _ => Vec::new(),
    };
    // validate scaling-law inputs once up front (z = hi is safely > a)
    probability_scaling(n, hi, amplitude, t)?;
    let opts = QuadOptions {
        rel_tol: 1e-9,
        ..QuadOptions::default()
    };
    let r = integrate_with_breakpoints(
        |z| profile.density(z).unwrap() * probability_scaling(n, z, amplitude, t).unwrap(),
        lo,
        hi,
        hi - lo,
        &breakpoints,
        &opts,
    )?;
    Ok(r.value)
}

/// N_e from a known single-atom probability at a reference distance. The
/// drive integral is independent of z while the coupling scales as z^-4, so
/// P(z) = P(z_ref) (z_ref / z)^8 for any waveform, resonant or not:
///
/// ```text
/// N_e = int rho(z) P(z_ref) (z_ref / z)^8 dz.
/// ```
pub fn excited_count_scaled(
    profile: &GasProfile,
    reference_probability: f64,
    z_reference: f64,
    amplitude: f64,
) -> Result<f64> {
    if !(reference_probability.is_finite() && reference_probability >= 0.0) {
        return Err(Error::InvalidInput {
            reason: format!("reference probability must be >= 0, got {reference_probability:e}"),
        });
    }
    if !(z_reference.is_finite() && z_reference > 0.0) {
        return Err(Error::NonpositiveDistance { z: z_reference });
    }
    let (lo, hi) = check_gas_inputs(profile, amplitude, 0.0)?;
    let breakpoints = match &profile.shape {
        ProfileShape::Tabulated(tab) => tab.positions.clone(),
        _ => Vec::new(),
    };
    let opts = QuadOptions {
        rel_tol: 1e-9,
        ..QuadOptions::default()
    };
    let r = integrate_with_breakpoints(
        |z| profile.density(z).unwrap() * reference_probability * (z_reference / z).powi(8),
        lo,
        hi,
        hi - lo,
        &breakpoints,
        &opts,
    )?;
    Ok(r.value)
}

/// Closed-form N_e for a parabolic cloud (see the module formula).
pub fn excited_count_closed_form(
    profile: &GasProfile,
    n: u32,
    amplitude: f64,
    t: f64,
) -> Result<f64> {
    let ProfileShape::Parabolic {
        z_center,
        half_width,
    } = profile.shape
    else {
        return Err(Error::InvalidInput {
            reason: "the closed form applies to parabolic profiles only".into(),
        });
    };
    let zbar = z_center / half_width;
    if zbar <= 1.0 {
        return Err(Error::InvalidGeometry { z_bar: zbar });
    }
    check_gas_inputs(profile, amplitude, t)?;
    if n == 0 {
        return Err(Error::InvalidQuantumNumber { n });
    }
    let c = crate::excitation::scaling_constant();
    let zb2 = zbar * zbar;
    let shape_factor = (3.0 + 42.0 * zb2 + 35.0 * zb2 * zb2) / (zb2 - 1.0).powi(6) / 35.0;
    let n8 = (n as f64).powi(8);
    Ok(profile.n_atoms * c * amplitude * amplitude * n8 * t * t / half_width.powi(8)
        * shape_factor)
}
