//! Scenario configuration, execution, and tabular output.
//!
//! A scenario is a JSON document naming a transition, the mirror geometry
//! and waveform, the observation time, and optionally a gas cloud, a photon
//! background, and sweep axes. Dimensional fields accept quantity strings
//! (`"20 um"`, `"30 GHz"`) or bare numbers in cgs base units; drive
//! frequencies additionally accept `"resonant"`, which resolves to the
//! transition frequency.
//!
//! ```json
//! {
//!   "transition": { "n": 75, "n_prime": 77 },
//!   "mirror": {
//!     "z0": "20 um",
//!     "amplitude": "2 um",
//!     "shape": { "type": "harmonic", "omega": "resonant", "phase": 0.0 }
//!   },
//!   "time": "2 us",
//!   "sweep": [
//!     { "parameter": "mirror.z0", "start": "15 um", "stop": "60 um",
//!       "points": 20, "spacing": "log" }
//!   ]
//! }
//! ```
//!
//! Sweeps run in lexicographic order with the first axis slowest; a `time`
//! array acts as an implicit fastest axis. Rows that fail keep their input
//! echo and record the failure in an `error` column while the sweep
//! continues. Tables serialize to CSV (floats at full precision) or to a
//! JSON mirror `{ "columns": [...], "rows": [{...}] }`.

use crate::atom::make_transition;
use crate::error::{Error, Result};
use crate::excitation::{
    amplitude_time_domain, probability_resonant, probability_scaling,
};
use crate::gas::{
    excited_count_closed_form, excited_count_quadrature, excited_count_scaled, GasProfile,
    ProfileShape, TabulatedProfile,
};
use crate::mirror::{MirrorMotion, Shape, TabulatedShape};
use crate::units::{Dimension, Quantity};
use crate::validity::{full_report, Flag, PhotonInputs, ScenarioSummary, ValidityReport};
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Built-in scenario files, embedded at compile time.
pub const PRESETS: &[(&str, &str)] = &[
    (
        "paper_single_atom",
        include_str!("../presets/paper_single_atom.json"),
    ),
    ("paper_gas", include_str!("../presets/paper_gas.json")),
    (
        "paper_photon_comparison",
        include_str!("../presets/paper_photon_comparison.json"),
    ),
    (
        "square_train_demo",
        include_str!("../presets/square_train_demo.json"),
    ),
];

/// Names of the embedded presets.
pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(name, _)| *name).collect()
}

/// Load an embedded preset by name.
pub fn preset(name: &str) -> Result<ScenarioConfig> {
    for (candidate, text) in PRESETS {
        if *candidate == name {
            return ScenarioConfig::from_json_str(text, Path::new("."));
        }
    }
    Err(Error::UnknownPreset {
        name: name.to_string(),
        available: preset_names().join(", "),
    })
}

/// Drive frequency: pinned to the transition or fixed in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OmegaSpec {
    Resonant,
    Fixed(f64),
}

/// Waveform description before the transition frequency is known.
#[derive(Debug, Clone, PartialEq)]
pub enum ShapeSpec {
    Harmonic { omega: OmegaSpec, phase: f64 },
    SquareTrain { rep_rate: OmegaSpec, duty: f64 },
    Tabulated(TabulatedShape),
}

impl ShapeSpec {
    fn resolve(&self, omega0: f64) -> Result<Shape> {
        let pick = |spec: OmegaSpec| match spec {
            OmegaSpec::Resonant => omega0,
            OmegaSpec::Fixed(w) => w,
        };
        match self {
            ShapeSpec::Harmonic { omega, phase } => Shape::harmonic(pick(*omega), *phase),
            ShapeSpec::SquareTrain { rep_rate, duty } => {
                Shape::square_train(pick(*rep_rate), *duty)
            }
            ShapeSpec::Tabulated(tab) => Ok(Shape::Tabulated(tab.clone())),
        }
    }
}

/// Gas cloud description.
#[derive(Debug, Clone, PartialEq)]
pub struct GasSpec {
    pub n_atoms: f64,
    pub profile: ProfileSpec,
    pub transverse_extent: Option<f64>,
    pub nearest_neighbor: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSpec {
    Parabolic { z_center: f64, half_width: f64 },
    Gaussian { z_center: f64, sigma_z: f64 },
    Tabulated(TabulatedProfile),
}

impl ProfileSpec {
    fn build(&self) -> Result<ProfileShape> {
        match self {
            ProfileSpec::Parabolic {
                z_center,
                half_width,
            } => ProfileShape::parabolic(*z_center, *half_width),
            ProfileSpec::Gaussian { z_center, sigma_z } => {
                ProfileShape::gaussian(*z_center, *sigma_z)
            }
            ProfileSpec::Tabulated(tab) => Ok(ProfileShape::Tabulated(tab.clone())),
        }
    }
}

/// Swept parameter paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Time,
    TransitionN,
    MirrorZ0,
    MirrorAmplitude,
    GasZCenter,
    GasHalfWidth,
    GasNAtoms,
}

impl SweepParameter {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "time" => SweepParameter::Time,
            "transition.n" => SweepParameter::TransitionN,
            "mirror.z0" => SweepParameter::MirrorZ0,
            "mirror.amplitude" => SweepParameter::MirrorAmplitude,
            "gas.z_center" => SweepParameter::GasZCenter,
            "gas.half_width" => SweepParameter::GasHalfWidth,
            "gas.n_atoms" => SweepParameter::GasNAtoms,
            other => {
                return Err(Error::Config {
                    key_path: "sweep.parameter".into(),
                    reason: format!(
                        "unknown parameter `{other}`; expected one of time, transition.n, \
                         mirror.z0, mirror.amplitude, gas.z_center, gas.half_width, gas.n_atoms"
                    ),
                })
            }
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParameter::Time => "time",
            SweepParameter::TransitionN => "transition.n",
            SweepParameter::MirrorZ0 => "mirror.z0",
            SweepParameter::MirrorAmplitude => "mirror.amplitude",
            SweepParameter::GasZCenter => "gas.z_center",
            SweepParameter::GasHalfWidth => "gas.half_width",
            SweepParameter::GasNAtoms => "gas.n_atoms",
        }
    }

    fn dimension(&self) -> Dimension {
        match self {
            SweepParameter::Time => Dimension::Time,
            SweepParameter::TransitionN | SweepParameter::GasNAtoms => Dimension::Dimensionless,
            _ => Dimension::Length,
        }
    }
}

/// One sweep axis with its resolved values in base units.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// Default ceiling on the number of sweep points.
pub const DEFAULT_SWEEP_CAP: usize = 1_000_000;

/// A fully resolved scenario in cgs base units.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub n: u32,
    pub n_prime: u32,
    pub z0: f64,
    pub amplitude: f64,
    pub shape: ShapeSpec,
    /// Observation times; more than one acts as an implicit fastest axis.
    pub times: Vec<f64>,
    pub gas: Option<GasSpec>,
    pub photon: Option<PhotonInputs>,
    pub sweep: Vec<SweepAxis>,
    pub sweep_cap: usize,
}

// ---------------------------------------------------------------------------
// JSON parsing

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    transition: RawTransition,
    mirror: RawMirror,
    time: serde_json::Value,
    gas: Option<RawGas>,
    photon: Option<RawPhoton>,
    #[serde(default)]
    sweep: Vec<RawAxis>,
    sweep_cap: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    n: u32,
    n_prime: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMirror {
    z0: serde_json::Value,
    amplitude: serde_json::Value,
    shape: RawShape,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RawShape {
    Harmonic {
        omega: serde_json::Value,
        #[serde(default)]
        phase: f64,
    },
    SquareTrain {
        rep_rate: serde_json::Value,
        duty: f64,
    },
    Tabulated {
        path: String,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGas {
    n_atoms: f64,
    profile: RawProfile,
    transverse_extent: Option<serde_json::Value>,
    nearest_neighbor: Option<serde_json::Value>,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RawProfile {
    Parabolic {
        z_center: serde_json::Value,
        half_width: serde_json::Value,
    },
    Gaussian {
        z_center: serde_json::Value,
        sigma_z: serde_json::Value,
    },
    Tabulated {
        path: String,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhoton {
    areal_density_per_cm2: f64,
    front_area_cm2: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    parameter: String,
    values: Option<Vec<serde_json::Value>>,
    start: Option<serde_json::Value>,
    stop: Option<serde_json::Value>,
    points: Option<usize>,
    spacing: Option<String>,
}

fn config_err(key_path: &str, reason: impl Into<String>) -> Error {
    Error::Config {
        key_path: key_path.to_string(),
        reason: reason.into(),
    }
}

/// Parse a JSON value as a quantity of the expected dimension, in base
/// units. Bare numbers are taken to already be in base units.
fn parse_value(value: &serde_json::Value, expected: Dimension, key_path: &str) -> Result<f64> {
    match value {
        serde_json::Value::Number(x) => x
            .as_f64()
            .filter(|v| v.is_finite())
            .ok_or_else(|| config_err(key_path, "number is not finite")),
        serde_json::Value::String(s) => {
            let q = Quantity::parse(s).map_err(|e| config_err(key_path, e.to_string()))?;
            let dim = q.unit.dimension();
            if dim != expected && dim != Dimension::Dimensionless {
                return Err(config_err(
                    key_path,
                    format!("expected a {expected:?} quantity, got {dim:?} (`{s}`)"),
                ));
            }
            Ok(q.to_base())
        }
        other => Err(config_err(
            key_path,
            format!("expected a number or quantity string, got {other}"),
        )),
    }
}

/// Like `parse_value`, but `"resonant"` defers to the transition frequency.
fn parse_omega(value: &serde_json::Value, key_path: &str) -> Result<OmegaSpec> {
    if let serde_json::Value::String(s) = value {
        if s.trim().eq_ignore_ascii_case("resonant") {
            return Ok(OmegaSpec::Resonant);
        }
    }
    Ok(OmegaSpec::Fixed(parse_value(
        value,
        Dimension::Frequency,
        key_path,
    )?))
}

fn parse_times(value: &serde_json::Value, key_path: &str) -> Result<Vec<f64>> {
    let entries: Vec<&serde_json::Value> = match value {
        serde_json::Value::Array(items) => items.iter().collect(),
        single => vec![single],
    };
    if entries.is_empty() {
        return Err(config_err(key_path, "time array is empty"));
    }
    entries
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let t = parse_value(v, Dimension::Time, &format!("{key_path}[{i}]"))?;
            if t < 0.0 {
                return Err(config_err(
                    &format!("{key_path}[{i}]"),
                    format!("time must be >= 0, got {t:e}"),
                ));
            }
            Ok(t)
        })
        .collect()
}

fn resolve_path(base_dir: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base_dir.join(p)
    }
}

fn parse_axis(raw: &RawAxis, index: usize) -> Result<SweepAxis> {
    let key = format!("sweep[{index}]");
    let parameter = SweepParameter::parse(&raw.parameter)?;
    let dim = parameter.dimension();
    let values: Vec<f64> = match (&raw.values, &raw.start, &raw.stop) {
        (Some(vals), None, None) => {
            if raw.points.is_some() || raw.spacing.is_some() {
                return Err(config_err(
                    &key,
                    "give either `values` or `start`/`stop`/`points`, not both",
                ));
            }
            if vals.is_empty() {
                return Err(config_err(&key, "`values` is empty"));
            }
            vals.iter()
                .enumerate()
                .map(|(i, v)| parse_value(v, dim, &format!("{key}.values[{i}]")))
                .collect::<Result<_>>()?
        }
        (None, Some(start), Some(stop)) => {
            let points = raw.points.ok_or_else(|| {
                config_err(&key, "`points` is required with `start`/`stop`")
            })?;
            if points < 2 {
                return Err(config_err(&key, "`points` must be at least 2"));
            }
            let a = parse_value(start, dim, &format!("{key}.start"))?;
            let b = parse_value(stop, dim, &format!("{key}.stop"))?;
            let spacing = raw.spacing.as_deref().unwrap_or("linear");
            match spacing {
                "linear" => (0..points)
                    .map(|i| a + (b - a) * i as f64 / (points - 1) as f64)
                    .collect(),
                "log" => {
                    if a <= 0.0 || b <= 0.0 {
                        return Err(config_err(
                            &key,
                            "log spacing needs positive start and stop",
                        ));
                    }
                    let (la, lb) = (a.ln(), b.ln());
                    (0..points)
                        .map(|i| (la + (lb - la) * i as f64 / (points - 1) as f64).exp())
                        .collect()
                }
                other => {
                    return Err(config_err(
                        &format!("{key}.spacing"),
                        format!("unknown spacing `{other}`; use linear or log"),
                    ))
                }
            }
        }
        _ => {
            return Err(config_err(
                &key,
                "give either `values` or `start`+`stop`+`points`",
            ))
        }
    };
    if parameter == SweepParameter::TransitionN {
        for &v in &values {
            if v.fract() != 0.0 || v < 1.0 {
                return Err(config_err(
                    &key,
                    format!("transition.n values must be integers >= 1, got {v}"),
                ));
            }
        }
    }
    Ok(SweepAxis { parameter, values })
}

impl ScenarioConfig {
    /// Parse a scenario from JSON text; relative file references resolve
    /// against `base_dir`.
    pub fn from_json_str(text: &str, base_dir: &Path) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text)
            .map_err(|e| config_err("", format!("config is not valid JSON: {e}")))?;

        let z0 = parse_value(&raw.mirror.z0, Dimension::Length, "mirror.z0")?;
        let amplitude = parse_value(
            &raw.mirror.amplitude,
            Dimension::Length,
            "mirror.amplitude",
        )?;
        let shape = match &raw.mirror.shape {
            RawShape::Harmonic { omega, phase } => ShapeSpec::Harmonic {
                omega: parse_omega(omega, "mirror.shape.omega")?,
                phase: *phase,
            },
            RawShape::SquareTrain { rep_rate, duty } => ShapeSpec::SquareTrain {
                rep_rate: parse_omega(rep_rate, "mirror.shape.rep_rate")?,
                duty: *duty,
            },
            RawShape::Tabulated { path } => {
                let full = resolve_path(base_dir, path);
                let tab = TabulatedShape::from_path(&full).map_err(|e| {
                    config_err(
                        "mirror.shape.path",
                        format!("cannot load `{}`: {e}", full.display()),
                    )
                })?;
                ShapeSpec::Tabulated(tab)
            }
        };

        let times = parse_times(&raw.time, "time")?;

        let gas = raw
            .gas
            .as_ref()
            .map(|g| -> Result<GasSpec> {
                let profile = match &g.profile {
                    RawProfile::Parabolic {
                        z_center,
                        half_width,
                    } => ProfileSpec::Parabolic {
                        z_center: parse_value(
                            z_center,
                            Dimension::Length,
                            "gas.profile.z_center",
                        )?,
                        half_width: parse_value(
                            half_width,
                            Dimension::Length,
                            "gas.profile.half_width",
                        )?,
                    },
                    RawProfile::Gaussian { z_center, sigma_z } => ProfileSpec::Gaussian {
                        z_center: parse_value(
                            z_center,
                            Dimension::Length,
                            "gas.profile.z_center",
                        )?,
                        sigma_z: parse_value(sigma_z, Dimension::Length, "gas.profile.sigma_z")?,
                    },
                    RawProfile::Tabulated { path } => {
                        let full = resolve_path(base_dir, path);
                        let tab = TabulatedProfile::from_path(&full).map_err(|e| {
                            config_err(
                                "gas.profile.path",
                                format!("cannot load `{}`: {e}", full.display()),
                            )
                        })?;
                        ProfileSpec::Tabulated(tab)
                    }
                };
                Ok(GasSpec {
                    n_atoms: g.n_atoms,
                    profile,
                    transverse_extent: g
                        .transverse_extent
                        .as_ref()
                        .map(|v| parse_value(v, Dimension::Length, "gas.transverse_extent"))
                        .transpose()?,
                    nearest_neighbor: g
                        .nearest_neighbor
                        .as_ref()
                        .map(|v| parse_value(v, Dimension::Length, "gas.nearest_neighbor"))
                        .transpose()?,
                })
            })
            .transpose()?;

        let photon = raw.photon.as_ref().map(|p| PhotonInputs {
            areal_density_per_cm2: p.areal_density_per_cm2,
            front_area_cm2: p.front_area_cm2,
        });

        let sweep = raw
            .sweep
            .iter()
            .enumerate()
            .map(|(i, a)| parse_axis(a, i))
            .collect::<Result<Vec<_>>>()?;
        for (i, axis) in sweep.iter().enumerate() {
            for other in &sweep[..i] {
                if other.parameter == axis.parameter {
                    return Err(config_err(
                        &format!("sweep[{i}]"),
                        format!("parameter `{}` appears twice", axis.parameter.as_str()),
                    ));
                }
            }
            if times.len() > 1 && axis.parameter == SweepParameter::Time {
                return Err(config_err(
                    &format!("sweep[{i}]"),
                    "time is already swept by the `time` array; drop one of the two",
                ));
            }
            if matches!(
                axis.parameter,
                SweepParameter::GasZCenter | SweepParameter::GasHalfWidth | SweepParameter::GasNAtoms
            ) && gas.is_none()
            {
                return Err(config_err(
                    &format!("sweep[{i}]"),
                    format!(
                        "parameter `{}` needs a gas section",
                        axis.parameter.as_str()
                    ),
                ));
            }
        }

        let cfg = ScenarioConfig {
            n: raw.transition.n,
            n_prime: raw.transition.n_prime,
            z0,
            amplitude,
            shape,
            times,
            gas,
            photon,
            sweep,
            sweep_cap: raw.sweep_cap.unwrap_or(DEFAULT_SWEEP_CAP),
        };
        // surface obvious physics errors at load time
        make_transition(cfg.n, cfg.n_prime)?;
        if !(cfg.z0.is_finite() && cfg.z0 > 0.0) {
            return Err(config_err("mirror.z0", format!("must be > 0, got {z0:e}")));
        }
        if !(cfg.amplitude.is_finite() && cfg.amplitude >= 0.0) || cfg.amplitude >= cfg.z0 {
            return Err(config_err(
                "mirror.amplitude",
                format!("must satisfy 0 <= amplitude < z0, got {amplitude:e}"),
            ));
        }
        Ok(cfg)
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        ScenarioConfig::from_json_str(&text, base)
    }

    /// All sweep axes, with a multi-valued `time` array appended as the
    /// fastest axis.
    pub fn effective_axes(&self) -> Vec<SweepAxis> {
        let mut axes = self.sweep.clone();
        if self.times.len() > 1 {
            axes.push(SweepAxis {
                parameter: SweepParameter::Time,
                values: self.times.clone(),
            });
        }
        axes
    }
}

// ---------------------------------------------------------------------------
// Evaluation

/// Scalar parameters of one evaluation point.
#[derive(Debug, Clone)]
struct PointParams {
    n: u32,
    n_prime: u32,
    z0: f64,
    amplitude: f64,
    t: f64,
    gas: Option<GasSpec>,
}

impl PointParams {
    fn base(cfg: &ScenarioConfig) -> Self {
        PointParams {
            n: cfg.n,
            n_prime: cfg.n_prime,
            z0: cfg.z0,
            amplitude: cfg.amplitude,
            t: cfg.times[0],
            gas: cfg.gas.clone(),
        }
    }

    fn apply(&mut self, parameter: SweepParameter, value: f64) -> Result<()> {
        match parameter {
            SweepParameter::Time => self.t = value,
            SweepParameter::TransitionN => {
                let gap = self.n_prime - self.n;
                self.n = value as u32;
                self.n_prime = self.n + gap;
            }
            SweepParameter::MirrorZ0 => self.z0 = value,
            SweepParameter::MirrorAmplitude => self.amplitude = value,
            SweepParameter::GasZCenter | SweepParameter::GasHalfWidth
            | SweepParameter::GasNAtoms => {
                let gas = self.gas.as_mut().ok_or_else(|| Error::InvalidInput {
                    reason: format!("`{}` swept without a gas section", parameter.as_str()),
                })?;
                match parameter {
                    SweepParameter::GasNAtoms => gas.n_atoms = value,
                    SweepParameter::GasZCenter => match &mut gas.profile {
                        ProfileSpec::Parabolic { z_center, .. }
                        | ProfileSpec::Gaussian { z_center, .. } => *z_center = value,
                        ProfileSpec::Tabulated(_) => {
                            return Err(Error::InvalidInput {
                                reason: "gas.z_center cannot sweep a tabulated profile".into(),
                            })
                        }
                    },
                    SweepParameter::GasHalfWidth => match &mut gas.profile {
                        ProfileSpec::Parabolic { half_width, .. } => *half_width = value,
                        _ => {
                            return Err(Error::InvalidInput {
                                reason: "gas.half_width applies to parabolic profiles only"
                                    .into(),
                            })
                        }
                    },
                    _ => unreachable!(),
                }
            }
        }
        Ok(())
    }
}

/// One evaluated scenario point: input echo, outputs, and validity verdicts.
/// Output fields stay `None` when a row fails; the failure itself is in
/// `error`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    /// Values of the swept axes for this row, in axis order.
    pub axis_values: Vec<(&'static str, f64)>,
    pub n: u32,
    pub n_prime: u32,
    pub omega0: Option<f64>,
    pub z0: f64,
    pub amplitude: f64,
    pub shape: String,
    pub time: f64,
    pub gas_n_atoms: Option<f64>,
    pub gas_profile: Option<String>,
    pub gas_z_center: Option<f64>,
    pub gas_half_width: Option<f64>,
    pub gas_transverse_extent: Option<f64>,
    pub nearest_neighbor: Option<f64>,
    pub photon_areal_density: Option<f64>,
    pub photon_front_area: Option<f64>,
    pub probability: Option<f64>,
    pub probability_rwa: Option<f64>,
    pub amplitude_abs: Option<f64>,
    pub excited_count: Option<f64>,
    pub max_probability: Option<f64>,
    pub near_zone_ratio: Option<f64>,
    pub near_zone_flag: Option<Flag>,
    pub amplitude_ratio: Option<f64>,
    pub amplitude_flag: Option<Flag>,
    pub perturbative_flag: Option<Flag>,
    pub hierarchy_ratio: Option<f64>,
    pub hierarchy_flag: Option<Flag>,
    pub photon_bound: Option<f64>,
    pub photon_contrast: Option<f64>,
    pub overall_flag: Option<Flag>,
    pub error: Option<String>,
}

fn describe_profile(spec: &ProfileSpec) -> String {
    match spec {
        ProfileSpec::Parabolic {
            z_center,
            half_width,
        } => format!("parabolic(z_center={z_center:.6e} cm; half_width={half_width:.6e} cm)"),
        ProfileSpec::Gaussian { z_center, sigma_z } => {
            format!("gaussian(z_center={z_center:.6e} cm; sigma_z={sigma_z:.6e} cm)")
        }
        ProfileSpec::Tabulated(tab) => format!("tabulated({} samples)", tab.positions().len()),
    }
}

fn echo_row(cfg: &ScenarioConfig, params: &PointParams, axis_values: Vec<(&'static str, f64)>) -> ResultRow {
    let (gas_z_center, gas_half_width) = match params.gas.as_ref().map(|g| &g.profile) {
        Some(ProfileSpec::Parabolic {
            z_center,
            half_width,
        }) => (Some(*z_center), Some(*half_width)),
        Some(ProfileSpec::Gaussian { z_center, sigma_z }) => (Some(*z_center), Some(*sigma_z)),
        _ => (None, None),
    };
    ResultRow {
        axis_values,
        n: params.n,
        n_prime: params.n_prime,
        omega0: None,
        z0: params.z0,
        amplitude: params.amplitude,
        shape: match &cfg.shape {
            ShapeSpec::Harmonic { omega, phase } => match omega {
                OmegaSpec::Resonant => format!("harmonic(omega=resonant; phase={phase})"),
                OmegaSpec::Fixed(w) => {
                    format!("harmonic(omega={w:.9e} rad/s; phase={phase})")
                }
            },
            ShapeSpec::SquareTrain { rep_rate, duty } => match rep_rate {
                OmegaSpec::Resonant => format!("square_train(rep_rate=resonant; duty={duty})"),
                OmegaSpec::Fixed(w) => {
                    format!("square_train(rep_rate={w:.9e} rad/s; duty={duty})")
                }
            },
            ShapeSpec::Tabulated(tab) => {
                let (s, e) = tab.span();
                format!(
                    "tabulated({} samples; span [{s:.6e}, {e:.6e}] s)",
                    tab.times().len()
                )
            }
        },
        time: params.t,
        gas_n_atoms: params.gas.as_ref().map(|g| g.n_atoms),
        gas_profile: params.gas.as_ref().map(|g| describe_profile(&g.profile)),
        gas_z_center,
        gas_half_width,
        gas_transverse_extent: params.gas.as_ref().and_then(|g| g.transverse_extent),
        nearest_neighbor: params.gas.as_ref().and_then(|g| g.nearest_neighbor),
        photon_areal_density: cfg.photon.map(|p| p.areal_density_per_cm2),
        photon_front_area: cfg.photon.map(|p| p.front_area_cm2),
        probability: None,
        probability_rwa: None,
        amplitude_abs: None,
        excited_count: None,
        max_probability: None,
        near_zone_ratio: None,
        near_zone_flag: None,
        amplitude_ratio: None,
        amplitude_flag: None,
        perturbative_flag: None,
        hierarchy_ratio: None,
        hierarchy_flag: None,
        photon_bound: None,
        photon_contrast: None,
        overall_flag: None,
        error: None,
    }
}

fn fill_validity(row: &mut ResultRow, report: &ValidityReport) {
    row.near_zone_ratio = Some(report.near_zone.ratio);
    row.near_zone_flag = Some(report.near_zone.flag);
    row.amplitude_ratio = Some(report.amplitude.ratio);
    row.amplitude_flag = Some(report.amplitude.flag);
    row.perturbative_flag = Some(report.perturbative.flag);
    if let Some(h) = report.hierarchy {
        row.hierarchy_ratio = Some(h.ratio);
        row.hierarchy_flag = Some(h.flag);
    }
    if let Some(p) = report.photon {
        row.photon_bound = Some(p.bound);
        row.photon_contrast = Some(p.contrast);
    }
    row.overall_flag = Some(report.overall);
}

/// Compute everything for one parameter point. The report is folded into
/// the row and also returned.
fn evaluate_point(
    cfg: &ScenarioConfig,
    params: &PointParams,
    row: &mut ResultRow,
) -> Result<ValidityReport> {
    let tr = make_transition(params.n, params.n_prime)?;
    row.omega0 = Some(tr.omega0);
    let shape = cfg.shape.resolve(tr.omega0)?;
    let motion = MirrorMotion::new(params.z0, params.amplitude, shape.clone())?;

    let td = amplitude_time_domain(&tr, &motion, params.t)?;
    row.probability = Some(td.probability);
    row.amplitude_abs = Some(td.amplitude.norm());

    let rwa = match &shape {
        Shape::Harmonic { omega, .. }
            if (omega - tr.omega0).abs() * params.t < 0.1 =>
        {
            let r = probability_resonant(&tr, &motion, params.t)?;
            row.probability_rwa = Some(r.probability);
            Some(r.probability)
        }
        _ => None,
    };

    let mut z_max = params.z0;
    let mut max_probability = td.probability;
    let mut excited = None;
    if let Some(gas_spec) = &params.gas {
        let profile = GasProfile::new(
            gas_spec.n_atoms,
            gas_spec.profile.build()?,
            gas_spec.transverse_extent,
        )?;
        let (lo, hi) = profile.support_bounds();
        z_max = z_max.max(hi);
        let count = if rwa.is_some() {
            // resonant harmonic drive: use the scaling-law routes
            match &profile.shape {
                ProfileShape::Parabolic { .. } => {
                    excited_count_closed_form(&profile, params.n, params.amplitude, params.t)?
                }
                _ => excited_count_quadrature(&profile, params.n, params.amplitude, params.t)?,
            }
        } else {
            // any other drive: transfer the computed probability as z^-8
            excited_count_scaled(&profile, td.probability, params.z0, params.amplitude)?
        };
        excited = Some(count);
        let edge_probability = match rwa {
            Some(_) => probability_scaling(params.n, lo, params.amplitude, params.t)?,
            None => td.probability * (params.z0 / lo).powi(8),
        };
        max_probability = max_probability.max(edge_probability);
    }
    row.excited_count = excited;
    row.max_probability = Some(max_probability);

    let summary = ScenarioSummary {
        transition: tr,
        z0: params.z0,
        amplitude: params.amplitude,
        z_max,
        max_probability,
        reference_probability: td.probability,
        nearest_neighbor: params.gas.as_ref().and_then(|g| g.nearest_neighbor),
        photon: cfg.photon,
    };
    let report = full_report(&summary)?;
    fill_validity(row, &report);
    Ok(report)
}

/// Run the scenario at its base point (no sweep axes).
pub fn run_single(cfg: &ScenarioConfig) -> Result<ResultRow> {
    if !cfg.effective_axes().is_empty() {
        return Err(Error::InvalidInput {
            reason: "this scenario declares sweep axes; run it as a sweep".into(),
        });
    }
    let params = PointParams::base(cfg);
    let mut row = echo_row(cfg, &params, Vec::new());
    evaluate_point(cfg, &params, &mut row)?;
    Ok(row)
}

/// Produce a validity report for the scenario's base point.
pub fn validate(cfg: &ScenarioConfig) -> Result<ValidityReport> {
    let params = PointParams::base(cfg);
    let mut row = echo_row(cfg, &params, Vec::new());
    evaluate_point(cfg, &params, &mut row)
}

/// An evaluated sweep: ordered rows plus the column schema they share.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<ResultRow>,
}

/// Evaluate every point of the sweep grid in lexicographic order (first
/// axis slowest). Failed points keep their echo and carry the error text;
/// `jobs` caps the worker threads (`None` uses the rayon default). Row
/// order is independent of `jobs`.
pub fn run_sweep(cfg: &ScenarioConfig, jobs: Option<usize>) -> Result<SweepTable> {
    let axes = cfg.effective_axes();
    let total: usize = axes.iter().map(|a| a.values.len()).product();
    if total > cfg.sweep_cap {
        return Err(Error::SweepCapExceeded {
            points: total as u64,
            cap: cfg.sweep_cap as u64,
        });
    }

    let evaluate = |flat: usize| -> ResultRow {
        // decompose the flat index, first axis slowest
        let mut rem = flat;
        let mut stride: usize = axes.iter().map(|a| a.values.len()).product();
        let mut params = PointParams::base(cfg);
        let mut axis_values = Vec::with_capacity(axes.len());
        let mut apply_error = None;
        for axis in &axes {
            stride /= axis.values.len();
            let idx = rem / stride;
            rem %= stride;
            let value = axis.values[idx];
            axis_values.push((axis.parameter.as_str(), value));
            if apply_error.is_none() {
                if let Err(e) = params.apply(axis.parameter, value) {
                    apply_error = Some(e);
                }
            }
        }
        let mut row = echo_row(cfg, &params, axis_values);
        match apply_error {
            Some(e) => row.error = Some(e.to_string()),
            None => {
                if let Err(e) = evaluate_point(cfg, &params, &mut row) {
                    row.error = Some(e.to_string());
                }
            }
        }
        row
    };

    let rows: Vec<ResultRow> = match jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::InvalidInput {
                    reason: format!("cannot build a {j}-thread pool: {e}"),
                })?;
            pool.install(|| {
                use rayon::prelude::*;
                (0..total).into_par_iter().map(evaluate).collect()
            })
        }
        None => {
            use rayon::prelude::*;
            (0..total).into_par_iter().map(evaluate).collect()
        }
    };

    Ok(SweepTable {
        columns: columns_for(cfg),
        rows,
    })
}

/// Column schema: swept axes first, then the input echo, outputs, validity
/// verdicts, and the error column.
pub fn columns_for(cfg: &ScenarioConfig) -> Vec<String> {
    let mut cols: Vec<String> = cfg
        .effective_axes()
        .iter()
        .map(|a| a.parameter.as_str().to_string())
        .collect();
    for c in [
        "n",
        "n_prime",
        "omega0_rad_per_s",
        "z0_cm",
        "amplitude_cm",
        "shape",
        "time_s",
    ] {
        cols.push(c.into());
    }
    if cfg.gas.is_some() {
        for c in [
            "gas_n_atoms",
            "gas_profile",
            "gas_z_center_cm",
            "gas_half_width_cm",
            "gas_transverse_extent_cm",
            "nearest_neighbor_cm",
        ] {
            cols.push(c.into());
        }
    }
    if cfg.photon.is_some() {
        cols.push("photon_areal_density_per_cm2".into());
        cols.push("photon_front_area_cm2".into());
    }
    for c in [
        "probability",
        "probability_rwa",
        "amplitude_abs",
    ] {
        cols.push(c.into());
    }
    if cfg.gas.is_some() {
        cols.push("excited_count".into());
    }
    cols.push("max_probability".into());
    for c in [
        "near_zone_ratio",
        "near_zone_flag",
        "amplitude_ratio",
        "amplitude_flag",
        "perturbative_flag",
    ] {
        cols.push(c.into());
    }
    if cfg.gas.as_ref().is_some_and(|g| g.nearest_neighbor.is_some()) {
        cols.push("hierarchy_ratio".into());
        cols.push("hierarchy_flag".into());
    }
    if cfg.photon.is_some() {
        cols.push("photon_bound".into());
        cols.push("photon_contrast".into());
    }
    cols.push("overall_flag".into());
    cols.push("error".into());
    cols
}

/// A single cell for serialization.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl ResultRow {
    /// Look up a cell by column name; swept-axis columns read from the
    /// axis echo.
    pub fn cell(&self, column: &str) -> Cell {
        for (name, value) in &self.axis_values {
            if *name == column {
                return Cell::Float(*value);
            }
        }
        let opt_f = |v: Option<f64>| v.map(Cell::Float).unwrap_or(Cell::Empty);
        let opt_flag =
            |v: Option<Flag>| v.map(|f| Cell::Text(f.to_string())).unwrap_or(Cell::Empty);
        match column {
            "n" => Cell::Int(self.n as u64),
            "n_prime" => Cell::Int(self.n_prime as u64),
            "omega0_rad_per_s" => opt_f(self.omega0),
            "z0_cm" => Cell::Float(self.z0),
            "amplitude_cm" => Cell::Float(self.amplitude),
            "shape" => Cell::Text(self.shape.clone()),
            "time_s" => Cell::Float(self.time),
            "gas_n_atoms" => opt_f(self.gas_n_atoms),
            "gas_profile" => self
                .gas_profile
                .clone()
                .map(Cell::Text)
                .unwrap_or(Cell::Empty),
            "gas_z_center_cm" => opt_f(self.gas_z_center),
            "gas_half_width_cm" => opt_f(self.gas_half_width),
            "gas_transverse_extent_cm" => opt_f(self.gas_transverse_extent),
            "nearest_neighbor_cm" => opt_f(self.nearest_neighbor),
            "photon_areal_density_per_cm2" => opt_f(self.photon_areal_density),
            "photon_front_area_cm2" => opt_f(self.photon_front_area),
            "probability" => opt_f(self.probability),
            "probability_rwa" => opt_f(self.probability_rwa),
            "amplitude_abs" => opt_f(self.amplitude_abs),
            "excited_count" => opt_f(self.excited_count),
            "max_probability" => opt_f(self.max_probability),
            "near_zone_ratio" => opt_f(self.near_zone_ratio),
            "near_zone_flag" => opt_flag(self.near_zone_flag),
            "amplitude_ratio" => opt_f(self.amplitude_ratio),
            "amplitude_flag" => opt_flag(self.amplitude_flag),
            "perturbative_flag" => opt_flag(self.perturbative_flag),
            "hierarchy_ratio" => opt_f(self.hierarchy_ratio),
            "hierarchy_flag" => opt_flag(self.hierarchy_flag),
            "photon_bound" => opt_f(self.photon_bound),
            "photon_contrast" => opt_f(self.photon_contrast),
            "overall_flag" => opt_flag(self.overall_flag),
            "error" => self
                .error
                .clone()
                .map(Cell::Text)
                .unwrap_or(Cell::Empty),
            other => Cell::Text(format!("<unknown column {other}>")),
        }
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn cell_to_csv(cell: &Cell) -> String {
    match cell {
        Cell::Float(v) => format!("{v:.16e}"),
        Cell::Int(v) => v.to_string(),
        Cell::Text(s) => csv_escape(s),
        Cell::Empty => String::new(),
    }
}

fn cell_to_json(cell: &Cell) -> serde_json::Value {
    match cell {
        Cell::Float(v) => serde_json::Number::from_f64(*v)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null),
        Cell::Int(v) => serde_json::Value::from(*v),
        Cell::Text(s) => serde_json::Value::from(s.as_str()),
        Cell::Empty => serde_json::Value::Null,
    }
}

/// Write the table as CSV: header row, then one line per row, floats at
/// full round-trip precision.
pub fn write_csv<W: std::io::Write + ?Sized>(table: &SweepTable, writer: &mut W) -> Result<()> {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let mut first = true;
        for col in &table.columns {
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "{}", cell_to_csv(&row.cell(col)));
        }
        out.push('\n');
    }
    writer.write_all(out.as_bytes())?;
    Ok(())
}

/// Write the table as `{ "columns": [...], "rows": [{column: value}] }`.
pub fn write_json<W: std::io::Write + ?Sized>(table: &SweepTable, writer: &mut W) -> Result<()> {
    let rows: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            for col in &table.columns {
                obj.insert(col.clone(), cell_to_json(&row.cell(col)));
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    let doc = serde_json::json!({
        "columns": table.columns,
        "rows": rows,
    });
    serde_json::to_writer_pretty(&mut *writer, &doc)?;
    writer.write_all(b"\n")?;
    Ok(())
}

/// Wrap a single row in a one-row table sharing the sweep schema.
pub fn single_row_table(cfg: &ScenarioConfig, row: ResultRow) -> SweepTable {
    SweepTable {
        columns: columns_for(cfg),
        rows: vec![row],
    }
}
