//! Carrier-and-unit pairs with the handful of conversions this crate needs.
//!
//! Internally everything is Gaussian cgs: lengths in cm, times in s, angular
//! frequencies in rad/s, energies in erg, charges in statC. Hz-type units
//! convert to rad/s with the 2*pi factor, i.e. frequency and angular
//! frequency are treated as one dimension. This is deliberately not a
//! general-purpose units library.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Physical dimension of a [`Unit`]. Conversion is allowed only inside one
/// dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Time,
    /// Angular frequency; plain-frequency units fold in the 2*pi.
    Frequency,
    Energy,
    Charge,
    /// Squared dipole matrix elements, statC^2 cm^2.
    DipoleMomentSquared,
    Dimensionless,
}

/// Units accepted on input. Each carries a fixed factor to the cgs base unit
/// of its dimension, so round trips are exact up to one rounding each way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Centimeter,
    Millimeter,
    Micrometer,
    Nanometer,
    Meter,
    Second,
    Millisecond,
    Microsecond,
    Nanosecond,
    RadianPerSecond,
    Hertz,
    Kilohertz,
    Megahertz,
    Gigahertz,
    Erg,
    Statcoulomb,
    StatcoulombSqCm2,
    Dimensionless,
}

impl Unit {
    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            Centimeter | Millimeter | Micrometer | Nanometer | Meter => Dimension::Length,
            Second | Millisecond | Microsecond | Nanosecond => Dimension::Time,
            RadianPerSecond | Hertz | Kilohertz | Megahertz | Gigahertz => Dimension::Frequency,
            Erg => Dimension::Energy,
            Statcoulomb => Dimension::Charge,
            StatcoulombSqCm2 => Dimension::DipoleMomentSquared,
            Dimensionless => Dimension::Dimensionless,
        }
    }

    /// Multiplicative factor to the cgs base unit of this dimension
    /// (cm, s, rad/s, erg, statC, statC^2 cm^2, 1).
    pub fn to_base_factor(self) -> f64 {
        use std::f64::consts::TAU;
        use Unit::*;
        match self {
            Centimeter => 1.0,
            Millimeter => 1e-1,
            Micrometer => 1e-4,
            Nanometer => 1e-7,
            Meter => 1e2,
            Second => 1.0,
            Millisecond => 1e-3,
            Microsecond => 1e-6,
            Nanosecond => 1e-9,
            RadianPerSecond => 1.0,
            Hertz => TAU,
            Kilohertz => TAU * 1e3,
            Megahertz => TAU * 1e6,
            Gigahertz => TAU * 1e9,
            Erg => 1.0,
            Statcoulomb => 1.0,
            StatcoulombSqCm2 => 1.0,
            Dimensionless => 1.0,
        }
    }

    /// The cgs base unit of a dimension.
    pub fn base_of(dim: Dimension) -> Unit {
        match dim {
            Dimension::Length => Unit::Centimeter,
            Dimension::Time => Unit::Second,
            Dimension::Frequency => Unit::RadianPerSecond,
            Dimension::Energy => Unit::Erg,
            Dimension::Charge => Unit::Statcoulomb,
            Dimension::DipoleMomentSquared => Unit::StatcoulombSqCm2,
            Dimension::Dimensionless => Unit::Dimensionless,
        }
    }

    pub fn symbol(self) -> &'static str {
        use Unit::*;
        match self {
            Centimeter => "cm",
            Millimeter => "mm",
            Micrometer => "um",
            Nanometer => "nm",
            Meter => "m",
            Second => "s",
            Millisecond => "ms",
            Microsecond => "us",
            Nanosecond => "ns",
            RadianPerSecond => "rad/s",
            Hertz => "Hz",
            Kilohertz => "kHz",
            Megahertz => "MHz",
            Gigahertz => "GHz",
            Erg => "erg",
            Statcoulomb => "statC",
            StatcoulombSqCm2 => "statC^2 cm^2",
            Dimensionless => "1",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Unit> {
        use Unit::*;
        Ok(match s {
            "cm" => Centimeter,
            "mm" => Millimeter,
            "um" | "micron" => Micrometer,
            "nm" => Nanometer,
            "m" => Meter,
            "s" => Second,
            "ms" => Millisecond,
            "us" => Microsecond,
            "ns" => Nanosecond,
            "rad/s" | "rad_s" => RadianPerSecond,
            "Hz" => Hertz,
            "kHz" => Kilohertz,
            "MHz" => Megahertz,
            "GHz" => Gigahertz,
            "erg" => Erg,
            "statC" => Statcoulomb,
            "statC^2 cm^2" | "statC2cm2" => StatcoulombSqCm2,
            "1" | "" | "dimensionless" => Dimensionless,
            other => {
                return Err(Error::QuantityParse {
                    input: other.to_string(),
                    reason: "unknown unit".to_string(),
                })
            }
        })
    }
}

/// A value tagged with its unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Quantity {
        Quantity { value, unit }
    }

    /// Convert to another unit of the same dimension.
    pub fn convert(self, target: Unit) -> Result<Quantity> {
        if self.unit.dimension() != target.dimension() {
            return Err(Error::IncompatibleUnits {
                from: self.unit,
                to: target,
            });
        }
        Ok(Quantity {
            value: self.value * (self.unit.to_base_factor() / target.to_base_factor()),
            unit: target,
        })
    }

    /// Value in the cgs base unit of this quantity's dimension.
    pub fn to_base(self) -> f64 {
        self.value * self.unit.to_base_factor()
    }

    /// Parse `"20 um"`, `"2e-3 cm"`, `"30 GHz"`, or a bare number
    /// (dimensionless). Whitespace separates value and unit symbol.
    pub fn parse(input: &str) -> Result<Quantity> {
        let trimmed = input.trim();
        let mut parts = trimmed.split_whitespace();
        let value_str = parts.next().ok_or_else(|| Error::QuantityParse {
            input: input.to_string(),
            reason: "empty string".to_string(),
        })?;
        let value: f64 = value_str.parse().map_err(|_| Error::QuantityParse {
            input: input.to_string(),
            reason: format!("{value_str:?} is not a number"),
        })?;
        let unit = match parts.next() {
            Some(sym) => sym.parse::<Unit>().map_err(|_| Error::QuantityParse {
                input: input.to_string(),
                reason: format!("unknown unit {sym:?}"),
            })?,
            None => Unit::Dimensionless,
        };
        if parts.next().is_some() {
            return Err(Error::QuantityParse {
                input: input.to_string(),
                reason: "expected `<value> <unit>`".to_string(),
            });
        }
        if !value.is_finite() {
            return Err(Error::QuantityParse {
                input: input.to_string(),
                reason: "value must be finite".to_string(),
            });
        }
        Ok(Quantity { value, unit })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn micrometers_to_centimeters() {
        let q = Quantity::new(20.0, Unit::Micrometer)
            .convert(Unit::Centimeter)
            .unwrap();
        assert!(rel_err(q.value, 2e-3) < 1e-15);
        assert_eq!(q.unit, Unit::Centimeter);
    }

    #[test]
    fn gigahertz_to_angular_frequency() {
        let q = Quantity::new(30.0, Unit::Gigahertz)
            .convert(Unit::RadianPerSecond)
            .unwrap();
        assert!(rel_err(q.value, 1.88495559215387573e11) < 1e-15);
    }

    #[test]
    fn microseconds_to_seconds() {
        let q = Quantity::new(0.5, Unit::Microsecond)
            .convert(Unit::Second)
            .unwrap();
        assert!(rel_err(q.value, 5e-7) < 1e-15);
    }

    #[test]
    fn incompatible_dimensions_error() {
        let err = Quantity::new(1.0, Unit::Centimeter)
            .convert(Unit::Second)
            .unwrap_err();
        assert!(matches!(err, Error::IncompatibleUnits { .. }));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            Quantity::parse("20 um").unwrap(),
            Quantity::new(20.0, Unit::Micrometer)
        );
        assert_eq!(
            Quantity::parse(" 2e-3 cm ").unwrap(),
            Quantity::new(2e-3, Unit::Centimeter)
        );
        assert_eq!(
            Quantity::parse("0.5").unwrap(),
            Quantity::new(0.5, Unit::Dimensionless)
        );
        assert!(Quantity::parse("fast").is_err());
        assert!(Quantity::parse("1 parsec").is_err());
        assert!(Quantity::parse("").is_err());
        assert!(Quantity::parse("1 2 cm").is_err());
    }

    #[test]
    fn round_trips_are_tight() {
        let units = [
            Unit::Centimeter,
            Unit::Millimeter,
            Unit::Micrometer,
            Unit::Nanometer,
            Unit::Meter,
            Unit::Second,
            Unit::Microsecond,
            Unit::RadianPerSecond,
            Unit::Hertz,
            Unit::Gigahertz,
        ];
        for &u in &units {
            for &v in &[1.0, 0.3, 7.25e-4, 9.9e9] {
                let base = Unit::base_of(u.dimension());
                let there = Quantity::new(v, u).convert(base).unwrap();
                let back = there.convert(u).unwrap();
                assert!(
                    rel_err(back.value, v) < 1e-12,
                    "{u}: {v} -> {} -> {}",
                    there.value,
                    back.value
                );
            }
        }
    }
}
