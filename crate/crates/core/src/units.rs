//! Physical constants and the two unit systems used across the crate.
//!
//! Every formula in this crate is unit-agnostic as long as its inputs are
//! expressed in one consistent system; [`PhysicalConstants::in_units`] moves
//! the constant set between SI and astronomical-unit/year scaling.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Julian year in seconds.
pub const JULIAN_YEAR: f64 = 31_557_600.0;

/// Length of the AU scale; equal to the Earth's semi-major axis used throughout.
pub const ASTRONOMICAL_UNIT: f64 = 1.496e11;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Gravitational constant, m^3 kg^-1 s^-2.
    pub g: f64,
    /// Solar mass, kg.
    pub m_sun: f64,
    /// Earth mass, kg.
    pub m_earth: f64,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Standard gravitational parameter G (m_sun + m_earth), m^3 s^-2.
    pub mu: f64,
}

impl PhysicalConstants {
    pub fn new(g: f64, m_sun: f64, m_earth: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("G", g), ("m_sun", m_sun), ("m_earth", m_earth), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return invalid(format!("{name} must be positive and finite, got {v}"));
            }
        }
        Ok(Self {
            g,
            m_sun,
            m_earth,
            hbar,
            mu: g * (m_sun + m_earth),
        })
    }

    /// Reference values compiled into the crate.
    pub fn standard() -> Self {
        Self::new(6.674e-11, 1.989e30, 5.972e24, 1.0546e-34).expect("reference constants are positive")
    }

    /// Re-expresses the constants in `units`. Masses stay in kilograms.
    pub fn in_units(&self, units: &UnitSystem) -> Self {
        let si = UnitSystem::si();
        let g3 = Dimension::new(3, -2).unwrap();
        let action = Dimension::new(2, -1).unwrap();
        Self {
            g: convert(self.g, &si, units, g3),
            m_sun: self.m_sun,
            m_earth: self.m_earth,
            hbar: convert(self.hbar, &si, units, action),
            mu: convert(self.mu, &si, units, g3),
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitLabel {
    Si,
    AuYear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    /// Metres per internal length unit.
    pub length_scale: f64,
    /// Seconds per internal time unit.
    pub time_scale: f64,
    pub label: UnitLabel,
}

impl UnitSystem {
    pub fn si() -> Self {
        Self {
            length_scale: 1.0,
            time_scale: 1.0,
            label: UnitLabel::Si,
        }
    }

    pub fn au_year() -> Self {
        Self {
            length_scale: ASTRONOMICAL_UNIT,
            time_scale: JULIAN_YEAR,
            label: UnitLabel::AuYear,
        }
    }

    pub fn from_label(label: UnitLabel) -> Self {
        match label {
            UnitLabel::Si => Self::si(),
            UnitLabel::AuYear => Self::au_year(),
        }
    }
}

/// Powers of length and time carried by a quantity, each in `[-4, 4]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimension {
    length: i8,
    time: i8,
}

impl Dimension {
    pub const LENGTH: Dimension = Dimension { length: 1, time: 0 };
    pub const VELOCITY: Dimension = Dimension { length: 1, time: -1 };
    pub const TIME: Dimension = Dimension { length: 0, time: 1 };
    pub const RATE: Dimension = Dimension { length: 0, time: -1 };

    pub fn new(length: i8, time: i8) -> Result<Self> {
        if !(-4..=4).contains(&length) || !(-4..=4).contains(&time) {
            return invalid(format!("dimension powers must lie in [-4, 4], got L^{length} T^{time}"));
        }
        Ok(Self { length, time })
    }

    pub fn length(&self) -> i8 {
        self.length
    }

    pub fn time(&self) -> i8 {
        self.time
    }
}

/// Rescales `value` from one unit system to another.
pub fn convert(value: f64, from: &UnitSystem, to: &UnitSystem, dim: Dimension) -> f64 {
    if from == to {
        return value;
    }
    let length_ratio = from.length_scale / to.length_scale;
    let time_ratio = from.time_scale / to.time_scale;
    value * length_ratio.powi(dim.length as i32) * time_ratio.powi(dim.time as i32)
}
