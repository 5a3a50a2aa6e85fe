//! Hydrogen-like quantum numbers of the Earth-Sun system.
//!
//! The numbers involved (~1e74) are stored as ordinary `f64` values with
//! base-10 logarithm companions; every product is formed in log space first.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::units::PhysicalConstants;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: f64,
    pub l: f64,
    pub m: f64,
    pub log10_n: f64,
    pub log10_l: f64,
    pub log10_m: f64,
}

impl QuantumNumbers {
    /// Builds the triple with `l = n`.
    pub fn new(n: f64, m: f64) -> Result<Self> {
        if !(n > 0.0 && m > 0.0) {
            return invalid(format!("quantum numbers must be positive (n = {n}, m = {m})"));
        }
        if m > n * (1.0 + 1e-9) {
            return invalid(format!("|m| = {m:e} exceeds l = {n:e}"));
        }
        Ok(Self {
            n,
            l: n,
            m,
            log10_n: n.log10(),
            log10_l: n.log10(),
            log10_m: m.log10(),
        })
    }
}

/// The coupling `A = m²ħ²/m_e²` together with the gravitational Bohr length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingConstants {
    pub a: f64,
    pub b: f64,
}

impl CouplingConstants {
    pub fn new(m: f64, c: &PhysicalConstants) -> Result<Self> {
        Ok(Self {
            a: coupling_a(m, c)?,
            b: gravitational_bohr_length(c),
        })
    }
}

pub fn log10_gravitational_bohr_length(c: &PhysicalConstants) -> f64 {
    2.0 * c.hbar.log10() - c.g.log10() - 2.0 * c.m_earth.log10() - c.m_sun.log10()
}

/// `b = ħ²/(G m_e² m_s)`.
pub fn gravitational_bohr_length(c: &PhysicalConstants) -> f64 {
    10f64.powf(log10_gravitational_bohr_length(c))
}

/// Principal number from equating the level energy with `-G m_s m_e / 2a`:
/// `n = √(a/b)`. Returns `(n, log10 n)`.
pub fn principal_from_semimajor(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a > 0.0 && b > 0.0) {
        return invalid(format!("a and b must be positive (a = {a:e}, b = {b:e})"));
    }
    let log10_n = 0.5 * (a.log10() - b.log10());
    Ok(((a / b).sqrt(), log10_n))
}

/// The `m` for which `φ(t) = mħt/(m_e r²)` advances by 2π every `period`.
pub fn magnetic_from_period(c: &PhysicalConstants, r_orbit: f64, period: f64) -> Result<f64> {
    if !(r_orbit > 0.0 && period > 0.0) {
        return invalid(format!("radius and period must be positive (r = {r_orbit:e}, T = {period:e})"));
    }
    let log10_m = (2.0 * std::f64::consts::PI / period).log10() + c.m_earth.log10() + 2.0 * r_orbit.log10()
        - c.hbar.log10();
    Ok(10f64.powf(log10_m))
}

pub fn log10_coupling_a(m: f64, c: &PhysicalConstants) -> f64 {
    2.0 * (m.log10() + c.hbar.log10() - c.m_earth.log10())
}

/// `A = m²ħ²/m_e²` in m⁴ s⁻².
pub fn coupling_a(m: f64, c: &PhysicalConstants) -> Result<f64> {
    if !(m > 0.0) {
        return invalid(format!("magnetic number must be positive, got {m}"));
    }
    Ok(10f64.powf(log10_coupling_a(m, c)))
}

/// A real number held as a sign and a base-10 log magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignedLog {
    pub negative: bool,
    pub log10_magnitude: f64,
}

impl SignedLog {
    pub fn value(&self) -> f64 {
        let v = 10f64.powf(self.log10_magnitude);
        if self.negative {
            -v
        } else {
            v
        }
    }
}

/// `E_n = -G² m_e³ m_s² / (2ħ² n²)` in sign/log-magnitude form.
pub fn energy_level_log(n: f64, c: &PhysicalConstants) -> Result<SignedLog> {
    if !(n > 0.0) {
        return invalid(format!("principal number must be positive, got {n}"));
    }
    let log10_magnitude = 2.0 * c.g.log10() + 3.0 * c.m_earth.log10() + 2.0 * c.m_sun.log10()
        - 2.0f64.log10()
        - 2.0 * c.hbar.log10()
        - 2.0 * n.log10();
    Ok(SignedLog {
        negative: true,
        log10_magnitude,
    })
}

pub fn energy_level(n: f64, c: &PhysicalConstants) -> Result<f64> {
    Ok(energy_level_log(n, c)?.value())
}

/// `(E(n+1) - E(n)) / |E(n)| = (2n+1)/(n+1)²`.
pub fn relative_level_gap(n: f64) -> Result<f64> {
    if !(n >= 1.0) {
        return invalid(format!("level gap needs n >= 1, got {n}"));
    }
    let np1 = n + 1.0;
    Ok((2.0 * n + 1.0) / np1 / np1)
}
