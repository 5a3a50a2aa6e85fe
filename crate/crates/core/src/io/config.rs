//! `key = value` configuration files with `#` comments, all values SI.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{format_number, IoError};
use crate::audit::table;
use crate::guidance::OrbitGeometry;
use crate::quantum::magnetic_from_period;
use crate::units::{PhysicalConstants, JULIAN_YEAR};

/// Which magnetic quantum number drives the azimuthal ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum MagneticChoice {
    /// `m` for which the azimuth advances 2π per year at `r = a`.
    Period,
    /// The tabulated `m = 1e73`.
    Table,
    Value(f64),
}

impl std::str::FromStr for MagneticChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "period" => Ok(Self::Period),
            "table" => Ok(Self::Table),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|v| *v > 0.0)
                .map(Self::Value)
                .ok_or_else(|| format!("magnetic must be `period`, `table` or a positive number, got `{other}`")),
        }
    }
}

/// Values present in a config file or given as overrides.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub g: Option<f64>,
    pub m_sun: Option<f64>,
    pub m_earth: Option<f64>,
    pub hbar: Option<f64>,
    pub a: Option<f64>,
    pub z_h: Option<f64>,
    pub xi: Option<f64>,
    pub phi0: Option<f64>,
    pub tau: Option<f64>,
    pub r_eq: Option<f64>,
    pub magnetic: Option<MagneticChoice>,
}

impl ConfigFile {
    pub fn parse(text: &str, origin: &str) -> Result<Self, IoError> {
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let err = |msg: String| IoError::Parse {
                origin: origin.to_string(),
                line: idx + 1,
                msg,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "magnetic" {
                cfg.magnetic = Some(value.parse().map_err(err)?);
                continue;
            }
            let number: f64 = value
                .parse()
                .map_err(|_| err(format!("`{value}` is not a number")))?;
            let slot = match key {
                "G" => &mut cfg.g,
                "m_sun" => &mut cfg.m_sun,
                "m_earth" => &mut cfg.m_earth,
                "hbar" => &mut cfg.hbar,
                "a" => &mut cfg.a,
                "Z_h" => &mut cfg.z_h,
                "xi" => &mut cfg.xi,
                "phi0" => &mut cfg.phi0,
                "tau" => &mut cfg.tau,
                "r_eq" => &mut cfg.r_eq,
                _ => return Err(err(format!("unknown key `{key}`"))),
            };
            if slot.is_some() {
                return Err(err(format!("duplicate key `{key}`")));
            }
            *slot = Some(number);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Values set in `other` win.
    pub fn overridden_by(&self, other: &ConfigFile) -> ConfigFile {
        ConfigFile {
            g: other.g.or(self.g),
            m_sun: other.m_sun.or(self.m_sun),
            m_earth: other.m_earth.or(self.m_earth),
            hbar: other.hbar.or(self.hbar),
            a: other.a.or(self.a),
            z_h: other.z_h.or(self.z_h),
            xi: other.xi.or(self.xi),
            phi0: other.phi0.or(self.phi0),
            tau: other.tau.or(self.tau),
            r_eq: other.r_eq.or(self.r_eq),
            magnetic: other.magnetic.or(self.magnetic),
        }
    }
}

/// A fully specified scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolvedConfig {
    pub constants: PhysicalConstants,
    pub geometry: OrbitGeometry,
    pub magnetic: MagneticChoice,
    /// The magnetic number `magnetic` resolves to.
    pub m: f64,
}

impl ResolvedConfig {
    /// Fills gaps with the standard constants and Earth geometry. Without an
    /// explicit `r_eq` the equilibrium sits on the asymptote `ξ Z_h`.
    pub fn resolve(file: &ConfigFile) -> Result<Self, IoError> {
        let std = PhysicalConstants::standard();
        let constants = PhysicalConstants::new(
            file.g.unwrap_or(std.g),
            file.m_sun.unwrap_or(std.m_sun),
            file.m_earth.unwrap_or(std.m_earth),
            file.hbar.unwrap_or(std.hbar),
        )?;
        let earth = OrbitGeometry::earth();
        let z_h = file.z_h.unwrap_or(earth.z_h);
        let xi = file.xi.unwrap_or(earth.xi);
        let geometry = OrbitGeometry::new(
            file.a.unwrap_or(earth.a),
            z_h,
            file.r_eq.unwrap_or(xi * z_h),
            xi,
            file.phi0.unwrap_or(earth.phi0),
            file.tau.unwrap_or(earth.tau),
        )?;
        let magnetic = file.magnetic.unwrap_or(MagneticChoice::Period);
        let m = match magnetic {
            MagneticChoice::Period => magnetic_from_period(&constants, geometry.a, JULIAN_YEAR)?,
            MagneticChoice::Table => table::M,
            MagneticChoice::Value(v) => v,
        };
        Ok(Self {
            constants,
            geometry,
            magnetic,
            m,
        })
    }

    /// Config-file text that resolves back to `self`.
    pub fn to_config_text(&self) -> String {
        let c = &self.constants;
        let g = &self.geometry;
        let mut out = String::new();
        for (key, v) in [
            ("G", c.g),
            ("m_sun", c.m_sun),
            ("m_earth", c.m_earth),
            ("hbar", c.hbar),
            ("a", g.a),
            ("Z_h", g.z_h),
            ("xi", g.xi),
            ("phi0", g.phi0),
            ("tau", g.tau),
            ("r_eq", g.r_eq),
        ] {
            let _ = writeln!(out, "{key} = {}", format_number(v));
        }
        let magnetic = match self.magnetic {
            MagneticChoice::Period => "period".to_string(),
            MagneticChoice::Table => "table".to_string(),
            MagneticChoice::Value(v) => format_number(v),
        };
        let _ = writeln!(out, "magnetic = {magnetic}");
        out
    }
}
