//! Planar velocity field `(ẋ, ẏ)` of the Earth and streamline tracing.
//!
//! The field is evaluated exactly as printed, including the additive
//! `1 + Z_h² x/(x² + y²)` factor, which mixes a pure number with a length.
//! Its value therefore depends on the unit system; the reference
//! configuration measures lengths in 1e11 m and time in Julian years.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, DomainError, Result};
use crate::guidance::vis_viva_radicand;
use crate::ode::{self, Method, Vec2};
use crate::units::{PhysicalConstants, ASTRONOMICAL_UNIT, JULIAN_YEAR};

/// Length unit of the reference field configuration, m.
pub const FIELD_LENGTH_UNIT: f64 = 1e11;

/// Streamlines stop once the local speed drops below this, in field units.
pub const STAGNATION_SPEED: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldMode {
    /// Lengths in 1e11 m, time in years, rotation `(-2πy, 2πx)`.
    VerbatimYearUnits,
    /// SI magnitudes, rotation `(-ωy, ωx)`.
    SiAngular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub z_h: f64,
    pub a: f64,
    pub mu: f64,
    pub mode: FieldMode,
    /// Angular rate for [`FieldMode::SiAngular`], rad/s.
    pub omega: f64,
    /// Include the radial (vis-viva) term; off leaves the pure rotation.
    pub radial_term: bool,
    /// Streamlines stop when `|x|` or `|y|` exceeds this.
    pub half_width: f64,
}

impl FieldConfig {
    /// Reference configuration with `Z_h = a = 1.496e11 m`, expressed in
    /// 1e11 m and years.
    pub fn year_units(c: &PhysicalConstants) -> Self {
        Self::from_si(ASTRONOMICAL_UNIT, ASTRONOMICAL_UNIT, c, FieldMode::VerbatimYearUnits)
    }

    /// Converts SI geometry into the unit system `mode` works in.
    pub fn from_si(z_h: f64, a: f64, c: &PhysicalConstants, mode: FieldMode) -> Self {
        match mode {
            FieldMode::VerbatimYearUnits => Self {
                z_h: z_h / FIELD_LENGTH_UNIT,
                a: a / FIELD_LENGTH_UNIT,
                mu: c.mu * JULIAN_YEAR * JULIAN_YEAR / FIELD_LENGTH_UNIT.powi(3),
                mode,
                omega: 2.0 * PI,
                radial_term: true,
                half_width: 3.0,
            },
            FieldMode::SiAngular => Self {
                z_h,
                a,
                mu: c.mu,
                mode,
                omega: 2.0 * PI / JULIAN_YEAR,
                radial_term: true,
                half_width: 3.0 * FIELD_LENGTH_UNIT,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z_h > 0.0 && self.a > 0.0 && self.mu > 0.0) {
            return invalid("field geometry and mu must be positive");
        }
        if !(self.omega > 0.0) {
            return invalid(format!("omega must be positive, got {}", self.omega));
        }
        if !(self.half_width > 0.0) {
            return invalid("half_width must be positive");
        }
        Ok(())
    }

    fn rate(&self) -> f64 {
        match self.mode {
            FieldMode::VerbatimYearUnits => 2.0 * PI,
            FieldMode::SiAngular => self.omega,
        }
    }

    /// Rotational part alone, `(-ωy, ωx)`.
    pub fn rotation(&self, x: f64, y: f64) -> (f64, f64) {
        let w = self.rate();
        (-w * y, w * x)
    }
}

/// `(ẋ, ẏ)` at `(x, y)`.
pub fn velocity_field(x: f64, y: f64, cfg: &FieldConfig) -> Result<(f64, f64)> {
    let p2 = x * x + y * y;
    if !(p2 > 0.0) {
        return Err(DomainError::Origin.into());
    }
    let (rx, ry) = cfg.rotation(x, y);
    if !cfg.radial_term {
        return Ok((rx, ry));
    }
    let z2 = cfg.z_h * cfg.z_h;
    let r = (p2 + z2).sqrt();
    let radicand = vis_viva_radicand(r, cfg.a, cfg.mu)?;
    if radicand <= 0.0 {
        return Err(DomainError::NegativeRadicand { r, a: cfg.a }.into());
    }
    let common = p2.sqrt() / (p2 + z2) * radicand.sqrt();
    Ok((common * (1.0 + z2 * x / p2) + rx, common * (1.0 + z2 * y / p2) + ry))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Steps,
    Bounds,
    Stagnation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Streamline {
    pub seed: (f64, f64),
    pub points: Vec<(f64, f64)>,
    pub step: f64,
    pub terminated_by: Termination,
}

/// RK4 advection from `seed`. Field errors inside a step end the line with
/// [`Termination::Bounds`].
pub fn trace_streamline(seed: (f64, f64), cfg: &FieldConfig, step: f64, max_steps: usize) -> Result<Streamline> {
    cfg.validate()?;
    if !(step > 0.0 && step.is_finite()) {
        return invalid(format!("step must be positive, got {step}"));
    }
    velocity_field(seed.0, seed.1, cfg)?;
    let mut f = |_t: f64, p: Vec2| velocity_field(p.0, p.1, cfg).map(|(vx, vy)| Vec2(vx, vy));
    let mut points = vec![seed];
    let mut p = Vec2(seed.0, seed.1);
    let mut terminated_by = Termination::Steps;
    for i in 0..max_steps {
        let speed = match f(0.0, p) {
            Ok(v) => v.norm(),
            Err(_) => {
                terminated_by = Termination::Bounds;
                break;
            }
        };
        if speed < STAGNATION_SPEED {
            terminated_by = Termination::Stagnation;
            break;
        }
        let next = match ode::step(Method::Rk4, &mut f, i as f64 * step, p, step) {
            Ok(next) => next,
            Err(_) => {
                terminated_by = Termination::Bounds;
                break;
            }
        };
        if next.0.abs() > cfg.half_width || next.1.abs() > cfg.half_width {
            terminated_by = Termination::Bounds;
            break;
        }
        p = next;
        points.push((p.0, p.1));
    }
    Ok(Streamline {
        seed,
        points,
        step,
        terminated_by,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Revolution {
    pub min_radius: f64,
    pub max_radius: f64,
    /// `(max - min) / mean` over the revolution.
    pub variation: f64,
}

/// Splits a streamline into complete turns about the origin.
pub fn revolutions(line: &Streamline) -> Vec<Revolution> {
    let mut out = Vec::new();
    let Some(&(x0, y0)) = line.points.first() else {
        return out;
    };
    let mut prev = y0.atan2(x0);
    let mut swept = 0.0;
    let mut radii = vec![x0.hypot(y0)];
    for &(x, y) in &line.points[1..] {
        let angle = y.atan2(x);
        let mut d = angle - prev;
        if d > PI {
            d -= 2.0 * PI;
        } else if d < -PI {
            d += 2.0 * PI;
        }
        swept += d;
        prev = angle;
        radii.push(x.hypot(y));
        if swept.abs() >= 2.0 * PI {
            let min = radii.iter().copied().fold(f64::INFINITY, f64::min);
            let max = radii.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mean = radii.iter().sum::<f64>() / radii.len() as f64;
            out.push(Revolution {
                min_radius: min,
                max_radius: max,
                variation: (max - min) / mean,
            });
            swept -= 2.0 * PI * swept.signum();
            radii = vec![x.hypot(y)];
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSample {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

/// Samples the field on an `n × n` grid over `[-half_width, half_width]²`,
/// dropping points where it is undefined.
pub fn sample_grid(cfg: &FieldConfig, n: usize) -> Result<Vec<GridSample>> {
    cfg.validate()?;
    if n < 2 {
        return invalid("grid needs at least 2 points per side");
    }
    let h = 2.0 * cfg.half_width / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let (x, y) = (-cfg.half_width + i as f64 * h, -cfg.half_width + j as f64 * h);
            if let Ok((vx, vy)) = velocity_field(x, y, cfg) {
                out.push(GridSample { x, y, vx, vy });
            }
        }
    }
    Ok(out)
}
