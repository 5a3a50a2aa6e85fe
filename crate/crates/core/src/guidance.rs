//! The guiding-equation layer: the extra energy term K, the planar
//! constraint `r cos θ = Z_h`, the vis-viva speed law, the azimuthal ansatz
//! and the spherical velocity components it implies.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, DomainError, Result};
use crate::units::PhysicalConstants;

/// Free parameters of one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitGeometry {
    /// Semi-major axis, m.
    pub a: f64,
    /// Offset of the orbital plane along z, m.
    pub z_h: f64,
    /// Equilibrium radius, m.
    pub r_eq: f64,
    /// Dimensionless amplitude of the radial ansatz.
    pub xi: f64,
    /// Initial azimuth, rad.
    pub phi0: f64,
    /// Phase constant of the closed form, s.
    pub tau: f64,
}

impl OrbitGeometry {
    pub fn new(a: f64, z_h: f64, r_eq: f64, xi: f64, phi0: f64, tau: f64) -> Result<Self> {
        let g = Self {
            a,
            z_h,
            r_eq,
            xi,
            phi0,
            tau,
        };
        g.validate()?;
        Ok(g)
    }

    /// Earth parameters: `a = Z_h = 1.496e11 m`, `r_eq = 2.116e11 m`, `ξ = √2`.
    pub fn earth() -> Self {
        Self {
            a: 1.496e11,
            z_h: 1.496e11,
            r_eq: 2.116e11,
            xi: std::f64::consts::SQRT_2,
            phi0: 0.0,
            tau: 0.0,
        }
    }

    /// Geometry whose equilibrium radius sits on the asymptote `r_eq = ξ Z_h`.
    pub fn on_asymptote(a: f64, z_h: f64, xi: f64) -> Result<Self> {
        Self::new(a, z_h, xi * z_h, xi, 0.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.z_h > 0.0 && self.r_eq > 0.0) {
            return invalid("a, Z_h and r_eq must be positive");
        }
        if self.r_eq <= self.z_h {
            return invalid(format!("r_eq = {:e} must exceed Z_h = {:e}", self.r_eq, self.z_h));
        }
        if !(self.xi > 0.0 && self.xi < 4.0) {
            return invalid(format!("xi must lie in (0, 4), got {}", self.xi));
        }
        if !(self.phi0.is_finite() && self.tau.is_finite()) {
            return invalid("phi0 and tau must be finite");
        }
        Ok(())
    }
}

impl Default for OrbitGeometry {
    fn default() -> Self {
        Self::earth()
    }
}

/// A point on the constraint surface `r cos θ = Z_h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalState {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SphericalState {
    pub fn on_constraint(t: f64, r: f64, z_h: f64, phi: f64) -> Result<Self> {
        if r <= z_h {
            return Err(DomainError::BelowPlane { r, z_h }.into());
        }
        Ok(Self {
            t,
            r,
            theta: polar_from_constraint(r, z_h)?,
            phi,
        })
    }
}

pub(crate) fn vis_viva_radicand(r: f64, a: f64, mu: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(DomainError::NonPositiveRadius(r).into());
    }
    let radicand = 2.0 * mu / r - mu / a;
    if radicand < 0.0 {
        return Err(DomainError::NegativeRadicand { r, a }.into());
    }
    Ok(radicand)
}

/// `v = √(2μ/r - μ/a)`. Exactly zero at `r = 2a`, an error beyond it.
pub fn vis_viva_speed(r: f64, g: &OrbitGeometry, c: &PhysicalConstants) -> Result<f64> {
    Ok(vis_viva_radicand(r, g.a, c.mu)?.sqrt())
}

/// `(∇S)² = m_e² (2μ/r - μ/a)`.
pub fn guiding_momentum_sq(r: f64, g: &OrbitGeometry, c: &PhysicalConstants) -> Result<f64> {
    Ok(c.m_earth * c.m_earth * vis_viva_radicand(r, g.a, c.mu)?)
}

/// `K = A m_e / (2(r² - Z_h²)) - μ m_e (1/r - 1/2a)`, in joules.
pub fn extra_energy_k(r: f64, g: &OrbitGeometry, coupling_a: f64, c: &PhysicalConstants) -> Result<f64> {
    if r <= g.z_h {
        return Err(DomainError::BelowPlane { r, z_h: g.z_h }.into());
    }
    let planar_sq = (r - g.z_h) * (r + g.z_h);
    Ok(coupling_a * c.m_earth / (2.0 * planar_sq) - c.mu * c.m_earth * (1.0 / r - 0.5 / g.a))
}

/// `θ = arccos(Z_h / r)`.
pub fn polar_from_constraint(r: f64, z_h: f64) -> Result<f64> {
    if r < z_h {
        return Err(DomainError::BelowPlane { r, z_h }.into());
    }
    Ok((z_h / r).acos())
}

/// `sin θ` on the constraint, `√(1 - Z_h²/r²)`.
pub fn sin_polar(r: f64, z_h: f64) -> Result<f64> {
    if r < z_h {
        return Err(DomainError::BelowPlane { r, z_h }.into());
    }
    Ok(((r - z_h) * (r + z_h)).sqrt() / r)
}

fn nonzero_sine(theta: f64) -> Result<f64> {
    let s = theta.sin();
    if s == 0.0 || !s.is_finite() {
        return Err(DomainError::VanishingSine(theta).into());
    }
    Ok(s)
}

/// Azimuthal ansatz `φ = mħt / (m_e r² sin²θ) + φ₀`, not reduced mod 2π.
pub fn azimuth(t: f64, r: f64, theta: f64, m_q: f64, c: &PhysicalConstants, phi0: f64) -> Result<f64> {
    let s = nonzero_sine(theta)?;
    let rho = r * s;
    if rho == 0.0 {
        return Err(DomainError::VanishingSine(theta).into());
    }
    Ok(m_q * c.hbar / c.m_earth * t / (rho * rho) + phi0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalVelocity {
    pub v_r: f64,
    pub v_theta: f64,
    pub v_phi: f64,
}

impl SphericalVelocity {
    pub fn speed_sq(&self) -> f64 {
        self.v_r * self.v_r + self.v_theta * self.v_theta + self.v_phi * self.v_phi
    }
}

/// Velocity components implied by the azimuthal ansatz with `θ` slaved to `r`
/// through the planar constraint (`θ̇ = ṙ cos θ / (r sin θ)`).
pub fn velocity_components(
    t: f64,
    r: f64,
    theta: f64,
    r_dot: f64,
    m_q: f64,
    c: &PhysicalConstants,
) -> Result<SphericalVelocity> {
    let s = nonzero_sine(theta)?;
    let cos = theta.cos();
    let sqrt_a = m_q * c.hbar / c.m_earth;
    let bracket = 1.0 - 2.0 * r_dot * t / r - 2.0 * r_dot * t * cos * cos / (r * s * s);
    Ok(SphericalVelocity {
        v_r: r_dot,
        v_theta: r_dot * cos / s,
        v_phi: sqrt_a / (r * s) * bracket,
    })
}

/// Terms of the radial quadratic `c2 ṙ² + c1 ṙ + c0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialQuadratic {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl RadialQuadratic {
    /// Real roots, larger first. `None` when the discriminant is negative.
    pub fn roots(&self) -> Option<(f64, f64)> {
        let disc = self.c1 * self.c1 - 4.0 * self.c2 * self.c0;
        if disc < 0.0 {
            return None;
        }
        // avoid cancellation between -c1 and √disc
        let q = -0.5 * (self.c1 + self.c1.signum() * disc.sqrt());
        let (x1, x2) = if q == 0.0 { (0.0, 0.0) } else { (q / self.c2, self.c0 / q) };
        Some((x1.max(x2), x1.min(x2)))
    }

    pub fn eval(&self, r_dot: f64) -> f64 {
        (self.c2 * r_dot + self.c1) * r_dot + self.c0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticResidual {
    /// Left side of the radial quadratic divided by `μ/a`.
    pub residual: f64,
    /// Coefficient of `(2μ/r - μ/a) ξ²` once the ansatz is substituted.
    pub alpha: f64,
    /// `4t/(r sin θ) · √(2μ/r - μ/a)`.
    pub beta: f64,
    pub quadratic: RadialQuadratic,
}

pub fn radial_quadratic(
    t: f64,
    r: f64,
    theta: f64,
    g: &OrbitGeometry,
    coupling_a: f64,
    c: &PhysicalConstants,
) -> Result<RadialQuadratic> {
    if r <= g.z_h {
        return Err(DomainError::BelowPlane { r, z_h: g.z_h }.into());
    }
    let s = nonzero_sine(theta)?;
    let (a, z) = (coupling_a, g.z_h);
    let s2 = s * s;
    let z2 = z * z;
    let r2 = r * r;
    let (r3, r4) = (r2 * r, r2 * r2);
    let t2 = t * t;
    // higher powers of r formed as ratios to stay in range
    let z_over_r2 = z2 / r2;
    let c2 = 1.0
        + 4.0 * a * t2 / (r4 * s2)
        + z2 / (r2 * s2)
        + 4.0 * a * t2 / (r4 * s2) * z_over_r2 * z_over_r2 / (s2 * s2)
        + 8.0 * a * t2 / (r4 * s2) * z_over_r2 / s2;
    let c1 = -(4.0 * a * t / (r3 * s2) + 4.0 * a * t / (r3 * s2) * z_over_r2 / s2);
    let c0 = a / (r2 * s2) - 2.0 * c.mu / r + c.mu / g.a;
    Ok(RadialQuadratic { c2, c1, c0 })
}

/// Evaluates the radial quadratic at `ṙ`, scaled by `μ/a`, along with the
/// `α` and `β` groupings that appear once the radial ansatz is substituted.
pub fn quadratic_residual(
    t: f64,
    r: f64,
    theta: f64,
    r_dot: f64,
    g: &OrbitGeometry,
    coupling_a: f64,
    c: &PhysicalConstants,
) -> Result<QuadraticResidual> {
    let quadratic = radial_quadratic(t, r, theta, g, coupling_a, c)?;
    let s = nonzero_sine(theta)?;
    let s2 = s * s;
    let z_over_r2 = (g.z_h / r).powi(2);
    let base = 4.0 * coupling_a * t * t / r.powi(4);
    let alpha = 1.0 + base * z_over_r2 / (s2 * s2) * (1.0 + s2) + base;
    let v = vis_viva_radicand(r, g.a, c.mu)?.sqrt();
    let beta = 4.0 * t / (r * s) * v;
    Ok(QuadraticResidual {
        residual: quadratic.eval(r_dot) / (c.mu / g.a),
        alpha,
        beta,
        quadratic,
    })
}
