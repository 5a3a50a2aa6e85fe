//! Radial and angular probability densities of the Earth's wavefunction,
//! evaluated in log space so quantum numbers near 1e74 stay representable.
//!
//! The radial density `r² ℜ²(r) ∝ r^{n+1} e^{-2r/(bn)}` is a gamma
//! distribution with shape `n + 2` and scale `bn/2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, DomainError, Error, Result};
use crate::special::{ln_gamma, log1p_minus, stirling_remainder};

/// Largest `n` accepted by [`normalization_check`].
pub const QUADRATURE_MAX_N: f64 = 100.0;
pub const QUADRATURE_MIN_POINTS: usize = 1000;
/// Largest `m` for which the normalized angular density is offered.
pub const ANGULAR_MAX_M: f64 = 1e6;
/// Upper tail mass tolerated beyond the quadrature cut.
pub const TAIL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialDensitySpec {
    pub n: f64,
    pub b: f64,
    /// Log of the normalization constant of `r² ℜ²`.
    pub log_norm: f64,
}

impl RadialDensitySpec {
    pub fn new(n: f64, b: f64) -> Result<Self> {
        if !(n >= 1.0 && n.is_finite()) {
            return invalid(format!("n must be >= 1, got {n}"));
        }
        if !(b > 0.0 && b.is_finite()) {
            return invalid(format!("b must be positive, got {b}"));
        }
        let log_norm = -ln_gamma(n + 2.0) - (n + 2.0) * (0.5 * b * n).ln();
        Ok(Self { n, b, log_norm })
    }

    /// Gamma-distribution scale `bn/2`.
    pub fn scale(&self) -> f64 {
        0.5 * self.b * self.n
    }

    /// Gamma-distribution shape `n + 2`.
    pub fn shape(&self) -> f64 {
        self.n + 2.0
    }

    pub fn mean(&self) -> f64 {
        self.shape() * self.scale()
    }

    pub fn std_dev(&self) -> f64 {
        self.shape().sqrt() * self.scale()
    }

    fn ln_mode(&self) -> f64 {
        ln_most_probable_radius(self.n, self.b)
    }

    /// `r / r_mp - 1`, accurate when `r` is within rounding of `r_mp`.
    fn offset(&self, r: f64) -> f64 {
        (r.ln() - self.ln_mode()).exp_m1()
    }
}

/// `ln(r² ℜ²)` through a saddle-point rearrangement around `r_mp`:
/// `k (ln(1+u) - u) - ½ ln 2πk - R(k) - ln s` with `k = n + 1`,
/// `s = bn/2`, `u = r/r_mp - 1` and `R` the Stirling remainder.
///
/// Unlike [`log_radial_density_direct`], no term grows like `n ln n`, so
/// the result keeps its absolute accuracy for astronomical `n`.
pub fn log_radial_density(r: f64, spec: &RadialDensitySpec) -> Result<f64> {
    if !(r > 0.0) {
        return Err(DomainError::NonPositiveRadius(r).into());
    }
    let k = spec.n + 1.0;
    let u = spec.offset(r);
    Ok(k * log1p_minus(u) - 0.5 * (2.0 * PI * k).ln() - stirling_remainder(k) - spec.scale().ln())
}

/// `ln C + (n+1) ln r - 2r/(bn)` with the log-gamma normalization.
pub fn log_radial_density_direct(r: f64, spec: &RadialDensitySpec) -> Result<f64> {
    if !(r > 0.0) {
        return Err(DomainError::NonPositiveRadius(r).into());
    }
    Ok(spec.log_norm + (spec.n + 1.0) * r.ln() - r / spec.scale())
}

pub fn radial_density(r: f64, spec: &RadialDensitySpec) -> Result<f64> {
    log_radial_density(r, spec).map(f64::exp)
}

fn ln_most_probable_radius(n: f64, b: f64) -> f64 {
    n.ln() + (n + 1.0).ln() + b.ln() - 2f64.ln()
}

/// `n(n+1) b / 2`.
pub fn most_probable_radius(n: f64, b: f64) -> f64 {
    ln_most_probable_radius(n, b).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularDensitySpec {
    pub m: f64,
    /// Return logarithms from [`angular_density`] instead of values.
    pub log_space: bool,
}

impl AngularDensitySpec {
    pub fn new(m: f64) -> Result<Self> {
        if !(m >= 0.0 && m.is_finite()) {
            return invalid(format!("m must be >= 0, got {m}"));
        }
        Ok(Self { m, log_space: true })
    }
}

/// `m ln sin θ`, unnormalized.
pub fn angular_log_density(theta: f64, spec: &AngularDensitySpec) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(DomainError::VanishingSine(theta).into());
    }
    let s = theta.sin();
    if spec.m == 0.0 {
        return Ok(0.0);
    }
    Ok(spec.m * s.ln())
}

/// `ln ∫₀^π sin^m θ dθ = ln(√π Γ((m+1)/2) / Γ(m/2 + 1))`.
pub fn angular_log_normalization(m: f64) -> f64 {
    0.5 * PI.ln() + ln_gamma(0.5 * (m + 1.0)) - ln_gamma(0.5 * m + 1.0)
}

/// Angular density normalized over `θ ∈ (0, π)`, for `m ≤ 1e6`.
pub fn angular_density(theta: f64, spec: &AngularDensitySpec) -> Result<f64> {
    if spec.m > ANGULAR_MAX_M {
        return invalid(format!("normalized angular density needs m <= {ANGULAR_MAX_M:e}"));
    }
    let log = angular_log_density(theta, spec)? - angular_log_normalization(spec.m);
    Ok(if spec.log_space { log } else { log.exp() })
}

/// Composite Simpson integral of the radial density over `(0, r_mp + 40σ)`.
pub fn normalization_check(spec: &RadialDensitySpec, quad_points: usize) -> Result<f64> {
    if spec.n > QUADRATURE_MAX_N {
        return invalid(format!("quadrature check needs n <= {QUADRATURE_MAX_N}, got {}", spec.n));
    }
    if quad_points < QUADRATURE_MIN_POINTS {
        return invalid(format!("need at least {QUADRATURE_MIN_POINTS} quadrature points"));
    }
    let s = spec.scale();
    let k = spec.n + 1.0;
    let r_cut = most_probable_radius(spec.n, spec.b) + 40.0 * spec.std_dev();
    // Tail of a gamma density past its mode is at most p(r_cut) s / (1 - ks/r_cut).
    let tail = radial_density(r_cut, spec)? * s / (1.0 - k * s / r_cut);
    if tail > TAIL_TOLERANCE {
        return Err(Error::Quadrature(tail));
    }
    let intervals = if quad_points.is_multiple_of(2) { quad_points } else { quad_points + 1 };
    let h = r_cut / intervals as f64;
    let mut sum = 0.0;
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * radial_density(i as f64 * h, spec)?;
    }
    sum += radial_density(r_cut, spec)?;
    Ok(sum * h / 3.0)
}

/// `a/(2ar - r²) - 1/r`, the coefficient multiplying `ℜ²`.
pub fn continuity_coefficient(r: f64, a: f64) -> Result<f64> {
    if !(r > 0.0 && r < 2.0 * a) {
        return invalid(format!("continuity relation needs 0 < r < 2a, got r = {r:e}"));
    }
    Ok(a / (2.0 * a * r - r * r) - 1.0 / r)
}

/// `(r/ℜ²) [dℜ²/dr - (a/(2ar - r²) - 1/r) ℜ²]` for `ℜ² ∝ r^{n-1} e^{-2r/(bn)}`,
/// which reduces to `n - 2r/(bn) - a/(2a - r)`.
pub fn continuity_residual(r: f64, a: f64, spec: &RadialDensitySpec) -> Result<f64> {
    if !(r > 0.0 && r < 2.0 * a) {
        return invalid(format!("continuity relation needs 0 < r < 2a, got r = {r:e}"));
    }
    // n - 2r/(bn) = -1 - (n+1) u with u = r/r_mp - 1
    let u = spec.offset(r);
    Ok(-1.0 - (spec.n + 1.0) * u - a / (2.0 * a - r))
}

/// Relative spread `σ/⟨r⟩ = 1/√(n+2)` of the radial density.
pub fn delta_limit_metric(n: f64, b: f64) -> Result<f64> {
    RadialDensitySpec::new(n, b)?;
    Ok(1.0 / (n + 2.0).sqrt())
}
