//! Earth trajectories from three radius sources: the tangent closed form,
//! the expanded Riccati equation about `r_eq`, and direct integration of
//! the radial ansatz `ṙ = ξ sin θ √(2μ/r - μ/a)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, DomainError, Error, Result};
use crate::guidance::{azimuth, polar_from_constraint, sin_polar, vis_viva_radicand, OrbitGeometry};
use crate::ode::{self, Method};
use crate::units::{PhysicalConstants, JULIAN_YEAR};

/// Fraction of the tangent period kept clear on either side of a pole.
pub const SINGULARITY_MARGIN_FRACTION: f64 = 1e-4;

/// Coefficients of the closed-form radius plus the geometry they came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormParams {
    /// Vis-viva speed at `r_eq`, m/s.
    pub b: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    /// `√(4 B1 B3 - B2²)`, 1/s.
    pub c: f64,
    pub r_eq: f64,
    pub a: f64,
    pub z_h: f64,
    pub xi: f64,
    pub tau: f64,
    pub mu: f64,
}

pub fn closed_form_coefficients(g: &OrbitGeometry, c: &PhysicalConstants) -> Result<ClosedFormParams> {
    let mu = c.mu;
    let r = g.r_eq;
    if !(r > 0.0 && g.a > 0.0) {
        return Err(Error::Construction(format!("r_eq = {r:e} and a = {:e} must be positive", g.a)));
    }
    let b_sq = 2.0 * mu / r - mu / g.a;
    if !(b_sq > 0.0) {
        return Err(Error::Construction(format!("B² = {b_sq:e} is not positive")));
    }
    let b = b_sq.sqrt();
    let b_cubed = b * b_sq;
    let b1 = b - mu * mu / (8.0 * b_cubed * r * r) + mu / (2.0 * b * r);
    let b3 = mu * mu / (8.0 * b_cubed * r.powi(4));
    let b2 = mu * mu / (4.0 * b_cubed * r.powi(3)) - mu / (2.0 * b * r * r);
    let c_sq = 4.0 * b1 * b3 - b2 * b2;
    if !(c_sq > 0.0) {
        return Err(Error::Construction(format!("C² = 4 B1 B3 - B2² = {c_sq:e} is not positive")));
    }
    if !(b3 > 0.0) {
        return Err(Error::Construction("B3 is not positive".into()));
    }
    Ok(ClosedFormParams {
        b,
        b1,
        b2,
        b3,
        c: c_sq.sqrt(),
        r_eq: r,
        a: g.a,
        z_h: g.z_h,
        xi: g.xi,
        tau: g.tau,
        mu,
    })
}

/// Sign in front of the inner square root of the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `F² - √(F²(F² - 4Z_h²))`, decaying toward `ξ Z_h`.
    #[default]
    Minus,
    Plus,
}

impl ClosedFormParams {
    /// Period of the tangent, `2π/C`.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.c
    }

    pub fn singularity_margin(&self) -> f64 {
        SINGULARITY_MARGIN_FRACTION * self.period()
    }

    /// `F(t) = (-B2 + C tan(C(t+τ)/2)) / B3`.
    pub fn tangent_function(&self, t: f64) -> f64 {
        (-self.b2 + self.c * (0.5 * self.c * (t + self.tau)).tan()) / self.b3
    }

    /// Pole of the tangent closest to `t`.
    pub fn nearest_pole(&self, t: f64) -> f64 {
        let k = ((self.c * (t + self.tau) - PI) / (2.0 * PI)).round();
        (PI + 2.0 * PI * k) / self.c - self.tau
    }

    /// Limit of the minus branch as `t` approaches a pole.
    pub fn asymptotic_radius(&self) -> f64 {
        self.xi * self.z_h
    }

    /// `[start, pole)` of the tangent branch ending at [`singularity_time`];
    /// `start` is where `F = 2 Z_h` and the closed form turns real.
    pub fn validity_window(&self) -> (f64, f64) {
        let pole = singularity_time(self);
        let kappa = (2.0 * self.z_h * self.b3 + self.b2) / self.c;
        let start = pole - (0.5 * PI - kappa.atan()) * 2.0 / self.c;
        (start, pole)
    }
}

/// Smallest `t > 0` with `C(t+τ)/2 = π/2 (mod π)`.
pub fn singularity_time(p: &ClosedFormParams) -> f64 {
    let period = p.period();
    let first = PI / p.c - p.tau;
    let mut t = first - (first / period).floor() * period;
    if t <= 0.0 {
        t += period;
    }
    t
}

pub fn closed_form_radius(t: f64, p: &ClosedFormParams) -> Result<f64> {
    closed_form_radius_on(t, p, Branch::Minus)
}

/// `r(t) = ξ √(F² ∓ √(F²(F² - 4Z_h²))) / √2`.
pub fn closed_form_radius_on(t: f64, p: &ClosedFormParams, branch: Branch) -> Result<f64> {
    if !(p.z_h > 0.0) {
        return invalid("closed form degenerates for Z_h <= 0");
    }
    let pole = p.nearest_pole(t);
    if (t - pole).abs() < p.singularity_margin() {
        return Err(DomainError::NearSingularity { t, pole }.into());
    }
    let f = p.tangent_function(t).abs();
    let two_z = 2.0 * p.z_h;
    if f < two_z {
        return Err(DomainError::ComplexBranch { t }.into());
    }
    let root = ((f - two_z) * (f + two_z)).sqrt();
    let inner = match branch {
        // F(F - √(F²-4Z²)) rewritten without cancellation
        Branch::Minus => f * two_z * two_z / (f + root),
        Branch::Plus => f * (f + root),
    };
    Ok(p.xi * (0.5 * inner).sqrt())
}

/// Expanded radial equation about `r_eq`:
/// `dq/dt = ξ sin θ [B - μq/(2B r_eq²) - μ²q²/(8B³ r_eq⁴)]`.
pub fn riccati_rhs(q: f64, theta: f64, p: &ClosedFormParams, xi: f64) -> f64 {
    let (b, r) = (p.b, p.r_eq);
    xi * theta.sin() * (b - p.mu * q / (2.0 * b * r * r) - p.mu * p.mu * q * q / (8.0 * b.powi(3) * r.powi(4)))
}

/// The intermediate, single-expansion form
/// `dq/dt = ξ sin θ √(μ/r_eq (2 - q/r_eq) - μ/a)`.
pub fn riccati_rhs_linearized(q: f64, theta: f64, p: &ClosedFormParams, xi: f64) -> Result<f64> {
    let radicand = p.mu / p.r_eq * (2.0 - q / p.r_eq) - p.mu / p.a;
    if radicand < 0.0 {
        return Err(DomainError::NegativeRadicand { r: p.r_eq + q, a: p.a }.into());
    }
    Ok(xi * theta.sin() * radicand.sqrt())
}

/// Unexpanded right side at `r = r_eq + q`.
pub fn radial_rhs(r: f64, theta: f64, a: f64, mu: f64, xi: f64) -> Result<f64> {
    Ok(xi * theta.sin() * vis_viva_radicand(r, a, mu)?.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    /// Step size, s.
    pub dt: f64,
    pub steps: usize,
    pub method: Method,
    /// Relative change below which a step counts toward stagnation.
    pub stop_radius_tol: f64,
}

impl IntegratorConfig {
    pub fn new(dt: f64, steps: usize, method: Method, stop_radius_tol: f64) -> Result<Self> {
        let cfg = Self {
            dt,
            steps,
            method,
            stop_radius_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return invalid(format!("dt must be positive, got {}", self.dt));
        }
        if self.steps < 1 {
            return invalid("steps must be at least 1");
        }
        if !(self.stop_radius_tol > 0.0 && self.stop_radius_tol < 0.1) {
            return invalid(format!("stop_radius_tol must lie in (0, 0.1), got {}", self.stop_radius_tol));
        }
        Ok(())
    }
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            dt: 1e4,
            steps: 10_000,
            method: Method::Rk4,
            stop_radius_tol: 1e-12,
        }
    }
}

/// Consecutive sub-tolerance steps before integration is declared stagnant.
pub const STAGNATION_STEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialStop {
    Completed,
    /// The next step would reach `r >= 2a`.
    UpperBound,
    /// The next step would reach `r <= Z_h`.
    LowerBound,
    Stagnated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialPath {
    /// `(t, r)` pairs starting at `(0, r0)`.
    pub points: Vec<(f64, f64)>,
    pub stop: RadialStop,
}

/// Fixed-step integration of the radial ansatz with `sin θ = √(1 - Z_h²/r²)`.
pub fn integrate_radial(r0: f64, g: &OrbitGeometry, cfg: &IntegratorConfig, c: &PhysicalConstants) -> Result<RadialPath> {
    cfg.validate()?;
    if !(r0 > g.z_h && r0 < 2.0 * g.a) {
        return invalid(format!("r0 = {r0:e} must lie in (Z_h, 2a)"));
    }
    let mut rhs = |_t: f64, r: f64| -> Result<f64> {
        let s = sin_polar(r, g.z_h)?;
        Ok(g.xi * s * vis_viva_radicand(r, g.a, c.mu)?.sqrt())
    };
    let mut points = Vec::with_capacity(cfg.steps + 1);
    points.push((0.0, r0));
    let (mut t, mut r) = (0.0, r0);
    let mut quiet = 0;
    for _ in 0..cfg.steps {
        // a stage that leaves (Z_h, 2a) means the bound would be crossed within this step
        let next = match ode::step(cfg.method, &mut rhs, t, r, cfg.dt) {
            Ok(next) => next,
            Err(Error::Domain(DomainError::NegativeRadicand { .. })) => {
                return Ok(RadialPath { points, stop: RadialStop::UpperBound })
            }
            Err(Error::Domain(DomainError::BelowPlane { .. })) => {
                return Ok(RadialPath { points, stop: RadialStop::LowerBound })
            }
            Err(_) => return Err(Error::Step { t, r }),
        };
        if next >= 2.0 * g.a {
            return Ok(RadialPath { points, stop: RadialStop::UpperBound });
        }
        if next <= g.z_h {
            return Ok(RadialPath { points, stop: RadialStop::LowerBound });
        }
        let change = ((next - r) / next).abs();
        t += cfg.dt;
        r = next;
        points.push((t, r));
        quiet = if change < cfg.stop_radius_tol { quiet + 1 } else { 0 };
        if quiet >= STAGNATION_STEPS {
            return Ok(RadialPath { points, stop: RadialStop::Stagnated });
        }
    }
    Ok(RadialPath { points, stop: RadialStop::Completed })
}

/// Integrates the expanded Riccati equation from `(t0, q0)` to `t1`,
/// with `θ` taken from the planar constraint at `r_eq + q`.
/// Returns `(t, r)` pairs including both ends.
pub fn integrate_riccati(
    q0: f64,
    t0: f64,
    t1: f64,
    p: &ClosedFormParams,
    dt: f64,
    method: Method,
) -> Result<Vec<(f64, f64)>> {
    if !(dt > 0.0) || !(t1 >= t0) {
        return invalid("need dt > 0 and t1 >= t0");
    }
    let n = ((t1 - t0) / dt).ceil().max(1.0) as usize;
    let h = (t1 - t0) / n as f64;
    let mut rhs = |_t: f64, q: f64| -> Result<f64> {
        let theta = polar_from_constraint(p.r_eq + q, p.z_h)?;
        Ok(riccati_rhs(q, theta, p, p.xi))
    };
    let mut out = Vec::with_capacity(n + 1);
    let mut q = q0;
    out.push((t0, p.r_eq + q));
    for i in 0..n {
        let t = t0 + i as f64 * h;
        q = ode::step(method, &mut rhs, t, q, h).map_err(|_| Error::Step { t, r: p.r_eq + q })?;
        out.push((t0 + (i + 1) as f64 * h, p.r_eq + q));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadiusSource {
    ClosedForm,
    Numeric,
    Riccati,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiMode {
    /// `φ = mħt/(m_e r² sin²θ) + φ₀` at the current `(r, θ)`.
    #[default]
    Guided,
    /// `φ = 2πt / year + φ₀`.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryOptions {
    pub source: RadiusSource,
    pub phi_mode: PhiMode,
    pub branch: Branch,
    /// Largest sub-step for the numeric sources, and their method.
    pub integrator: IntegratorConfig,
    /// Starting radius for the numeric sources; defaults to `r_eq`.
    pub r0: Option<f64>,
    /// Drop closed-form samples that precede the validity window instead of
    /// truncating on them.
    pub skip_leading_invalid: bool,
}

impl TrajectoryOptions {
    pub fn new(source: RadiusSource) -> Self {
        Self {
            source,
            phi_mode: PhiMode::Guided,
            branch: Branch::Minus,
            integrator: IntegratorConfig::default(),
            r0: None,
            skip_leading_invalid: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub speed: f64,
}

impl TrajectorySample {
    pub fn planar_distance(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// `z = r cos θ = Z_h` and `x² + y² = r² sin² θ`, both to 1e-9.
    pub fn satisfies_constraint(&self, z_h: f64) -> bool {
        let z_ok = ((self.z - z_h) / z_h).abs() < 1e-9 && ((self.r * self.theta.cos() - z_h) / z_h).abs() < 1e-9;
        let planar_sq = self.x * self.x + self.y * self.y;
        let expected = (self.r * self.theta.sin()).powi(2);
        z_ok && ((planar_sq - expected) / expected).abs() < 1e-9
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    /// Why sampling stopped before the end of the grid, if it did.
    pub truncated: Option<Error>,
    /// Leading grid points dropped as outside the closed form's window.
    pub skipped: usize,
}

fn sample_at(t: f64, r: f64, g: &OrbitGeometry, m_q: f64, c: &PhysicalConstants, mode: PhiMode) -> Result<TrajectorySample> {
    if r <= g.z_h {
        return Err(DomainError::BelowPlane { r, z_h: g.z_h }.into());
    }
    let theta = polar_from_constraint(r, g.z_h)?;
    let speed = vis_viva_radicand(r, g.a, c.mu)?.sqrt();
    let phi = match mode {
        PhiMode::Guided => azimuth(t, r, theta, m_q, c, g.phi0)?,
        PhiMode::Uniform => 2.0 * PI * t / JULIAN_YEAR + g.phi0,
    };
    let rho = ((r - g.z_h) * (r + g.z_h)).sqrt();
    Ok(TrajectorySample {
        t,
        r,
        theta,
        phi,
        x: rho * phi.cos(),
        y: rho * phi.sin(),
        z: r * theta.cos(),
        speed,
    })
}

/// Samples a trajectory on `t_grid`. A failing sample ends the series and is
/// reported in [`Trajectory::truncated`].
pub fn trajectory_cartesian(
    t_grid: &[f64],
    g: &OrbitGeometry,
    m_q: f64,
    c: &PhysicalConstants,
    opts: &TrajectoryOptions,
) -> Result<Trajectory> {
    if t_grid.is_empty() {
        return invalid("time grid is empty");
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return invalid("time grid must be strictly increasing");
    }
    let mut out = Trajectory {
        samples: Vec::with_capacity(t_grid.len()),
        truncated: None,
        skipped: 0,
    };
    match opts.source {
        RadiusSource::ClosedForm => {
            let p = closed_form_coefficients(g, c)?;
            for &t in t_grid {
                let r = closed_form_radius_on(t, &p, opts.branch);
                let sample = r.and_then(|r| sample_at(t, r, g, m_q, c, opts.phi_mode));
                match sample {
                    Ok(s) => out.samples.push(s),
                    Err(Error::Domain(DomainError::ComplexBranch { .. }))
                        if opts.skip_leading_invalid && out.samples.is_empty() =>
                    {
                        out.skipped += 1
                    }
                    Err(e) => {
                        out.truncated = Some(e);
                        break;
                    }
                }
            }
        }
        RadiusSource::Numeric | RadiusSource::Riccati => {
            opts.integrator.validate()?;
            let p = if opts.source == RadiusSource::Riccati {
                Some(closed_form_coefficients(g, c)?)
            } else {
                None
            };
            let mut r = opts.r0.unwrap_or(g.r_eq);
            let mut rhs = |_t: f64, r: f64| -> Result<f64> {
                match &p {
                    Some(p) => {
                        let theta = polar_from_constraint(r, g.z_h)?;
                        Ok(riccati_rhs(r - p.r_eq, theta, p, g.xi))
                    }
                    None => Ok(g.xi * sin_polar(r, g.z_h)? * vis_viva_radicand(r, g.a, c.mu)?.sqrt()),
                }
            };
            for (i, &t) in t_grid.iter().enumerate() {
                if i > 0 {
                    let t_prev = t_grid[i - 1];
                    let n = ((t - t_prev) / opts.integrator.dt).ceil().max(1.0) as usize;
                    let stepped = ode::integrate(opts.integrator.method, &mut rhs, t_prev, r, t, n);
                    match stepped {
                        Ok(next) => r = next,
                        Err(e) => {
                            out.truncated = Some(e);
                            break;
                        }
                    }
                }
                match sample_at(t, r, g, m_q, c, opts.phi_mode) {
                    Ok(s) => out.samples.push(s),
                    Err(e) => {
                        out.truncated = Some(e);
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Uniform grid `t_start, t_start + dt, ...` not exceeding `t_end`.
pub fn uniform_grid(t_start: f64, t_end: f64, dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0) || !(t_end >= t_start) {
        return invalid("grid needs dt > 0 and t_end >= t_start");
    }
    let n = ((t_end - t_start) / dt * (1.0 + 1e-12)).floor() as usize;
    Ok((0..=n).map(|i| t_start + i as f64 * dt).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub t_converge: f64,
    /// `(t, |ρ - target| / target)` for every sample.
    pub history: Vec<(f64, f64)>,
}

/// First time from which the planar distance stays within `tol` (relative)
/// of `target` for the rest of the series.
pub fn convergence_report(samples: &[TrajectorySample], target: f64, tol: f64) -> Result<ConvergenceReport> {
    if samples.is_empty() {
        return invalid("no samples to analyse");
    }
    let history: Vec<(f64, f64)> = samples
        .iter()
        .map(|s| (s.t, ((s.planar_distance() - target) / target).abs()))
        .collect();
    let first_settled = match history.iter().rposition(|&(_, d)| !(d <= tol)) {
        None => 0,
        Some(i) if i + 1 < history.len() => i + 1,
        Some(_) => return Err(Error::NotConverged { target, tol }),
    };
    Ok(ConvergenceReport {
        t_converge: history[first_settled].0,
        history,
    })
}
