//! Python bindings for `bohmian_earth`.
//!
//! Errors from the library surface as `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use bohmian_earth::field::{self, FieldConfig, Termination};
use bohmian_earth::ode::Method;
use bohmian_earth::trajectory::{self, RadiusSource, TrajectoryOptions};
use bohmian_earth::units::JULIAN_YEAR;
use bohmian_earth::{audit, guidance, quantum, wavefunction};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "PhysicalConstants", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyConstants(bohmian_earth::PhysicalConstants);

#[pymethods]
impl PyConstants {
    #[new]
    fn new(g: f64, m_sun: f64, m_earth: f64, hbar: f64) -> PyResult<Self> {
        bohmian_earth::PhysicalConstants::new(g, m_sun, m_earth, hbar).map(Self).map_err(err)
    }

    #[staticmethod]
    fn standard() -> Self {
        Self(bohmian_earth::PhysicalConstants::standard())
    }

    #[getter]
    fn g(&self) -> f64 {
        self.0.g
    }
    #[getter]
    fn m_sun(&self) -> f64 {
        self.0.m_sun
    }
    #[getter]
    fn m_earth(&self) -> f64 {
        self.0.m_earth
    }
    #[getter]
    fn hbar(&self) -> f64 {
        self.0.hbar
    }
    #[getter]
    fn mu(&self) -> f64 {
        self.0.mu
    }

    fn __repr__(&self) -> String {
        format!(
            "PhysicalConstants(g={:e}, m_sun={:e}, m_earth={:e}, hbar={:e})",
            self.0.g, self.0.m_sun, self.0.m_earth, self.0.hbar
        )
    }
}

#[pyclass(name = "OrbitGeometry", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyGeometry(bohmian_earth::OrbitGeometry);

#[pymethods]
impl PyGeometry {
    #[new]
    #[pyo3(signature = (a, z_h, r_eq, xi, phi0 = 0.0, tau = 0.0))]
    fn new(a: f64, z_h: f64, r_eq: f64, xi: f64, phi0: f64, tau: f64) -> PyResult<Self> {
        bohmian_earth::OrbitGeometry::new(a, z_h, r_eq, xi, phi0, tau).map(Self).map_err(err)
    }

    #[staticmethod]
    fn earth() -> Self {
        Self(bohmian_earth::OrbitGeometry::earth())
    }

    /// Geometry with `r_eq = xi * z_h`.
    #[staticmethod]
    fn on_asymptote(a: f64, z_h: f64, xi: f64) -> PyResult<Self> {
        bohmian_earth::OrbitGeometry::on_asymptote(a, z_h, xi).map(Self).map_err(err)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }
    #[getter]
    fn z_h(&self) -> f64 {
        self.0.z_h
    }
    #[getter]
    fn r_eq(&self) -> f64 {
        self.0.r_eq
    }
    #[getter]
    fn xi(&self) -> f64 {
        self.0.xi
    }
    #[getter]
    fn phi0(&self) -> f64 {
        self.0.phi0
    }
    #[getter]
    fn tau(&self) -> f64 {
        self.0.tau
    }

    fn __repr__(&self) -> String {
        let g = &self.0;
        format!(
            "OrbitGeometry(a={:e}, z_h={:e}, r_eq={:e}, xi={}, phi0={}, tau={:e})",
            g.a, g.z_h, g.r_eq, g.xi, g.phi0, g.tau
        )
    }
}

fn constants_or_standard(c: Option<PyConstants>) -> bohmian_earth::PhysicalConstants {
    c.map(|c| c.0).unwrap_or_else(bohmian_earth::PhysicalConstants::standard)
}

fn geometry_or_earth(g: Option<PyGeometry>) -> bohmian_earth::OrbitGeometry {
    g.map(|g| g.0).unwrap_or_else(bohmian_earth::OrbitGeometry::earth)
}

#[pyfunction]
#[pyo3(signature = (constants = None))]
fn gravitational_bohr_length(constants: Option<PyConstants>) -> f64 {
    quantum::gravitational_bohr_length(&constants_or_standard(constants))
}

/// Returns `(n, log10 n)`.
#[pyfunction]
fn principal_from_semimajor(a: f64, b: f64) -> PyResult<(f64, f64)> {
    quantum::principal_from_semimajor(a, b).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (r_orbit, period = JULIAN_YEAR, constants = None))]
fn magnetic_from_period(r_orbit: f64, period: f64, constants: Option<PyConstants>) -> PyResult<f64> {
    quantum::magnetic_from_period(&constants_or_standard(constants), r_orbit, period).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (m, constants = None))]
fn coupling_a(m: f64, constants: Option<PyConstants>) -> PyResult<f64> {
    quantum::coupling_a(m, &constants_or_standard(constants)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, constants = None))]
fn energy_level(n: f64, constants: Option<PyConstants>) -> PyResult<f64> {
    quantum::energy_level(n, &constants_or_standard(constants)).map_err(err)
}

#[pyfunction]
fn relative_level_gap(n: f64) -> PyResult<f64> {
    quantum::relative_level_gap(n).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (r, geometry = None, constants = None))]
fn vis_viva_speed(r: f64, geometry: Option<PyGeometry>, constants: Option<PyConstants>) -> PyResult<f64> {
    guidance::vis_viva_speed(r, &geometry_or_earth(geometry), &constants_or_standard(constants)).map_err(err)
}

/// Closed-form radius for one geometry.
#[pyclass(name = "ClosedForm", frozen)]
struct PyClosedForm(trajectory::ClosedFormParams);

#[pymethods]
impl PyClosedForm {
    #[new]
    #[pyo3(signature = (geometry = None, constants = None))]
    fn new(geometry: Option<PyGeometry>, constants: Option<PyConstants>) -> PyResult<Self> {
        trajectory::closed_form_coefficients(&geometry_or_earth(geometry), &constants_or_standard(constants))
            .map(Self)
            .map_err(err)
    }

    /// `(B, B1, B2, B3, C)`.
    #[getter]
    fn coefficients(&self) -> (f64, f64, f64, f64, f64) {
        let p = &self.0;
        (p.b, p.b1, p.b2, p.b3, p.c)
    }

    fn radius(&self, t: f64) -> PyResult<f64> {
        trajectory::closed_form_radius(t, &self.0).map_err(err)
    }

    fn singularity_time(&self) -> f64 {
        trajectory::singularity_time(&self.0)
    }

    fn validity_window(&self) -> (f64, f64) {
        self.0.validity_window()
    }

    fn asymptotic_radius(&self) -> f64 {
        self.0.asymptotic_radius()
    }
}

type SampleTuple = (f64, f64, f64, f64, f64, f64, f64, f64);

/// Samples `(t, r, theta, phi, x, y, z, speed)` on `t_grid`.
///
/// `source` is `"closed-form"`, `"numeric"` or `"riccati"`. Sampling stops
/// at the first invalid point; leading complex closed-form points are
/// skipped when `skip_leading_invalid` is set.
#[pyfunction]
#[pyo3(signature = (t_grid, source = "closed-form", geometry = None, m = None, constants = None, r0 = None, skip_leading_invalid = true))]
fn trajectory_samples(
    t_grid: Vec<f64>,
    source: &str,
    geometry: Option<PyGeometry>,
    m: Option<f64>,
    constants: Option<PyConstants>,
    r0: Option<f64>,
    skip_leading_invalid: bool,
) -> PyResult<Vec<SampleTuple>> {
    let c = constants_or_standard(constants);
    let g = geometry_or_earth(geometry);
    let source = match source {
        "closed-form" => RadiusSource::ClosedForm,
        "numeric" => RadiusSource::Numeric,
        "riccati" => RadiusSource::Riccati,
        other => return Err(PyValueError::new_err(format!("unknown source `{other}`"))),
    };
    let m = match m {
        Some(m) => m,
        None => quantum::magnetic_from_period(&c, g.a, JULIAN_YEAR).map_err(err)?,
    };
    let mut opts = TrajectoryOptions::new(source);
    opts.r0 = r0;
    opts.skip_leading_invalid = skip_leading_invalid;
    let traj = trajectory::trajectory_cartesian(&t_grid, &g, m, &c, &opts).map_err(err)?;
    Ok(traj
        .samples
        .iter()
        .map(|s| (s.t, s.r, s.theta, s.phi, s.x, s.y, s.z, s.speed))
        .collect())
}

/// Fixed-step integration of the radial law; returns `(t, r)` pairs.
#[pyfunction]
#[pyo3(signature = (r0, dt, steps, geometry = None, constants = None, method = "rk4"))]
fn integrate_radial(
    r0: f64,
    dt: f64,
    steps: usize,
    geometry: Option<PyGeometry>,
    constants: Option<PyConstants>,
    method: &str,
) -> PyResult<Vec<(f64, f64)>> {
    let method = match method {
        "rk4" => Method::Rk4,
        "rk2" => Method::Rk2,
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    };
    let cfg = trajectory::IntegratorConfig::new(dt, steps, method, 1e-12).map_err(err)?;
    trajectory::integrate_radial(r0, &geometry_or_earth(geometry), &cfg, &constants_or_standard(constants))
        .map(|p| p.points)
        .map_err(err)
}

fn field_config(radial_term: bool) -> FieldConfig {
    FieldConfig {
        radial_term,
        ..FieldConfig::year_units(&bohmian_earth::PhysicalConstants::standard())
    }
}

/// Planar velocity in units of 1e11 m and years.
#[pyfunction]
#[pyo3(signature = (x, y, radial_term = true))]
fn velocity_field(x: f64, y: f64, radial_term: bool) -> PyResult<(f64, f64)> {
    field::velocity_field(x, y, &field_config(radial_term)).map_err(err)
}

/// Returns `(points, terminated_by)`.
#[pyfunction]
#[pyo3(signature = (seed, step = 1e-3, max_steps = 2000, radial_term = true))]
fn trace_streamline(
    seed: (f64, f64),
    step: f64,
    max_steps: usize,
    radial_term: bool,
) -> PyResult<(Vec<(f64, f64)>, &'static str)> {
    let line = field::trace_streamline(seed, &field_config(radial_term), step, max_steps).map_err(err)?;
    let reason = match line.terminated_by {
        Termination::Steps => "steps",
        Termination::Bounds => "bounds",
        Termination::Stagnation => "stagnation",
    };
    Ok((line.points, reason))
}

#[pyfunction]
fn log_radial_density(r: f64, n: f64, b: f64) -> PyResult<f64> {
    let spec = wavefunction::RadialDensitySpec::new(n, b).map_err(err)?;
    wavefunction::log_radial_density(r, &spec).map_err(err)
}

#[pyfunction]
fn most_probable_radius(n: f64, b: f64) -> f64 {
    wavefunction::most_probable_radius(n, b)
}

#[pyfunction]
#[pyo3(signature = (n, b, quad_points = 2000))]
fn normalization_check(n: f64, b: f64, quad_points: usize) -> PyResult<f64> {
    let spec = wavefunction::RadialDensitySpec::new(n, b).map_err(err)?;
    wavefunction::normalization_check(&spec, quad_points).map_err(err)
}

#[pyfunction]
fn delta_limit_metric(n: f64, b: f64) -> PyResult<f64> {
    wavefunction::delta_limit_metric(n, b).map_err(err)
}

/// Table audit as a JSON string.
#[pyfunction]
#[pyo3(signature = (constants = None))]
fn audit_json(constants: Option<PyConstants>) -> PyResult<String> {
    let report = audit::audit_table(&constants_or_standard(constants)).map_err(err)?;
    serde_json::to_string(&report).map_err(err)
}

#[pymodule]
fn bohmian_earth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyConstants>()?;
    m.add_class::<PyGeometry>()?;
    m.add_class::<PyClosedForm>()?;
    m.add_function(wrap_pyfunction!(gravitational_bohr_length, m)?)?;
    m.add_function(wrap_pyfunction!(principal_from_semimajor, m)?)?;
    m.add_function(wrap_pyfunction!(magnetic_from_period, m)?)?;
    m.add_function(wrap_pyfunction!(coupling_a, m)?)?;
    m.add_function(wrap_pyfunction!(energy_level, m)?)?;
    m.add_function(wrap_pyfunction!(relative_level_gap, m)?)?;
    m.add_function(wrap_pyfunction!(vis_viva_speed, m)?)?;
    m.add_function(wrap_pyfunction!(trajectory_samples, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_radial, m)?)?;
    m.add_function(wrap_pyfunction!(velocity_field, m)?)?;
    m.add_function(wrap_pyfunction!(trace_streamline, m)?)?;
    m.add_function(wrap_pyfunction!(log_radial_density, m)?)?;
    m.add_function(wrap_pyfunction!(most_probable_radius, m)?)?;
    m.add_function(wrap_pyfunction!(normalization_check, m)?)?;
    m.add_function(wrap_pyfunction!(delta_limit_metric, m)?)?;
    m.add_function(wrap_pyfunction!(audit_json, m)?)?;
    m.add("JULIAN_YEAR", JULIAN_YEAR)?;
    Ok(())
}
