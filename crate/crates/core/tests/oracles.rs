//! Independent cross-checks: each test recomputes a library result by a
//! different route.

use std::f64::consts::SQRT_2;

use bohmian_earth::guidance::vis_viva_speed;
use bohmian_earth::ode::{self, Method};
use bohmian_earth::quantum::gravitational_bohr_length;
use bohmian_earth::trajectory::{closed_form_coefficients, closed_form_radius, singularity_time};
use bohmian_earth::units::{convert, Dimension, UnitSystem};
use bohmian_earth::wavefunction::{
    delta_limit_metric, log_radial_density, log_radial_density_direct, most_probable_radius, normalization_check,
    RadialDensitySpec,
};
use bohmian_earth::{OrbitGeometry, PhysicalConstants};
use rand::SeedableRng;
use rand_distr::{Distribution, Gamma};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn half_tangent_function_solves_its_riccati_equation() {
    // G = F/2 satisfies dG/dt = B1 + B2 G + B3 G² exactly
    let p = closed_form_coefficients(&OrbitGeometry::earth(), &PhysicalConstants::standard()).unwrap();
    let ts = singularity_time(&p);
    let (t0, t1) = (0.05 * ts, 0.9 * ts);
    let g0 = 0.5 * p.tangent_function(t0);
    let rhs = |_t: f64, g: f64| -> Result<f64, ()> { Ok(p.b1 + p.b2 * g + p.b3 * g * g) };
    let g1 = ode::integrate(Method::Rk4, rhs, t0, g0, t1, 20_000).unwrap();
    assert!(rel(g1, 0.5 * p.tangent_function(t1)) < 1e-9);
}

#[test]
fn closed_form_inverts_to_tangent_function() {
    // F² = r⁴ / (ξ² (r² - ξ² Z_h²)) on the minus branch
    let p = closed_form_coefficients(&OrbitGeometry::earth(), &PhysicalConstants::standard()).unwrap();
    let ts = singularity_time(&p);
    for k in 0..20 {
        let t = (0.2 + 0.035 * k as f64) * ts;
        let r = closed_form_radius(t, &p).unwrap();
        let xi2 = p.xi * p.xi;
        let f2 = r.powi(4) / (xi2 * (r * r - xi2 * p.z_h * p.z_h));
        assert!(rel(f2.sqrt(), p.tangent_function(t).abs()) < 1e-6, "t = {t:e}");
    }
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn golden_section_argmax_matches_most_probable_radius() {
    for n in [1.0, 2.0, 3.0, 10.0, 50.0] {
        let b = 1e-7;
        let spec = RadialDensitySpec::new(n, b).unwrap();
        let r_mp = most_probable_radius(n, b);
        let found = golden_section_max(|r| log_radial_density_direct(r, &spec).unwrap(), 0.01 * r_mp, 5.0 * r_mp, 1e-9 * r_mp);
        assert!(rel(found, r_mp) < 1e-6, "n = {n}: {found:e} vs {r_mp:e}");
    }
}

#[test]
fn trapezoid_on_direct_route_matches_simpson() {
    for n in [1.0, 4.0, 20.0, 100.0] {
        let spec = RadialDensitySpec::new(n, 3e-7).unwrap();
        let r_end = most_probable_radius(n, spec.b) + 60.0 * spec.std_dev();
        let steps = 200_000;
        let h = r_end / steps as f64;
        let f = |r: f64| log_radial_density_direct(r, &spec).unwrap().exp();
        let trap: f64 = (1..steps).map(|i| f(i as f64 * h)).sum::<f64>() * h + 0.5 * h * f(r_end);
        let simpson = normalization_check(&spec, 4000).unwrap();
        assert!((trap - 1.0).abs() < 1e-6, "n = {n}: {trap}");
        assert!((simpson - trap).abs() < 1e-6, "n = {n}");
    }
}

#[test]
fn monte_carlo_spread_matches_delta_metric() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for n in [1.0, 5.0, 20.0, 50.0] {
        let b = 1e-7;
        let spec = RadialDensitySpec::new(n, b).unwrap();
        let dist = Gamma::new(spec.shape(), spec.scale()).unwrap();
        let samples: Vec<f64> = (0..200_000).map(|_| dist.sample(&mut rng)).collect();
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples.len() - 1) as f64;
        let spread = var.sqrt() / mean;
        assert!(rel(spread, delta_limit_metric(n, b).unwrap()) < 0.02, "n = {n}");
    }
}

#[test]
fn saddle_and_direct_routes_agree_away_from_extremes() {
    for n in [1.5, 7.0, 123.0, 1e4, 1e8] {
        let spec = RadialDensitySpec::new(n, 2e-9).unwrap();
        let r = 0.9 * most_probable_radius(n, spec.b);
        let a = log_radial_density(r, &spec).unwrap();
        let b = log_radial_density_direct(r, &spec).unwrap();
        // the direct route carries O(n ln n) terms that cancel, costing ~n·eps absolute
        assert!((a - b).abs() < 1e-9 * n.max(1.0) * (n.ln() + 10.0), "n = {n}: {a} vs {b}");
    }
}

#[test]
fn results_survive_unit_change() {
    let si = UnitSystem::si();
    let au = UnitSystem::au_year();
    let c = PhysicalConstants::standard();
    let c_au = c.in_units(&au);
    let len = Dimension::LENGTH;
    let g = OrbitGeometry::earth();
    let g_au = OrbitGeometry {
        a: convert(g.a, &si, &au, len),
        z_h: convert(g.z_h, &si, &au, len),
        r_eq: convert(g.r_eq, &si, &au, len),
        tau: convert(g.tau, &si, &au, Dimension::TIME),
        ..g
    };
    for r in [1.6e11, 2.0e11, 2.9e11] {
        let v = vis_viva_speed(r, &g, &c).unwrap();
        let v_au = vis_viva_speed(convert(r, &si, &au, len), &g_au, &c_au).unwrap();
        assert!(rel(convert(v_au, &au, &si, Dimension::VELOCITY), v) < 1e-10);
    }
    let b_au = gravitational_bohr_length(&c_au);
    assert!(rel(convert(b_au, &au, &si, len), gravitational_bohr_length(&c)) < 1e-10);

    let p = closed_form_coefficients(&g, &c).unwrap();
    let p_au = closed_form_coefficients(&g_au, &c_au).unwrap();
    let t = 0.6 * singularity_time(&p);
    let r = closed_form_radius(t, &p).unwrap();
    let r_au = closed_form_radius(convert(t, &si, &au, Dimension::TIME), &p_au).unwrap();
    assert!(rel(convert(r_au, &au, &si, len), r) < 1e-10);
    assert!(rel(convert(p_au.c, &au, &si, Dimension::RATE), p.c) < 1e-10);
    assert!(rel(r, SQRT_2 * g.z_h) < 0.1);
}
