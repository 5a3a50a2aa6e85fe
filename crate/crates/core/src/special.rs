//! Log-domain special functions that stay finite for astronomically large
//! arguments.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Switch-over from the Lanczos sum to the asymptotic series.
const STIRLING_THRESHOLD: f64 = 10.0;

/// Natural log of the gamma function for `x > 0`.
///
/// Lanczos (g = 7) below 10, Stirling's series above. Returns NaN for
/// non-positive input.
pub fn ln_gamma(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x.is_infinite() {
        return f64::INFINITY;
    }
    if x >= STIRLING_THRESHOLD {
        return (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + stirling_series(x);
    }
    if x < 0.5 {
        // Reflection keeps the Lanczos sum in its accurate range.
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}

fn stirling_series(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))))
}

/// `ln Γ(k+1) - (k ln k - k + ½ ln 2πk)`, the Stirling remainder for `k ≥ 1`.
///
/// Stays accurate where the two halves of the difference are ~1e76.
pub fn stirling_remainder(k: f64) -> f64 {
    if k >= STIRLING_THRESHOLD {
        return stirling_series(k);
    }
    ln_gamma(k + 1.0) - (k * k.ln() - k + 0.5 * (2.0 * PI * k).ln())
}

/// `ln(1 + u) - u` without cancellation for small `|u|`.
pub fn log1p_minus(u: f64) -> f64 {
    if u.abs() >= 0.5 {
        return u.ln_1p() - u;
    }
    // -u^2/2 + u^3/3 - u^4/4 + ...
    let mut term = u * u;
    let mut sum = 0.0;
    let mut j = 2.0;
    let mut sign = -1.0;
    loop {
        let contrib = sign * term / j;
        sum += contrib;
        if contrib.abs() <= f64::EPSILON * 0.5 * sum.abs() || j > 200.0 {
            break;
        }
        term *= u;
        j += 1.0;
        sign = -sign;
    }
    sum
}
