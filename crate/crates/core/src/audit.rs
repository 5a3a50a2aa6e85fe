//! Recomputes the published table of Earth quantities from the constants
//! and reports where the table disagrees with itself.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quantum::{coupling_a, gravitational_bohr_length, magnetic_from_period, principal_from_semimajor};
use crate::units::{PhysicalConstants, JULIAN_YEAR};
use crate::wavefunction::most_probable_radius;

/// Published values.
pub mod table {
    pub const R_EQ: f64 = 2.116e11;
    pub const A_SEMI_MAJOR: f64 = 1.496e11;
    pub const N: f64 = 2.524e74;
    pub const L: f64 = 2.524e74;
    pub const M: f64 = 1e73;
    pub const COUPLING_A: f64 = 1e31;
    pub const B: f64 = 2.348e-138;
}

/// Relative tolerance for entries quoted to four digits.
pub const RELATIVE_TOLERANCE: f64 = 5e-3;
/// Allowed `|log10(recomputed / published)|` for order-of-magnitude entries.
pub const DECADE_TOLERANCE: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Tolerance {
    Relative(f64),
    Decades(f64),
}

impl Tolerance {
    fn accepts(&self, published: f64, recomputed: f64) -> bool {
        match *self {
            Tolerance::Relative(tol) => ((recomputed - published) / published).abs() <= tol,
            Tolerance::Decades(tol) => (recomputed / published).log10().abs() <= tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditItem {
    pub symbol: String,
    pub description: String,
    pub published: f64,
    pub recomputed: f64,
    /// `recomputed / published`.
    pub ratio: f64,
    pub tolerance: Tolerance,
    pub flagged: bool,
    pub note: String,
}

impl AuditItem {
    fn new(symbol: &str, description: &str, published: f64, recomputed: f64, tolerance: Tolerance, note: String) -> Self {
        Self {
            symbol: symbol.into(),
            description: description.into(),
            published,
            recomputed,
            ratio: recomputed / published,
            tolerance,
            flagged: !tolerance.accepts(published, recomputed),
            note,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub items: Vec<AuditItem>,
}

impl AuditReport {
    pub fn flagged(&self) -> impl Iterator<Item = &AuditItem> {
        self.items.iter().filter(|i| i.flagged)
    }
}

/// Rebuilds every table entry from `c`.
pub fn audit_table(c: &PhysicalConstants) -> Result<AuditReport> {
    let rel = Tolerance::Relative(RELATIVE_TOLERANCE);
    let decades = Tolerance::Decades(DECADE_TOLERANCE);
    let b = gravitational_bohr_length(c);
    let (n, _) = principal_from_semimajor(table::A_SEMI_MAJOR, b)?;
    let r_eq = SQRT_2 * table::A_SEMI_MAJOR;
    let m_period = magnetic_from_period(c, table::A_SEMI_MAJOR, JULIAN_YEAR)?;
    let a_table_m = coupling_a(table::M, c)?;
    let a_period_m = coupling_a(m_period, c)?;
    let r_mp = most_probable_radius(n, b);
    let n_from_r_eq = (2.0 * table::R_EQ / b).sqrt();

    let items = vec![
        AuditItem::new(
            "r_eq",
            "equilibrium distance, sqrt(2) Z_h with Z_h = a",
            table::R_EQ,
            r_eq,
            rel,
            String::new(),
        ),
        AuditItem::new("a", "semi-major axis (input)", table::A_SEMI_MAJOR, table::A_SEMI_MAJOR, rel, String::new()),
        AuditItem::new("n", "principal number sqrt(a/b)", table::N, n, rel, String::new()),
        AuditItem::new("l", "azimuthal number, l = n", table::L, n, rel, String::new()),
        AuditItem::new("b", "hbar^2 / (G m_e^2 m_s)", table::B, b, rel, String::new()),
        AuditItem::new(
            "A",
            "m^2 hbar^2 / m_e^2 with the tabulated m",
            table::COUPLING_A,
            a_table_m,
            decades,
            format!(
                "tabulated m = {:e} gives A = {a_table_m:e}; the one-year period gives m = {m_period:e} and A = {a_period_m:e}",
                table::M
            ),
        ),
        AuditItem::new(
            "r_mp",
            "most probable radius n(n+1)b/2 against r_eq",
            table::R_EQ,
            r_mp,
            rel,
            format!("n(n+1)b/2 = {r_mp:e} is a/2; matching r_eq instead needs n = sqrt(2 r_eq / b) = {n_from_r_eq:e}"),
        ),
    ];
    Ok(AuditReport { schema_version: 1, items })
}
