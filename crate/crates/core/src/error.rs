use thiserror::Error;

/// Inputs that fall outside the region where a formula is defined.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("radius must be positive, got {0:e} m")]
    NonPositiveRadius(f64),
    #[error("vis-viva radicand is negative at r = {r:e} m (unbound for a = {a:e} m)")]
    NegativeRadicand { r: f64, a: f64 },
    #[error("radius {r:e} m is not above the orbital-plane offset Z_h = {z_h:e} m")]
    BelowPlane { r: f64, z_h: f64 },
    #[error("sin(theta) vanishes at theta = {0}")]
    VanishingSine(f64),
    #[error("closed form is on its complex branch at t = {t:e} s (F^2 < 4 Z_h^2)")]
    ComplexBranch { t: f64 },
    #[error("t = {t:e} s is within the singularity margin of the pole at {pole:e} s")]
    NearSingularity { t: f64, pole: f64 },
    #[error("velocity field is undefined at the origin")]
    Origin,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("cannot build closed-form parameters: {0}")]
    Construction(String),
    #[error("integration step failed after t = {t:e} s (last valid r = {r:e} m)")]
    Step { t: f64, r: f64 },
    #[error("series never settles within {tol} of {target:e}")]
    NotConverged { target: f64, tol: f64 },
    #[error("quadrature tail estimate {0:e} exceeds 1e-9")]
    Quadrature(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(DomainError::Invalid(msg.into())))
}
