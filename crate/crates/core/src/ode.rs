//! Fixed-step explicit Runge-Kutta steppers.

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Rk4,
    Rk2,
}

impl Method {
    pub fn order(&self) -> u32 {
        match self {
            Method::Rk4 => 4,
            Method::Rk2 => 2,
        }
    }
}

/// Minimal vector-space requirements for a state.
pub trait OdeState: Copy + Add<Output = Self> + Mul<f64, Output = Self> {}

impl<T: Copy + Add<Output = T> + Mul<f64, Output = T>> OdeState for T {}

/// Two-component state used by the streamline tracer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2(pub f64, pub f64);

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2(self.0 + o.0, self.1 + o.1)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2(self.0 * s, self.1 * s)
    }
}

impl Vec2 {
    pub fn norm(&self) -> f64 {
        self.0.hypot(self.1)
    }
}

/// Advances `y` by one step of size `h`. The right-hand side may fail, in
/// which case the step is abandoned and the error returned untouched.
pub fn step<S, E, F>(method: Method, f: &mut F, t: f64, y: S, h: f64) -> Result<S, E>
where
    S: OdeState,
    F: FnMut(f64, S) -> Result<S, E>,
{
    match method {
        Method::Rk4 => {
            let k1 = f(t, y)?;
            let k2 = f(t + 0.5 * h, y + k1 * (0.5 * h))?;
            let k3 = f(t + 0.5 * h, y + k2 * (0.5 * h))?;
            let k4 = f(t + h, y + k3 * h)?;
            Ok(y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
        }
        Method::Rk2 => {
            let k1 = f(t, y)?;
            let k2 = f(t + 0.5 * h, y + k1 * (0.5 * h))?;
            Ok(y + k2 * h)
        }
    }
}

/// Integrates from `t0` to `t1` in `n` equal steps and returns the end state.
pub fn integrate<S, E, F>(method: Method, mut f: F, t0: f64, y0: S, t1: f64, n: usize) -> Result<S, E>
where
    S: OdeState,
    F: FnMut(f64, S) -> Result<S, E>,
{
    let n = n.max(1);
    let h = (t1 - t0) / n as f64;
    let mut y = y0;
    for i in 0..n {
        y = step(method, &mut f, t0 + i as f64 * h, y, h)?;
    }
    Ok(y)
}
