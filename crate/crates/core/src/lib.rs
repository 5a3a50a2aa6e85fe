#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Bohmian trajectories of the Earth around the Sun.
//!
//! The crate follows the Earth from its quantum numbers to concrete
//! trajectories:
//!
//! * [`quantum`] derives the gravitational Bohr length, the principal and
//!   magnetic numbers and the coupling `A`.
//! * [`guidance`] holds the speed law, the planar constraint and the
//!   velocity components of the azimuthal ansatz.
//! * [`trajectory`] provides the closed-form radius, its Riccati
//!   expansion and a fixed-step integrator used to cross-check them.
//! * [`field`] evaluates the planar velocity field and traces streamlines.
//! * [`wavefunction`] evaluates the radial and angular densities in log
//!   space.
//! * [`audit`] recomputes the published table of Earth quantities.
//!
//! Everything is in SI units unless a type says otherwise.

pub mod audit;
pub mod cli;
pub mod error;
pub mod field;
pub mod guidance;
pub mod io;
pub mod ode;
pub mod quantum;
pub mod special;
pub mod trajectory;
pub mod units;
pub mod wavefunction;

pub use error::{DomainError, Error, Result};
pub use guidance::OrbitGeometry;
pub use units::PhysicalConstants;
