//! Gaussian covariance-matrix toolkit for field modes seen by inertial and
//! uniformly accelerated observers.
//!
//! The crate is layered: [`phase_space`] holds the linear algebra,
//! [`info_measures`] the entanglement and entropy functionals,
//! [`rindler`] the Unruh map and scenario states, and [`analysis`] the
//! closed-form results built on top of them.

pub mod analysis;
pub mod error;
pub mod figures;
pub mod info_measures;
pub mod phase_space;
pub mod rindler;
pub mod selftest;
pub mod sweep;

pub use error::{Error, Result};
pub use info_measures::{MeasureReport, Source};
pub use phase_space::{CovMatrix, ModeIndexSet, SympTransform};
pub use rindler::{AccelSpec, Role, Scenario, ScenarioLayout};
