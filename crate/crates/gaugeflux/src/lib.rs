//! Gauge functions connecting two quantum systems that live in different
//! electromagnetic potentials.
//!
//! A gauge function `Λ` satisfies `∇Λ = A` and `−(1/c) ∂Λ/∂t = φ`, where `A`
//! and `φ` are the *differences* of the potentials of the two systems. When the
//! fields of the two systems differ somewhere away from the observation point,
//! the solutions pick up nonlocal double-integral terms of the field
//! differences on top of the familiar line integrals of the potentials. This
//! crate evaluates all of those pieces by quadrature and checks the defining
//! PDEs numerically.
//!
//! Modules:
//! - [`fields`]: field configurations (built-in analytic families and tabulated grids);
//! - [`quadrature`]: 1-D and iterated 2-D integration;
//! - [`static2d`]: static `Λ(x, y)` by the two rectangle-path solutions, plus polar forms;
//! - [`dynamic1d`]: `Λ(x, t)` in one spatial dimension;
//! - [`full3`]: `Λ(x, y, t)` and the causality scenario for a ramped confined flux;
//! - [`semiclassical`]: closed-form double-slit fringe displacement.
#![forbid(unsafe_code)]

mod error;
pub mod dynamic1d;
pub mod fields;
pub mod full3;
pub mod quadrature;
pub mod semiclassical;
pub mod solution;
pub mod static2d;

pub(crate) mod paths;

pub use error::{Error, Result};
pub use fields::{Axis, Component, FieldConfig, PhysicalConstants, P3};
pub use quadrature::{QuadratureSpec, Rule};
pub use solution::{Branch, GaugeSolution, ResidualReport, Sense};
