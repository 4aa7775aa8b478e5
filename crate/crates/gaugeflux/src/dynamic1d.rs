//! `Λ(x, t)` in one spatial dimension with time-dependent potentials.
//!
//! The `(x, t)` problem `∂Λ/∂x = A`, `−(1/c) ∂Λ/∂t = φ` is the static one
//! with `y → t`, `A_y → −cφ` and `B_z → c E_x`, so the two solutions here are
//! the two corner paths of the `(x, t)` rectangle again, with `c ∫∫ E_x` in
//! place of the magnetic flux. The spatial ordinate is held at `frame.y`.
//!
//! [`lambda_naive`] evaluates the potential-integral formula without any
//! field term. It is wrong whenever `A` depends on `t` or `φ` on `x` inside
//! the rectangle, and is kept as a negative control.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fields::{Axis, Component, FieldConfig, PhysicalConstants, P3};
use crate::paths::{self, Corner, Paths};
use crate::quadrature::QuadratureSpec;
use crate::solution::{Branch, GaugeSolution, ResidualReport};

/// Endpoints and reference coordinates in the `(x, t)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeFrame {
    /// `(x₀, t₀)`.
    pub p0: [f64; 2],
    /// `(x, t)`.
    pub p: [f64; 2],
    /// Abscissa at which `ĝ(t)` is anchored. Defaults to the observation `x`.
    pub x_ref: f64,
    /// Time at which `g(x)` is anchored. Defaults to `t₀`.
    pub t_ref: f64,
    pub lambda0: f64,
    /// Spatial ordinate of the line the particle lives on.
    pub y: f64,
    pub multiplicities: bool,
}

impl SpacetimeFrame {
    pub fn new(p0: [f64; 2], p: [f64; 2]) -> Self {
        Self {
            p0,
            p,
            x_ref: p[0],
            t_ref: p0[1],
            lambda0: 0.0,
            y: 0.0,
            multiplicities: true,
        }
    }

    pub fn with_refs(mut self, x_ref: f64, t_ref: f64) -> Self {
        self.x_ref = x_ref;
        self.t_ref = t_ref;
        self
    }

    pub fn with_lambda0(mut self, lambda0: f64) -> Self {
        self.lambda0 = lambda0;
        self
    }

    pub fn without_multiplicities(mut self) -> Self {
        self.multiplicities = false;
        self
    }

    pub fn moved_to(&self, p: [f64; 2]) -> Self {
        Self { p, ..*self }
    }

    fn event(&self, x: f64, t: f64) -> P3 {
        [x, self.y, t]
    }

    fn validate(&self) -> Result<()> {
        paths::require_finite(
            "spacetime frame",
            &[self.p0[0], self.p0[1], self.p[0], self.p[1], self.x_ref, self.t_ref, self.lambda0, self.y],
        )
    }
}

/// Constants for an inaccessible spacetime region carrying "electric flux"
/// `c ∫∫ E dx dt`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ElectricMultiplicities {
    /// `τ(t₀)`, added to the third solution.
    pub tau_t0: f64,
    /// `χ(x₀)`, added to the fourth solution.
    pub chi_x0: f64,
}

/// Which events the naive formula samples the potentials at.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NaiveVariant {
    /// `∫A(x′, t) dx′ − c∫φ(x, t′) dt′`.
    #[default]
    Observation,
    /// `∫A(x′, t₀) dx′ − c∫φ(x₀, t′) dt′`.
    InitialPoint,
}

struct Setup<'a> {
    paths: Paths<'a>,
    c: f64,
}

fn setup<'a>(config: &'a FieldConfig, frame: &SpacetimeFrame, spec: &QuadratureSpec, constants: &PhysicalConstants) -> Result<Setup<'a>> {
    constants.validate()?;
    frame.validate()?;
    Ok(Setup {
        paths: Paths::new(config, spec)?,
        c: constants.c,
    })
}

/// Third solution: potentials along `x₀` in time, then across at `t`;
/// `+c ∫∫ E`, `g(x) = −c ∫_{t₀}^{t_ref} ∫_{x₀}^{x} E`, `τ(t₀)`.
pub fn lambda3_dynamic(
    config: &FieldConfig,
    frame: &SpacetimeFrame,
    spec: &QuadratureSpec,
    constants: &PhysicalConstants,
) -> Result<GaugeSolution> {
    let Setup { paths, c } = setup(config, frame, spec, constants)?;
    let ([x0, t0], [x, t]) = (frame.p0, frame.p);
    paths::require_field_free(config, &[Component::Ex], frame.event(x, t))?;
    let ce = |p: P3| Ok(c * config.e_x(p)?);
    paths.require_free_segment(&ce, Axis::T, frame.event(x, t), frame.t_ref, t, "g(x)", &format!("x = {x}"))?;

    let ax = paths.comp(Component::Ax);
    let mcphi = |p: P3| Ok(-c * config.phi(p)?);
    let base = frame.event(x0, t0);
    let dirac = paths.corner(&ax, &mcphi, (Axis::X, Axis::T), base, (x0, t0), (x, t), Corner::UpFirst)?;
    let nonlocal = paths.surface(&ce, Axis::X, Axis::T, base, (x0, x), (t0, t))?;
    let g = -paths.surface(&ce, Axis::X, Axis::T, base, (x0, x), (t0, frame.t_ref))?;
    let mult = if frame.multiplicities {
        electric_ab_multiplicities(config, frame)?.tau_t0
    } else {
        0.0
    };
    Ok(GaugeSolution::assemble(Branch::Lambda3, frame.lambda0, dirac, nonlocal, g, mult)
        .with_senses(Some(Corner::UpFirst.sense()), None))
}

/// Fourth solution: potentials across at `t₀`, then along `x` in time;
/// `−c ∫∫ E`, `ĝ(t) = c ∫_{t_ref}^{t} ∫_{x₀}^{x_ref} E`, `χ(x₀)`.
pub fn lambda4_dynamic(
    config: &FieldConfig,
    frame: &SpacetimeFrame,
    spec: &QuadratureSpec,
    constants: &PhysicalConstants,
) -> Result<GaugeSolution> {
    let Setup { paths, c } = setup(config, frame, spec, constants)?;
    let ([x0, t0], [x, t]) = (frame.p0, frame.p);
    paths::require_field_free(config, &[Component::Ex], frame.event(x, t))?;
    let ce = |p: P3| Ok(c * config.e_x(p)?);
    paths.require_free_segment(&ce, Axis::X, frame.event(x, t), frame.x_ref, x, "ĝ(t)", &format!("t = {t}"))?;

    let ax = paths.comp(Component::Ax);
    let mcphi = |p: P3| Ok(-c * config.phi(p)?);
    let base = frame.event(x0, t0);
    let dirac = paths.corner(&ax, &mcphi, (Axis::X, Axis::T), base, (x0, t0), (x, t), Corner::AcrossFirst)?;
    let nonlocal = -paths.surface(&ce, Axis::X, Axis::T, base, (x0, x), (t0, t))?;
    let g_hat = paths.surface(&ce, Axis::X, Axis::T, base, (x0, frame.x_ref), (frame.t_ref, t))?;
    let mult = if frame.multiplicities {
        electric_ab_multiplicities(config, frame)?.chi_x0
    } else {
        0.0
    };
    Ok(GaugeSolution::assemble(Branch::Lambda4, frame.lambda0, dirac, nonlocal, g_hat, mult)
        .with_senses(Some(Corner::AcrossFirst.sense()), None))
}

/// The potential-integral formula with no field terms. Not a solution in
/// general; see the module docs.
pub fn lambda_naive(
    config: &FieldConfig,
    frame: &SpacetimeFrame,
    variant: NaiveVariant,
    spec: &QuadratureSpec,
    constants: &PhysicalConstants,
) -> Result<GaugeSolution> {
    let Setup { paths, c } = setup(config, frame, spec, constants)?;
    let ([x0, t0], [x, t]) = (frame.p0, frame.p);
    let ax = paths.comp(Component::Ax);
    let phi = paths.comp(Component::Phi);
    let (t_a, x_phi, branch) = match variant {
        NaiveVariant::Observation => (t, x, Branch::Naive),
        NaiveVariant::InitialPoint => (t0, x0, Branch::NaiveInitialPoint),
    };
    let dirac = paths.line(&ax, Axis::X, frame.event(x0, t_a), x0, x)? - c * paths.line(&phi, Axis::T, frame.event(x_phi, t0), t0, t)?;
    Ok(GaugeSolution::assemble(branch, frame.lambda0, dirac, 0.0, 0.0, 0.0))
}

/// Central-difference check of `∂Λ/∂x = A` and `−(1/c) ∂Λ/∂t = φ`.
pub fn verify_xt_system<F>(
    config: &FieldConfig,
    frame: &SpacetimeFrame,
    solution: F,
    step: f64,
    tol: f64,
    constants: &PhysicalConstants,
) -> Result<ResidualReport>
where
    F: Fn(&SpacetimeFrame) -> Result<GaugeSolution>,
{
    paths::check_step(step, tol)?;
    constants.validate()?;
    let [x, t] = frame.p;
    let lam = |px: f64, pt: f64| Ok(solution(&frame.moved_to([px, pt]))?.lambda);
    let dx = paths::central(|s| lam(s, t), x, step)?;
    let dt = paths::central(|s| lam(x, s), t, step)?;
    let at = frame.event(x, t);
    Ok(ResidualReport::new(
        Some((dx - config.a_x(at)?).abs()),
        None,
        Some((-dt / constants.c - config.phi(at)?).abs()),
        tol,
    ))
}

/// `τ(t₀) = +flux`, `χ(x₀) = −flux` for a declared inaccessible spacetime
/// region inside the frame's rectangle (flux signed by orientation).
pub fn electric_ab_multiplicities(config: &FieldConfig, frame: &SpacetimeFrame) -> Result<ElectricMultiplicities> {
    let ([x0, t0], [x, t]) = (frame.p0, frame.p);
    let flux = config.enclosed_electric_flux((x0, t0), (x, t))?;
    Ok(ElectricMultiplicities {
        tau_t0: flux,
        chi_x0: -flux,
    })
}
