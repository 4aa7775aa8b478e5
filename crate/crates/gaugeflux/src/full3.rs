//! `Λ(x, y, t)` for the full system `∇Λ = A`, `−(1/c) ∂Λ/∂t = φ` in two
//! spatial dimensions, and the causality scenario for a ramped confined flux.
//!
//! Each variant integrates `A(t)` along a corner path of the spatial
//! rectangle, `−c ∫ φ(x₀, y₀, t′) dt′`, a signed `B_z` flux term, and
//! `c ∫ dt′` of `E(t′)` along a corner path, plus condition functions:
//!
//! | variant | `A` path     | `B_z` term      | `E` path     | condition  |
//! |---------|--------------|-----------------|--------------|------------|
//! | `Full1` | across first | `−∫∫B_z(t)`     | up first     | `G(y)`     |
//! | `Full2` | across first | `−∫∫B_z(t₀)`    | across first | `G(y)`     |
//! | `Full4` | up first     | `+∫∫B_z(t)`     | across first | `Ĝ(x)`     |
//! | `Fin`   | up first     | `+∫∫B_z(t₀)`    | up first     | `Ĝ(x)`     |
//!
//! All variants add `F(x, y)`. The conditions they must satisfy are
//! `G′(y) = ∫_{x₀}^{x} B_z(x′, y, t₀) dx′`, `Ĝ′(x) = −∫_{y₀}^{y} B_z(x, y′, t₀) dy′`
//! and `∇F = −c ∫_{t₀}^{t} E(x, y, t′) dt′`; each choice is validated by
//! sampling a small neighbourhood of the observation point.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{Axis, Component, FieldConfig, PhysicalConstants, Topology, P3};
use crate::paths::{self, Corner, Paths, INDEPENDENCE_TOL};
use crate::quadrature::QuadratureSpec;
use crate::solution::{Branch, GaugeSolution, ResidualReport};

/// Half-width of the neighbourhood sampled when validating condition functions.
const NEIGHBOURHOOD: f64 = 1e-3;
const NEIGHBOURHOOD_STEPS: i32 = 2;
const CONDITION_FD_STEP: f64 = 1e-5;

/// Endpoints and reference coordinates of a `(x, y, t)` evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame3 {
    /// `(x₀, y₀, t₀)`.
    pub p0: P3,
    /// `(x, y, t)`.
    pub p: P3,
    /// Anchor of the constructed `G(y)`. Defaults to the observation `x`.
    pub x_ref: f64,
    /// Anchor of the constructed `Ĝ(x)`. Defaults to `y₀`.
    pub y_ref: f64,
    pub lambda0: f64,
    pub multiplicities: bool,
}

impl Frame3 {
    pub fn new(p0: P3, p: P3) -> Self {
        Self {
            p0,
            p,
            x_ref: p[0],
            y_ref: p0[1],
            lambda0: 0.0,
            multiplicities: true,
        }
    }

    pub fn with_refs(mut self, x_ref: f64, y_ref: f64) -> Self {
        self.x_ref = x_ref;
        self.y_ref = y_ref;
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

    pub fn moved_to(&self, p: P3) -> Self {
        Self { p, ..*self }
    }

    fn validate(&self) -> Result<()> {
        let [a, b, c] = self.p0;
        let [d, e, f] = self.p;
        paths::require_finite("frame", &[a, b, c, d, e, f, self.x_ref, self.y_ref, self.lambda0])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Full1,
    Full2,
    Full4,
    Fin,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Full1, Variant::Full2, Variant::Full4, Variant::Fin];

    fn potential_corner(self) -> Corner {
        match self {
            Variant::Full1 | Variant::Full2 => Corner::AcrossFirst,
            Variant::Full4 | Variant::Fin => Corner::UpFirst,
        }
    }

    fn field_corner(self) -> Corner {
        match self {
            Variant::Full1 | Variant::Fin => Corner::UpFirst,
            Variant::Full2 | Variant::Full4 => Corner::AcrossFirst,
        }
    }

    /// Whether the `B_z` term is frozen at `t₀`.
    fn flux_at_t0(self) -> bool {
        matches!(self, Variant::Full2 | Variant::Fin)
    }

    /// `G(y)` for the across-first potential path, `Ĝ(x)` otherwise.
    fn uses_g_of_y(self) -> bool {
        self.potential_corner() == Corner::AcrossFirst
    }

    fn branch(self) -> Branch {
        match self {
            Variant::Full1 => Branch::Full1,
            Variant::Full2 => Branch::Full2,
            Variant::Full4 => Branch::Full4,
            Variant::Fin => Branch::Fin,
        }
    }
}

/// A one-variable condition function (`G(y)` or `Ĝ(x)`).
#[derive(Clone, Default)]
pub enum ConditionFn {
    #[default]
    Zero,
    /// Built from the accessible `B_z(t₀)` using the frame's reference
    /// coordinate, as in the static solutions.
    Reference,
    User(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for ConditionFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionFn::Zero => f.write_str("Zero"),
            ConditionFn::Reference => f.write_str("Reference"),
            ConditionFn::User(_) => f.write_str("User(..)"),
        }
    }
}

/// The two-variable condition function `F(x, y)`.
#[derive(Clone, Default)]
pub enum ConditionF {
    #[default]
    Zero,
    User(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for ConditionF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionF::Zero => f.write_str("Zero"),
            ConditionF::User(_) => f.write_str("User(..)"),
        }
    }
}

/// Choices for `G(y)`, `Ĝ(x)` and `F(x, y)`; only the ones a variant uses
/// are evaluated and validated.
#[derive(Debug, Clone, Default)]
pub struct ConditionSet {
    pub g: ConditionFn,
    pub g_hat: ConditionFn,
    pub f: ConditionF,
}

impl ConditionSet {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Constructed `G`/`Ĝ`, zero `F`: the right choice for static configurations.
    pub fn reference() -> Self {
        Self {
            g: ConditionFn::Reference,
            g_hat: ConditionFn::Reference,
            f: ConditionF::Zero,
        }
    }
}

/// Outcome of validating one condition function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    /// Largest sampled violation, flux units.
    pub worst: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Constants for a confined flux enclosed by the spatial rectangle, fixed at `t₀`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Ledger3 {
    /// `f(x₀, t₀)`, added to `Full1` and `Full2`.
    pub f_x0_t0: f64,
    /// `ĥ(y₀, t₀)`, added to `Full4` and `Fin`.
    pub h_hat_y0_t0: f64,
}

pub fn ledger3(config: &FieldConfig, frame: &Frame3) -> Result<Ledger3> {
    let ([x0, y0, t0], [x, y, _]) = (frame.p0, frame.p);
    let phi = config.enclosed_magnetic_flux((x0, y0), (x, y), t0)?;
    Ok(Ledger3 {
        f_x0_t0: phi,
        h_hat_y0_t0: -phi,
    })
}

struct Ctx<'a> {
    cfg: &'a FieldConfig,
    paths: Paths<'a>,
    c: f64,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a FieldConfig, spec: &QuadratureSpec, constants: &PhysicalConstants) -> Result<Self> {
        constants.validate()?;
        Ok(Self {
            cfg,
            paths: Paths::new(cfg, spec)?,
            c: constants.c,
        })
    }

    // Signed rectangle flux of the accessible B_z plus any declared flux line.
    fn flux(&self, (x0, y0): (f64, f64), (x, y): (f64, f64), t: f64) -> Result<f64> {
        if let Topology::MagneticFlux { .. } = self.cfg.topology() {
            // The radiated B_z of a flux line is singular like 1/r at the line;
            // by Stokes the loop integral of A gives the same flux exactly.
            self.cfg.enclosed_magnetic_flux((x0, y0), (x, y), t)?;
            let (ax, ay) = (self.paths.comp(Component::Ax), self.paths.comp(Component::Ay));
            let leg = |corner| self.paths.corner(&ax, &ay, (Axis::X, Axis::Y), [x0, y0, t], (x0, y0), (x, y), corner);
            return Ok(leg(Corner::AcrossFirst)? - leg(Corner::UpFirst)?);
        }
        let bz = self.paths.comp(Component::Bz);
        Ok(self.paths.surface(&bz, Axis::X, Axis::Y, [x0, y0, t], (x0, x), (y0, y))?
            + self.cfg.enclosed_magnetic_flux((x0, y0), (x, y), t)?)
    }

    fn accessible_flux(&self, (xa, xb): (f64, f64), (ya, yb): (f64, f64), t: f64) -> Result<f64> {
        let bz = self.paths.comp(Component::Bz);
        self.paths.surface(&bz, Axis::X, Axis::Y, [xa, ya, t], (xa, xb), (ya, yb))
    }

    fn potential_path(&self, frame: &Frame3, corner: Corner) -> Result<f64> {
        let ([x0, y0, _], [x, y, t]) = (frame.p0, frame.p);
        let (ax, ay) = (self.paths.comp(Component::Ax), self.paths.comp(Component::Ay));
        self.paths.corner(&ax, &ay, (Axis::X, Axis::Y), [x0, y0, t], (x0, y0), (x, y), corner)
    }

    // c ∫_{t0}^{t} dt′ of the E line integral along `corner`.
    fn field_path(&self, frame: &Frame3, corner: Corner) -> Result<f64> {
        let ([x0, y0, t0], [x, y, t]) = (frame.p0, frame.p);
        let (ex, ey) = (self.paths.comp(Component::Ex), self.paths.comp(Component::Ey));
        Ok(self.c * self.paths.corner_in_time(&ex, &ey, (Axis::X, Axis::Y), [x0, y0, t0], (x0, y0), (x, y), (t0, t), corner)?)
    }

    // ∫_{x0}^{x} B_z(x′, y′, t₀) dx′
    fn b_row(&self, frame: &Frame3, y: f64) -> Result<f64> {
        let ([x0, _, t0], x) = (frame.p0, frame.p[0]);
        self.paths.line(&self.paths.comp(Component::Bz), Axis::X, [x0, y, t0], x0, x)
    }

    // ∫_{y0}^{y} B_z(x′, y′, t₀) dy′
    fn b_column(&self, frame: &Frame3, x: f64) -> Result<f64> {
        let ([_, y0, t0], y) = (frame.p0, frame.p[1]);
        self.paths.line(&self.paths.comp(Component::Bz), Axis::Y, [x, y0, t0], y0, y)
    }

    // c ∫_{t0}^{t} E_i(x, y, t′) dt′
    fn e_time(&self, frame: &Frame3, comp: Component, x: f64, y: f64) -> Result<f64> {
        let ([_, _, t0], t) = (frame.p0, frame.p[2]);
        Ok(self.c * self.paths.line(&self.paths.comp(comp), Axis::T, [x, y, t0], t0, t)?)
    }

    fn g_of_y(&self, frame: &Frame3, choice: &ConditionFn, y: f64) -> Result<f64> {
        let ([x0, _, t0], x_ref, y_ref) = (frame.p0, frame.x_ref, frame.y_ref);
        Ok(match choice {
            ConditionFn::Zero => 0.0,
            ConditionFn::Reference => self.accessible_flux((x0, x_ref), (y_ref, y), t0)?,
            ConditionFn::User(g) => g(y),
        })
    }

    fn g_hat_of_x(&self, frame: &Frame3, choice: &ConditionFn, x: f64) -> Result<f64> {
        let ([x0, y0, t0], y_ref) = (frame.p0, frame.y_ref);
        Ok(match choice {
            ConditionFn::Zero => 0.0,
            ConditionFn::Reference => -self.accessible_flux((x0, x), (y0, y_ref), t0)?,
            ConditionFn::User(g) => g(x),
        })
    }

    fn f_of(&self, choice: &ConditionF, x: f64, y: f64) -> f64 {
        match choice {
            ConditionF::Zero => 0.0,
            ConditionF::User(f) => f(x, y),
        }
    }
}

fn offsets(center: f64) -> impl Iterator<Item = f64> {
    let step = NEIGHBOURHOOD / NEIGHBOURHOOD_STEPS as f64;
    (-NEIGHBOURHOOD_STEPS..=NEIGHBOURHOOD_STEPS).map(move |k| center + k as f64 * step)
}

fn check(name: String, worst: f64) -> ConditionCheck {
    ConditionCheck {
        name,
        worst,
        tol: INDEPENDENCE_TOL,
        pass: worst.is_finite() && worst <= INDEPENDENCE_TOL,
    }
}

fn validate_one_variable(
    name: &str,
    choice: &ConditionFn,
    center: f64,
    // The value the derivative of the condition function must match.
    target: &dyn Fn(f64) -> Result<f64>,
    // Field segment that must be empty for the constructed choice.
    reference_segment: &dyn Fn() -> Result<f64>,
) -> Result<ConditionCheck> {
    let worst = match choice {
        ConditionFn::Zero => {
            let mut w: f64 = 0.0;
            for s in offsets(center) {
                w = w.max(target(s)?.abs());
            }
            w
        }
        ConditionFn::Reference => reference_segment()?,
        ConditionFn::User(g) => {
            let mut w: f64 = 0.0;
            for s in offsets(center) {
                let d = (g(s + CONDITION_FD_STEP) - g(s - CONDITION_FD_STEP)) / (2.0 * CONDITION_FD_STEP);
                w = w.max((d - target(s)?).abs());
            }
            w
        }
    };
    Ok(check(format!("{name} ({choice:?})"), worst))
}

/// Validate the condition functions a variant uses at the frame's observation event.
pub fn check_conditions(
    config: &FieldConfig,
    frame: &Frame3,
    variant: Variant,
    conditions: &ConditionSet,
    spec: &QuadratureSpec,
    constants: &PhysicalConstants,
) -> Result<Vec<ConditionCheck>> {
    frame.validate()?;
    let ctx = Ctx::new(config, spec, constants)?;
    check_with(&ctx, frame, variant, conditions)
}

fn check_with(ctx: &Ctx<'_>, frame: &Frame3, variant: Variant, conditions: &ConditionSet) -> Result<Vec<ConditionCheck>> {
    let ([_, _, t0], [x, y, _]) = (frame.p0, frame.p);
    let bz = ctx.paths.comp(Component::Bz);
    let mut out = Vec::with_capacity(3);
    if variant.uses_g_of_y() {
        out.push(validate_one_variable(
            "G(y)",
            &conditions.g,
            y,
            &|s| ctx.b_row(frame, s),
            &|| Ok(ctx.paths.segment_bound(&bz, Axis::X, [x, y, t0], frame.x_ref, x)?.0),
        )?);
    } else {
        out.push(validate_one_variable(
            "Ĝ(x)",
            &conditions.g_hat,
            x,
            &|s| Ok(-ctx.b_column(frame, s)?),
            &|| Ok(ctx.paths.segment_bound(&bz, Axis::Y, [x, y, t0], frame.y_ref, y)?.0),
        )?);
    }
    // ∂F/∂x = −c∫E_x dt′ on a horizontal cross-line, ∂F/∂y = −c∫E_y dt′ on a vertical one.
    let mut worst: f64 = 0.0;
    for (sx, sy, comp) in offsets(x)
        .map(|s| (s, y, Component::Ex))
        .chain(offsets(y).map(|s| (x, s, Component::Ey)))
    {
        let target = -ctx.e_time(frame, comp, sx, sy)?;
        let d = match &conditions.f {
            ConditionF::Zero => 0.0,
            ConditionF::User(f) => {
                let h = CONDITION_FD_STEP;
                if comp == Component::Ex {
                    (f(sx + h, sy) - f(sx - h, sy)) / (2.0 * h)
                } else {
                    (f(sx, sy + h) - f(sx, sy - h)) / (2.0 * h)
                }
            }
        };
        worst = worst.max((d - target).abs());
    }
    out.push(check(format!("F(x, y) ({:?})", conditions.f), worst));
    Ok(out)
}

/// One of the four printed solutions. Fails with
/// [`Error::DecompositionUnsupported`] naming the first violated condition.
pub fn lambda_full(
    config: &FieldConfig,
    frame: &Frame3,
    variant: Variant,
    conditions: &ConditionSet,
    spec: &QuadratureSpec,
    constants: &PhysicalConstants,
) -> Result<GaugeSolution> {
    frame.validate()?;
    let ctx = Ctx::new(config, spec, constants)?;
    paths::require_field_free(config, &[Component::Bz, Component::Ex, Component::Ey], frame.p)?;
    if let Some(bad) = check_with(&ctx, frame, variant, conditions)?.into_iter().find(|c| !c.pass) {
        return Err(Error::unsupported(format!(
            "condition {} violated: sampled mismatch {:.3e} > {:e}",
            bad.name, bad.worst, bad.tol
        )));
    }
    evaluate(&ctx, frame, variant, conditions)
}

fn evaluate(ctx: &Ctx<'_>, frame: &Frame3, variant: Variant, conditions: &ConditionSet) -> Result<GaugeSolution> {
    let ([x0, y0, t0], [x, y, t]) = (frame.p0, frame.p);
    let a_corner = variant.potential_corner();
    let e_corner = variant.field_corner();

    let phi = ctx.paths.comp(Component::Phi);
    let scalar = -ctx.c * ctx.paths.line(&phi, Axis::T, [x0, y0, t0], t0, t)?;
    let dirac = ctx.potential_path(frame, a_corner)? + scalar;

    let b_time = if variant.flux_at_t0() { t0 } else { t };
    let b_sign = if a_corner == Corner::UpFirst { 1.0 } else { -1.0 };
    let nonlocal = b_sign * ctx.flux((x0, y0), (x, y), b_time)? + ctx.field_path(frame, e_corner)?;

    let cond = if variant.uses_g_of_y() {
        ctx.g_of_y(frame, &conditions.g, y)?
    } else {
        ctx.g_hat_of_x(frame, &conditions.g_hat, x)?
    } + ctx.f_of(&conditions.f, x, y);

    let mult = if frame.multiplicities {
        let l = ledger3(ctx.cfg, frame)?;
        if variant.uses_g_of_y() {
            l.f_x0_t0
        } else {
            l.h_hat_y0_t0
        }
    } else {
        0.0
    };
    Ok(GaugeSolution::assemble(variant.branch(), frame.lambda0, dirac, nonlocal, cond, mult)
        .with_senses(Some(a_corner.sense()), Some(e_corner.sense())))
}

/// `Λ_Full2 − Λ_Fin` with zero condition functions and the `t₀` ledger:
/// the `A` loop integral at `t` plus `c ∫ dt′` of the `E` loop integral,
/// both counterclockwise around the frame's rectangle.
pub fn van_kampen_delta(config: &FieldConfig, frame: &Frame3, spec: &QuadratureSpec, constants: &PhysicalConstants) -> Result<f64> {
    let zero = ConditionSet::zero();
    let full2 = lambda_full(config, frame, Variant::Full2, &zero, spec, constants)?;
    let fin = lambda_full(config, frame, Variant::Fin, &zero, spec, constants)?;
    Ok(full2.lambda - fin.lambda)
}

/// Loop integrals entering the induction identity
/// `c ∫_{t₀}^{t} ∮E dt′ = −[∮A(t) − ∮A(t₀)]`, taken across-first minus
/// up-first (counterclockwise when `x > x₀` and `y > y₀`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaradayCheck {
    pub circulation_t: f64,
    pub circulation_t0: f64,
    pub field_term: f64,
    /// `field_term + circulation_t − circulation_t0`.
    pub residual: f64,
}

pub fn faraday_check(config: &FieldConfig, frame: &Frame3, spec: &QuadratureSpec, constants: &PhysicalConstants) -> Result<FaradayCheck> {
    frame.validate()?;
    let ctx = Ctx::new(config, spec, constants)?;
    let loop_a = |f: &Frame3| -> Result<f64> { Ok(ctx.potential_path(f, Corner::AcrossFirst)? - ctx.potential_path(f, Corner::UpFirst)?) };
    let at_t0 = frame.moved_to([frame.p[0], frame.p[1], frame.p0[2]]);
    let circulation_t = loop_a(frame)?;
    let circulation_t0 = loop_a(&at_t0)?;
    let field_term = ctx.field_path(frame, Corner::AcrossFirst)? - ctx.field_path(frame, Corner::UpFirst)?;
    Ok(FaradayCheck {
        circulation_t,
        circulation_t0,
        field_term,
        residual: field_term + circulation_t - circulation_t0,
    })
}

/// Central-difference residuals of all three equations at the frame's
/// observation event. Condition validation is skipped for the shifted
/// evaluations; run [`check_conditions`] separately.
#[allow(clippy::too_many_arguments)]
pub fn verify_full_system(
    config: &FieldConfig,
    frame: &Frame3,
    variant: Variant,
    conditions: &ConditionSet,
    step: f64,
    tol: f64,
    spec: &QuadratureSpec,
    constants: &PhysicalConstants,
) -> Result<ResidualReport> {
    paths::check_step(step, tol)?;
    frame.validate()?;
    let ctx = Ctx::new(config, spec, constants)?;
    let [x, y, t] = frame.p;
    let lam = |p: P3| Ok(evaluate(&ctx, &frame.moved_to(p), variant, conditions)?.lambda);
    let dx = paths::central(|s| lam([s, y, t]), x, step)?;
    let dy = paths::central(|s| lam([x, s, t]), y, step)?;
    let dt = paths::central(|s| lam([x, y, s]), t, step)?;
    Ok(ResidualReport::new(
        Some((dx - config.a_x(frame.p)?).abs()),
        Some((dy - config.a_y(frame.p)?).abs()),
        Some((-dt / constants.c - config.phi(frame.p)?).abs()),
        tol,
    ))
}
