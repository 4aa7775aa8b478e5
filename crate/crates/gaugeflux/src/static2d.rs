//! Static `Λ(x, y)` from the two rectangle-path solutions, their polar
//! analogues, and the constants picked up around an inaccessible flux line.
//!
//! Both solutions integrate the potentials along one of the two corner paths
//! of the rectangle spanned by the initial and observation points and add the
//! signed flux of that rectangle plus a gauge-fixing function. The gauge-fixing
//! functions are built from accessible fields only:
//!
//! - `g(x) = −∫_{y₀}^{y_ref} ∫_{x₀}^{x} B_z`  (first solution),
//! - `h(y) = ∫_{y_ref}^{y} ∫_{x₀}^{x_ref} B_z` (second solution),
//!
//! which makes the flux bracket of each solution independent of the
//! coordinate it must not depend on, provided the segments `{x}×[y_ref, y]`
//! and `[x_ref, x]×{y}` respectively are free of field. That is sampled and
//! reported as [`Error::DecompositionUnsupported`] otherwise.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Event, Result};
use crate::fields::{Axis, Component, FieldConfig, PolarLine, Topology};
use crate::paths::{self, Corner, Paths, INDEPENDENCE_TOL, SEGMENT_SAMPLES};
use crate::quadrature::{Integrator, QuadratureSpec};
use crate::solution::{Branch, GaugeSolution, ResidualReport};

/// Endpoints and reference coordinates of a static evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservationFrame {
    pub p0: [f64; 2],
    pub p: [f64; 2],
    /// Abscissa at which `h(y)` is anchored. Defaults to the observation `x`.
    pub x_ref: f64,
    /// Ordinate at which `g(x)` is anchored. Defaults to `y₀`.
    pub y_ref: f64,
    /// `Λ(x₀, y₀)`.
    pub lambda0: f64,
    /// Time slice at which the (static) evaluators are sampled.
    pub t: f64,
    /// Whether to add the constants for an enclosed inaccessible flux.
    pub multiplicities: bool,
}

impl ObservationFrame {
    pub fn new(p0: [f64; 2], p: [f64; 2]) -> Self {
        Self {
            p0,
            p,
            x_ref: p[0],
            y_ref: p0[1],
            lambda0: 0.0,
            t: 0.0,
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

    pub fn at_time(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    pub fn without_multiplicities(mut self) -> Self {
        self.multiplicities = false;
        self
    }

    /// The same frame (initial point and references kept) observed at `p`.
    pub fn moved_to(&self, p: [f64; 2]) -> Self {
        Self { p, ..*self }
    }

    fn validate(&self) -> Result<()> {
        paths::require_finite(
            "observation frame",
            &[self.p0[0], self.p0[1], self.p[0], self.p[1], self.x_ref, self.y_ref, self.lambda0, self.t],
        )
    }
}

/// Constants that absorb the flux of an inaccessible region enclosed by the
/// observation rectangle, in both the magnetic and the spacetime (electric)
/// settings. Unused entries are zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityLedger {
    /// `f(y₀)`, added to the first solution.
    pub f_y0: f64,
    /// `ĥ(x₀)`, added to the second solution.
    pub h_hat_x0: f64,
}

/// First solution: potentials up from `(x₀, y₀)` then across, `+∫∫B_z`, `g(x)`.
pub fn lambda1_static(config: &FieldConfig, frame: &ObservationFrame, spec: &QuadratureSpec) -> Result<GaugeSolution> {
    frame.validate()?;
    let ([x0, y0], [x, y], t) = (frame.p0, frame.p, frame.t);
    paths::require_field_free(config, &[Component::Bz], [x, y, t])?;
    let paths = Paths::new(config, spec)?;
    let bz = paths.comp(Component::Bz);
    paths.require_free_segment(&bz, Axis::Y, [x, y, t], frame.y_ref, y, "g(x)", &format!("x = {x}"))?;

    let (ax, ay) = (paths.comp(Component::Ax), paths.comp(Component::Ay));
    let dirac = paths.corner(&ax, &ay, (Axis::X, Axis::Y), [x0, y0, t], (x0, y0), (x, y), Corner::UpFirst)?;
    let flux = paths.surface(&bz, Axis::X, Axis::Y, [x0, y0, t], (x0, x), (y0, y))?
        + config.enclosed_magnetic_flux((x0, y0), (x, y), t)?;
    let g = -paths.surface(&bz, Axis::X, Axis::Y, [x0, y0, t], (x0, x), (y0, frame.y_ref))?;
    let mult = if frame.multiplicities {
        ab_multiplicities(config, frame)?.f_y0
    } else {
        0.0
    };
    Ok(GaugeSolution::assemble(Branch::Lambda1, frame.lambda0, dirac, flux, g, mult)
        .with_senses(Some(Corner::UpFirst.sense()), None))
}

/// Second solution: potentials across from `(x₀, y₀)` then up, `−∫∫B_z`, `h(y)`.
pub fn lambda2_static(config: &FieldConfig, frame: &ObservationFrame, spec: &QuadratureSpec) -> Result<GaugeSolution> {
    frame.validate()?;
    let ([x0, y0], [x, y], t) = (frame.p0, frame.p, frame.t);
    paths::require_field_free(config, &[Component::Bz], [x, y, t])?;
    let paths = Paths::new(config, spec)?;
    let bz = paths.comp(Component::Bz);
    paths.require_free_segment(&bz, Axis::X, [x, y, t], frame.x_ref, x, "h(y)", &format!("y = {y}"))?;

    let (ax, ay) = (paths.comp(Component::Ax), paths.comp(Component::Ay));
    let dirac = paths.corner(&ax, &ay, (Axis::X, Axis::Y), [x0, y0, t], (x0, y0), (x, y), Corner::AcrossFirst)?;
    let flux = paths.surface(&bz, Axis::X, Axis::Y, [x0, y0, t], (x0, x), (y0, y))?
        + config.enclosed_magnetic_flux((x0, y0), (x, y), t)?;
    let h = paths.surface(&bz, Axis::X, Axis::Y, [x0, y0, t], (x0, frame.x_ref), (frame.y_ref, y))?;
    let mult = if frame.multiplicities {
        ab_multiplicities(config, frame)?.h_hat_x0
    } else {
        0.0
    };
    Ok(GaugeSolution::assemble(Branch::Lambda2, frame.lambda0, dirac, -flux, h, mult)
        .with_senses(Some(Corner::AcrossFirst.sense()), None))
}

/// Central-difference check of `∂Λ/∂x = A_x`, `∂Λ/∂y = A_y` at the
/// observation point of `frame`, using `solution` for every evaluation.
pub fn verify_gradient<F>(config: &FieldConfig, frame: &ObservationFrame, solution: F, step: f64, tol: f64) -> Result<ResidualReport>
where
    F: Fn(&ObservationFrame) -> Result<GaugeSolution>,
{
    paths::check_step(step, tol)?;
    let [x, y] = frame.p;
    let lam = |px: f64, py: f64| Ok(solution(&frame.moved_to([px, py]))?.lambda);
    let dx = paths::central(|s| lam(s, y), x, step)?;
    let dy = paths::central(|s| lam(x, s), y, step)?;
    let at = [x, y, frame.t];
    Ok(ResidualReport::new(
        Some((dx - config.a_x(at)?).abs()),
        Some((dy - config.a_y(at)?).abs()),
        None,
        tol,
    ))
}

/// `Λ₁ − Λ₂` with multiplicity constants suppressed: zero for simply connected
/// regions, the enclosed flux around an inaccessible flux line.
pub fn cancellation_check(config: &FieldConfig, frame: &ObservationFrame, spec: &QuadratureSpec) -> Result<f64> {
    let bare = frame.without_multiplicities();
    Ok(lambda1_static(config, &bare, spec)?.lambda - lambda2_static(config, &bare, spec)?.lambda)
}

/// Constants for a declared flux line inside the observation rectangle:
/// `f(y₀) = −Φ`, `ĥ(x₀) = +Φ` with `Φ` signed by the rectangle orientation.
pub fn ab_multiplicities(config: &FieldConfig, frame: &ObservationFrame) -> Result<MultiplicityLedger> {
    let ([x0, y0], [x, y]) = (frame.p0, frame.p);
    let phi = config.enclosed_magnetic_flux((x0, y0), (x, y), frame.t)?;
    Ok(MultiplicityLedger {
        f_y0: -phi,
        h_hat_x0: phi,
    })
}

/// A point in polar coordinates with `ρ ≥ 0` and `φ ∈ (−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub rho: f64,
    pub phi: f64,
}

impl PolarPoint {
    /// Normalizes the angle into `(−π, π]`; rejects negative or non-finite radii.
    pub fn new(rho: f64, phi: f64) -> Result<Self> {
        if !(rho >= 0.0 && rho.is_finite() && phi.is_finite()) {
            return Err(Error::invalid(format!("invalid polar point (ρ={rho}, φ={phi})")));
        }
        let mut a = phi.rem_euclid(2.0 * PI);
        if a > PI {
            a -= 2.0 * PI;
        }
        Ok(Self { rho, phi: a })
    }

    /// Cartesian position relative to `origin`.
    pub fn to_cartesian(self, origin: [f64; 2]) -> [f64; 2] {
        [origin[0] + self.rho * self.phi.cos(), origin[1] + self.rho * self.phi.sin()]
    }

    pub fn from_cartesian(origin: [f64; 2], p: [f64; 2]) -> Self {
        let (dx, dy) = (p[0] - origin[0], p[1] - origin[1]);
        Self {
            rho: dx.hypot(dy),
            phi: dy.atan2(dx),
        }
    }
}

/// Polar counterpart of [`ObservationFrame`]. The integration "rectangle" is
/// the annular sector `[ρ₀, ρ] × [φ₀, φ]`, with `φ` running from `φ₀` to `φ`
/// without wrapping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarFrame {
    pub origin: [f64; 2],
    pub p0: PolarPoint,
    pub p: PolarPoint,
    /// Radius at which `h(φ)` is anchored. Defaults to the observation `ρ`.
    pub rho_ref: f64,
    /// Angle at which `g(ρ)` is anchored. Defaults to `φ₀`.
    pub phi_ref: f64,
    pub lambda0: f64,
    pub t: f64,
    pub multiplicities: bool,
}

impl PolarFrame {
    pub fn new(origin: [f64; 2], p0: PolarPoint, p: PolarPoint) -> Self {
        Self {
            origin,
            p0,
            p,
            rho_ref: p.rho,
            phi_ref: p0.phi,
            lambda0: 0.0,
            t: 0.0,
            multiplicities: true,
        }
    }

    pub fn with_refs(mut self, rho_ref: f64, phi_ref: f64) -> Self {
        self.rho_ref = rho_ref;
        self.phi_ref = phi_ref;
        self
    }

    pub fn with_lambda0(mut self, lambda0: f64) -> Self {
        self.lambda0 = lambda0;
        self
    }

    pub fn moved_to(&self, p: PolarPoint) -> Self {
        Self { p, ..*self }
    }
}

/// Which polar solution to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolarBranch {
    /// Arc at `ρ₀` first, then radially along `φ`: `+∫∫B ρ dρ dφ`, `g(ρ)`.
    First,
    /// Radially along `φ₀` first, then the arc at `ρ`: `−∫∫B ρ dρ dφ`, `h(φ)`.
    Second,
}

/// Polar form of the two static solutions.
///
/// The first branch mirrors [`lambda1_static`] with `(x, y) → (ρ, φ)`:
/// `∫_{ρ₀}^{ρ} A_ρ(ρ′, φ) dρ′ + ∫_{φ₀}^{φ} ρ₀ A_φ(ρ₀, φ′) dφ′ + ∫dφ′∫ρ′B dρ′ + g(ρ)`.
pub fn lambda_polar(config: &FieldConfig, frame: &PolarFrame, branch: PolarBranch, spec: &QuadratureSpec) -> Result<GaugeSolution> {
    paths::require_finite(
        "polar frame",
        &[frame.origin[0], frame.origin[1], frame.rho_ref, frame.phi_ref, frame.lambda0, frame.t],
    )?;
    let (r0, f0, r, f, t) = (frame.p0.rho, frame.p0.phi, frame.p.rho, frame.p.phi, frame.t);
    for (name, v) in [("ρ₀", r0), ("ρ", r), ("ρ_ref", frame.rho_ref)] {
        if !(v > 0.0) {
            return Err(Error::SingularPoint {
                at: Event([frame.origin[0], frame.origin[1], t]),
                reason: format!("{name} = {v}: polar solutions need a radius range away from the origin"),
            });
        }
    }
    let o = frame.origin;
    let cart = |rho: f64, phi: f64| [o[0] + rho * phi.cos(), o[1] + rho * phi.sin(), t];
    let obs = cart(r, f);
    paths::require_field_free(config, &[Component::Bz], obs)?;

    let q = Integrator::new(spec)?;
    let a_rho = |rho: f64, phi: f64| -> Result<f64> {
        let p = cart(rho, phi);
        Ok(config.a_x(p)? * phi.cos() + config.a_y(p)? * phi.sin())
    };
    // ρ A_φ, the covariant angular component.
    let a_phi = |rho: f64, phi: f64| -> Result<f64> {
        let p = cart(rho, phi);
        Ok(rho * (-config.a_x(p)? * phi.sin() + config.a_y(p)? * phi.cos()))
    };
    let b_meas = |rho: f64, phi: f64| -> Result<f64> { Ok(rho * config.b_z(cart(rho, phi))?) };
    let ray = |phi: f64| config.polar_breaks(o, PolarLine::Ray(phi), t);
    let arc = |rho: f64| config.polar_breaks(o, PolarLine::Arc(rho), t);
    let sector = |(ra, rb): (f64, f64), (fa, fb): (f64, f64)| {
        let mut outer = config.polar_breaks(o, PolarLine::Tangents, t);
        outer.extend(arc(ra));
        outer.extend(arc(rb));
        q.integrate_rect(b_meas, (ra, rb), (fa, fb), ray, &outer)
    };

    let flux = sector((r0, r), (f0, f))? + polar_enclosed_flux(config, frame)?;
    let ledger = polar_multiplicities(config, frame)?;
    let (dirac, nonlocal, fix, mult, corner, branch_tag) = match branch {
        PolarBranch::First => {
            segment_check(|phi| config.b_z(cart(r, phi)), frame.phi_ref, f, r, "g(ρ)", &format!("ρ = {r}"))?;
            let dirac = q.integrate(|phi| a_phi(r0, phi), f0, f, &arc(r0))? + q.integrate(|rho| a_rho(rho, f), r0, r, &ray(f))?;
            let g = -sector((r0, r), (f0, frame.phi_ref))?;
            (dirac, flux, g, ledger.f_y0, Corner::UpFirst, Branch::Polar1)
        }
        PolarBranch::Second => {
            segment_check(|rho| config.b_z(cart(rho, f)), frame.rho_ref, r, 1.0, "h(φ)", &format!("φ = {f}"))?;
            let dirac = q.integrate(|rho| a_rho(rho, f0), r0, r, &ray(f0))? + q.integrate(|phi| a_phi(r, phi), f0, f, &arc(r))?;
            let h = sector((r0, frame.rho_ref), (frame.phi_ref, f))?;
            (dirac, -flux, h, ledger.h_hat_x0, Corner::AcrossFirst, Branch::Polar2)
        }
    };
    let mult = if frame.multiplicities { mult } else { 0.0 };
    Ok(GaugeSolution::assemble(branch_tag, frame.lambda0, dirac, nonlocal, fix, mult).with_senses(Some(corner.sense()), None))
}

// Samples `b` on the coordinate segment [a, b_end]; `scale` converts the
// coordinate length to arc length.
fn segment_check<F: Fn(f64) -> Result<f64>>(b: F, a: f64, b_end: f64, scale: f64, what: &str, label: &str) -> Result<()> {
    let len = (b_end - a).abs() * scale;
    for k in 0..SEGMENT_SAMPLES {
        let s = a + (b_end - a) * k as f64 / (SEGMENT_SAMPLES - 1) as f64;
        let bound = b(s)?.abs() * len;
        if bound > INDEPENDENCE_TOL {
            return Err(Error::unsupported(format!(
                "{what}: derivative of the bracket reaches {bound:.3e} > {INDEPENDENCE_TOL:e} at sampled {label} (coordinate {s})"
            )));
        }
    }
    Ok(())
}

// Declared flux line inside the annular sector, signed by its orientation.
fn polar_enclosed_flux(config: &FieldConfig, frame: &PolarFrame) -> Result<f64> {
    let Topology::MagneticFlux { center, profile } = config.topology() else {
        return Ok(0.0);
    };
    let c = PolarPoint::from_cartesian(frame.origin, center);
    let (r0, f0, r, f) = (frame.p0.rho, frame.p0.phi, frame.p.rho, frame.p.phi);
    let between = |v: f64, a: f64, b: f64| (a.min(b) < v && v < a.max(b), v == a || v == b);
    let (in_r, on_r) = between(c.rho, r0, r);
    let (in_f, on_f) = between(c.phi, f0, f);
    if (on_r && (in_f || on_f)) || (on_f && in_r) {
        return Err(Error::SingularPoint {
            at: Event([center[0], center[1], frame.t]),
            reason: "flux line lies on the boundary of the annular sector".into(),
        });
    }
    if in_r && in_f {
        Ok(((r - r0) * (f - f0)).signum() * profile.value(frame.t))
    } else {
        Ok(0.0)
    }
}

fn polar_multiplicities(config: &FieldConfig, frame: &PolarFrame) -> Result<MultiplicityLedger> {
    let phi = polar_enclosed_flux(config, frame)?;
    Ok(MultiplicityLedger {
        f_y0: -phi,
        h_hat_x0: phi,
    })
}
