//! Electromagnetic configurations: the *difference* between the potentials and
//! fields of two mapped systems.
//!
//! Every configuration exposes six evaluators over spacetime events
//! `(x, y, t)`: the potentials `A_x`, `A_y`, `φ` and the fields `B_z`, `E_x`,
//! `E_y`. Configurations are immutable and safe to evaluate from many threads.

mod builtin;
mod grid;
mod retarded;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Event, Result};

pub use builtin::{
    BuiltinConfig, CapacitorParams, DiscBlobParams, ElectricAbParams, HorizontalStripParams,
    RetardedFluxParams, SmoothBumpParams, SolenoidParams, StripAxis, StripField, TriangleParams,
    VerticalStripParams, CATALOG,
};
pub use grid::TabulatedGrid;
pub use retarded::{retarded_flux_fields, RetardedFields};

/// A spacetime event `[x, y, t]`.
pub type P3 = [f64; 3];

/// Coordinate axis of an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    T,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::T => 2,
        }
    }
}

/// One of the six evaluators of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    Ax,
    Ay,
    Phi,
    Bz,
    Ex,
    Ey,
}

impl Component {
    pub const ALL: [Component; 6] = [
        Component::Ax,
        Component::Ay,
        Component::Phi,
        Component::Bz,
        Component::Ex,
        Component::Ey,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Component::Ax => "A_x",
            Component::Ay => "A_y",
            Component::Phi => "phi",
            Component::Bz => "B_z",
            Component::Ex => "E_x",
            Component::Ey => "E_y",
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, Component::Bz | Component::Ex | Component::Ey)
    }
}

/// Physical constants in Gaussian-style units with explicit `c`.
///
/// `Λ` is always carried in flux units; a phase is obtained only through
/// [`PhysicalConstants::phase`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicalConstants {
    pub c: f64,
    pub q_over_hbar_c: f64,
    pub flux_quantum: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            c: 1.0,
            q_over_hbar_c: 1.0,
            flux_quantum: 1.0,
        }
    }
}

impl PhysicalConstants {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::invalid(format!("speed of light must be positive, got {}", self.c)));
        }
        if !(self.flux_quantum > 0.0 && self.flux_quantum.is_finite()) {
            return Err(Error::invalid(format!(
                "flux quantum must be positive, got {}",
                self.flux_quantum
            )));
        }
        if !self.q_over_hbar_c.is_finite() {
            return Err(Error::invalid("q_over_hbar_c must be finite"));
        }
        Ok(())
    }

    /// Phase `q Λ / ħc` of a gauge-function value.
    pub fn phase(&self, lambda: f64) -> f64 {
        self.q_over_hbar_c * lambda
    }
}

/// Axis-aligned box in spacetime outside which the *fields* `B_z`, `E_x`,
/// `E_y` vanish. Potentials are gauge dependent and generally do not vanish
/// there (a Landau gauge for a strip is constant but non-zero beyond it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub t: (f64, f64),
}

impl Support {
    pub const EVERYWHERE: Support = Support {
        x: (f64::NEG_INFINITY, f64::INFINITY),
        y: (f64::NEG_INFINITY, f64::INFINITY),
        t: (f64::NEG_INFINITY, f64::INFINITY),
    };

    pub const EMPTY: Support = Support {
        x: (0.0, 0.0),
        y: (0.0, 0.0),
        t: (0.0, 0.0),
    };

    pub fn contains(&self, p: P3) -> bool {
        let inside = |(lo, hi): (f64, f64), v: f64| lo <= v && v <= hi && lo < hi;
        inside(self.x, p[0]) && inside(self.y, p[1]) && inside(self.t, p[2])
    }
}

/// Time profile of a confined flux: constant `phi0` before `t0`, then ramped
/// linearly with slope `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluxProfile {
    pub phi0: f64,
    #[serde(default)]
    pub k: f64,
    #[serde(default)]
    pub t0: f64,
}

impl FluxProfile {
    pub fn constant(phi0: f64) -> Self {
        Self { phi0, k: 0.0, t0: 0.0 }
    }

    pub fn value(&self, t: f64) -> f64 {
        self.phi0 + self.k * (t - self.t0).max(0.0)
    }

    pub fn rate(&self, t: f64) -> f64 {
        if t > self.t0 {
            self.k
        } else {
            0.0
        }
    }
}

/// Connectivity of the region accessible to the particle.
///
/// Multiple connectivity is declared, never inferred from field data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Topology {
    SimplyConnected,
    /// An idealized flux line at `center` that the particle cannot reach.
    /// Its flux is absent from the `B_z` evaluator.
    MagneticFlux { center: [f64; 2], profile: FluxProfile },
    /// An excised spacetime rectangle in the `(x, t)` plane enclosing the
    /// "electric flux" `c ∫∫ E dx dt = flux`. The `E_x` evaluator reports zero
    /// inside it.
    SpacetimeFlux { x: (f64, f64), t: (f64, f64), flux: f64 },
}

/// A coordinate line in polar coordinates about some origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolarLine {
    /// The ray at this angle; breaks are radii.
    Ray(f64),
    /// The circle of this radius; breaks are angles.
    Arc(f64),
    /// Angles at which integrals along rays change analytic form; breaks are angles.
    Tangents,
}

/// How the evaluators are realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigKind {
    Analytic,
    TabulatedGrid,
}

/// Evaluator back end of a [`FieldConfig`].
pub trait FieldModel: Send + Sync + fmt::Debug {
    fn eval(&self, component: Component, p: P3) -> Result<f64>;

    /// Coordinates along `axis`, on the line through `at`, where some
    /// evaluator is not smooth.
    fn breaks_along(&self, _axis: Axis, _at: P3) -> Vec<f64> {
        Vec::new()
    }

    /// Coordinates along `axis` where integrals over lines through `at`
    /// perpendicular to `axis` change analytic form (vertices, tangencies).
    fn critical_values(&self, _axis: Axis, _at: P3) -> Vec<f64> {
        Vec::new()
    }

    /// Polar counterpart of [`FieldModel::breaks_along`] and
    /// [`FieldModel::critical_values`] about `origin` at time `t`.
    fn polar_breaks(&self, _origin: [f64; 2], _line: PolarLine, _t: f64) -> Vec<f64> {
        Vec::new()
    }

    /// Whether `p` lies within `eps` of a discontinuity or singular set;
    /// consistency sampling skips such points.
    fn near_discontinuity(&self, _p: P3, _eps: f64) -> bool {
        false
    }
}

/// An immutable electromagnetic configuration.
#[derive(Debug, Clone)]
pub struct FieldConfig {
    name: String,
    kind: ConfigKind,
    support: Support,
    topology: Topology,
    model: Arc<dyn FieldModel>,
}

impl FieldConfig {
    pub fn new(
        name: impl Into<String>,
        kind: ConfigKind,
        support: Support,
        topology: Topology,
        model: Arc<dyn FieldModel>,
    ) -> Self {
        Self {
            name: name.into(),
            kind,
            support,
            topology,
            model,
        }
    }

    /// The configuration whose six evaluators are identically zero.
    pub fn zero() -> Self {
        Self::new(
            "zero",
            ConfigKind::Analytic,
            Support::EMPTY,
            Topology::SimplyConnected,
            Arc::new(builtin::Zero),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ConfigKind {
        self.kind
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn is_simply_connected(&self) -> bool {
        self.topology == Topology::SimplyConnected
    }

    /// Evaluate one component at an event. Outside the declared support the
    /// fields are reported as zero without consulting the model.
    pub fn eval(&self, component: Component, p: P3) -> Result<f64> {
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::Evaluation {
                quantity: component.name(),
                at: Event(p),
                reason: "non-finite coordinates".into(),
            });
        }
        if component.is_field() && !self.support.contains(p) {
            return Ok(0.0);
        }
        self.model.eval(component, p)
    }

    pub fn a_x(&self, p: P3) -> Result<f64> {
        self.eval(Component::Ax, p)
    }

    pub fn a_y(&self, p: P3) -> Result<f64> {
        self.eval(Component::Ay, p)
    }

    pub fn phi(&self, p: P3) -> Result<f64> {
        self.eval(Component::Phi, p)
    }

    pub fn b_z(&self, p: P3) -> Result<f64> {
        self.eval(Component::Bz, p)
    }

    pub fn e_x(&self, p: P3) -> Result<f64> {
        self.eval(Component::Ex, p)
    }

    pub fn e_y(&self, p: P3) -> Result<f64> {
        self.eval(Component::Ey, p)
    }

    pub fn breaks_along(&self, axis: Axis, at: P3) -> Vec<f64> {
        self.model.breaks_along(axis, at)
    }

    pub fn critical_values(&self, axis: Axis, at: P3) -> Vec<f64> {
        self.model.critical_values(axis, at)
    }

    pub fn polar_breaks(&self, origin: [f64; 2], line: PolarLine, t: f64) -> Vec<f64> {
        self.model.polar_breaks(origin, line, t)
    }

    pub fn near_discontinuity(&self, p: P3, eps: f64) -> bool {
        self.model.near_discontinuity(p, eps)
    }

    /// Signed magnetic flux of the declared flux line enclosed by the
    /// rectangle with corners `(x0, y0)` and `(x, y)` at time `t`; positive
    /// for `x > x0, y > y0`. Zero for other topologies or when the line lies
    /// outside.
    pub fn enclosed_magnetic_flux(&self, (x0, y0): (f64, f64), (x, y): (f64, f64), t: f64) -> Result<f64> {
        let Topology::MagneticFlux { center, profile } = self.topology else {
            return Ok(0.0);
        };
        let sign = orientation((x0, y0), (x, y));
        match (strictly_between(center[0], x0, x), strictly_between(center[1], y0, y)) {
            (Some(true), Some(true)) => Ok(sign * profile.value(t)),
            (Some(_), Some(_)) => Ok(0.0),
            _ => Err(Error::SingularPoint {
                at: Event([center[0], center[1], t]),
                reason: "flux line lies on the boundary of the observation rectangle".into(),
            }),
        }
    }

    /// Signed "electric flux" of the declared excised spacetime region
    /// enclosed by the `(x, t)` rectangle with corners `(x0, t0)`, `(x, t)`.
    pub fn enclosed_electric_flux(&self, (x0, t0): (f64, f64), (x, t): (f64, f64)) -> Result<f64> {
        let Topology::SpacetimeFlux { x: xr, t: tr, flux } = self.topology else {
            return Ok(0.0);
        };
        let (xl, xh) = (x0.min(x), x0.max(x));
        let (tl, th) = (t0.min(t), t0.max(t));
        let inside = xl < xr.0 && xr.1 < xh && tl < tr.0 && tr.1 < th;
        let disjoint = xr.1 <= xl || xh <= xr.0 || tr.1 <= tl || th <= tr.0;
        if inside {
            Ok(orientation((x0, t0), (x, t)) * flux)
        } else if disjoint {
            Ok(0.0)
        } else {
            Err(Error::unsupported(
                "the excised spacetime region straddles the observation rectangle",
            ))
        }
    }
}

fn orientation(p0: (f64, f64), p: (f64, f64)) -> f64 {
    ((p.0 - p0.0) * (p.1 - p0.1)).signum()
}

// Some(true) if v is strictly between a and b, Some(false) if strictly
// outside, None on the boundary.
fn strictly_between(v: f64, a: f64, b: f64) -> Option<bool> {
    let (lo, hi) = (a.min(b), a.max(b));
    if v == lo || v == hi {
        None
    } else {
        Some(lo < v && v < hi)
    }
}

/// Sampling window for [`check_consistency`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRegion {
    pub x: (f64, f64),
    pub y: (f64, f64),
    #[serde(default)]
    pub t: f64,
}

/// Outcome of a finite-difference consistency check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    /// `max |B_z − (∂A_y/∂x − ∂A_x/∂y)|` over the accepted samples.
    pub magnetic_residual: f64,
    /// `max |E + ∇φ + (1/c) ∂A/∂t|` over the accepted samples.
    pub electric_residual: f64,
    /// Where the larger of the two maxima occurred.
    pub worst_at: Option<P3>,
    pub samples_used: usize,
    pub samples_skipped: usize,
    pub tol: f64,
    pub pass: bool,
}

/// Verify `B_z = ∂A_y/∂x − ∂A_x/∂y` and `E = −∇φ − (1/c) ∂A/∂t` on a
/// `samples × samples` cell-centred grid over `region`.
///
/// Points within an ε-collar of declared discontinuities (ε = 1e-3 of the
/// region size) are skipped.
pub fn check_consistency(
    config: &FieldConfig,
    region: &SampleRegion,
    samples: usize,
    tol: f64,
    constants: &PhysicalConstants,
) -> Result<ConsistencyReport> {
    if samples < 4 {
        return Err(Error::invalid("consistency check needs at least 4 samples per axis"));
    }
    constants.validate()?;
    let (wx, wy) = (region.x.1 - region.x.0, region.y.1 - region.y.0);
    if !(wx > 0.0 && wy > 0.0) {
        return Err(Error::invalid("consistency region must have positive extent"));
    }
    let size = wx.max(wy);
    let eps = 1e-3 * size;
    let h = (1e-6 * size).min(eps / 10.0);
    let c = constants.c;
    let d = |comp: Component, p: P3, axis: usize| -> Result<f64> {
        let (mut lo, mut hi) = (p, p);
        lo[axis] -= h;
        hi[axis] += h;
        Ok((config.eval(comp, hi)? - config.eval(comp, lo)?) / (2.0 * h))
    };
    let mut report = ConsistencyReport {
        magnetic_residual: 0.0,
        electric_residual: 0.0,
        worst_at: None,
        samples_used: 0,
        samples_skipped: 0,
        tol,
        pass: true,
    };
    let mut worst = 0.0;
    for i in 0..samples {
        for j in 0..samples {
            let p = [
                region.x.0 + wx * (i as f64 + 0.5) / samples as f64,
                region.y.0 + wy * (j as f64 + 0.5) / samples as f64,
                region.t,
            ];
            if config.near_discontinuity(p, eps) {
                report.samples_skipped += 1;
                continue;
            }
            let curl = d(Component::Ay, p, 0)? - d(Component::Ax, p, 1)?;
            let rb = (config.b_z(p)? - curl).abs();
            let rex = (config.e_x(p)? + d(Component::Phi, p, 0)? + d(Component::Ax, p, 2)? / c).abs();
            let rey = (config.e_y(p)? + d(Component::Phi, p, 1)? + d(Component::Ay, p, 2)? / c).abs();
            let re = rex.max(rey);
            report.magnetic_residual = report.magnetic_residual.max(rb);
            report.electric_residual = report.electric_residual.max(re);
            if rb.max(re) > worst || report.worst_at.is_none() {
                worst = rb.max(re);
                report.worst_at = Some(p);
            }
            report.samples_used += 1;
        }
    }
    report.pass = report.magnetic_residual <= tol && report.electric_residual <= tol;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_config_is_consistent() {
        let region = SampleRegion { x: (-1.0, 1.0), y: (-1.0, 1.0), t: 0.0 };
        let r = check_consistency(&FieldConfig::zero(), &region, 5, 1e-12, &PhysicalConstants::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.magnetic_residual, 0.0);
        assert_eq!(r.electric_residual, 0.0);
        assert_eq!(r.samples_used, 25);
    }

    #[test]
    fn flux_profile_is_constant_before_t0() {
        let p = FluxProfile { phi0: 1.0, k: 0.5, t0: 2.0 };
        assert_eq!(p.value(-10.0), 1.0);
        assert_eq!(p.value(4.0), 2.0);
        assert_eq!(p.rate(1.0), 0.0);
        assert_eq!(p.rate(3.0), 0.5);
    }

    #[test]
    fn constants_reject_nonpositive_c() {
        let k = PhysicalConstants { c: 0.0, ..Default::default() };
        assert!(k.validate().is_err());
        assert_eq!(PhysicalConstants::default().phase(2.5), 2.5);
    }
}
