//! Built-in analytic configurations. Each one fixes and documents its gauge so
//! that results are reproducible.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::retarded::RetardedFlux;
use super::{Axis, Component, ConfigKind, FieldConfig, FieldModel, FluxProfile, PhysicalConstants, PolarLine, Support, Topology, P3};
use crate::error::{Error, Event, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Names and one-line descriptions of every built-in configuration.
pub const CATALOG: &[(&str, &str)] = &[
    ("zero", "all six evaluators identically zero"),
    ("vertical_strip", "uniform B_z (or E_x) for x_lo <= x < x_hi; Landau gauge A_y(x) (or phi(x))"),
    ("horizontal_strip", "uniform B_z for lo <= y < hi (axis y) or E_x for lo <= t < hi (axis t); gauge A_x only"),
    ("triangle", "uniform B_z inside an equilateral triangle of side a with a horizontal base; gauge A_y(x, y)"),
    ("solenoid_flux", "idealized flux line (no accessible field), symmetric gauge A = flux/(2 pi r) e_theta"),
    ("capacitor_1d", "uniform E_x between the plates, optionally switched on for t_on <= t < t_off; gauge A = 0"),
    ("retarded_flux", "ramped flux line with sharp-front retarded vector potential, phi = 0"),
    ("disc_blob", "uniform B_z inside a disc; symmetric gauge about the disc centre"),
    ("electric_ab", "excised spacetime rectangle carrying an inaccessible electric flux; A = 0"),
    ("smooth_bump", "compactly supported smooth B_z and E with a global pure-gauge term added"),
];

/// Which field a vertical strip carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StripField {
    #[default]
    Magnetic,
    Electric,
}

/// Which coordinate bounds a horizontal strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StripAxis {
    #[default]
    Y,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerticalStripParams {
    pub x_lo: f64,
    pub x_hi: f64,
    pub amplitude: f64,
    #[serde(default)]
    pub field: StripField,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HorizontalStripParams {
    pub lo: f64,
    pub hi: f64,
    pub amplitude: f64,
    #[serde(default)]
    pub axis: StripAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleParams {
    pub a: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
    #[serde(default)]
    pub x_shift: f64,
    #[serde(default)]
    pub y_shift: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolenoidParams {
    pub flux: f64,
    #[serde(default)]
    pub center: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacitorParams {
    pub x_lo: f64,
    pub x_hi: f64,
    pub e0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_on: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_off: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RetardedFluxParams {
    pub phi0: f64,
    #[serde(default)]
    pub k: f64,
    #[serde(default)]
    pub center: [f64; 2],
    #[serde(default)]
    pub t0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscBlobParams {
    pub center: [f64; 2],
    pub radius: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElectricAbParams {
    pub x_lo: f64,
    pub x_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
    pub flux: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothBumpParams {
    #[serde(default)]
    pub center: [f64; 2],
    pub radius: f64,
    #[serde(default = "one")]
    pub b0: f64,
    #[serde(default)]
    pub b1: f64,
    #[serde(default)]
    pub e0: f64,
    #[serde(default)]
    pub gauge: f64,
}

fn one() -> f64 {
    1.0
}

/// A named built-in configuration with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "snake_case")]
pub enum BuiltinConfig {
    Zero,
    VerticalStrip(VerticalStripParams),
    HorizontalStrip(HorizontalStripParams),
    Triangle(TriangleParams),
    SolenoidFlux(SolenoidParams),
    #[serde(rename = "capacitor_1d")]
    Capacitor1d(CapacitorParams),
    RetardedFlux(RetardedFluxParams),
    DiscBlob(DiscBlobParams),
    ElectricAb(ElectricAbParams),
    SmoothBump(SmoothBumpParams),
}

impl BuiltinConfig {
    pub fn name(&self) -> &'static str {
        match self {
            BuiltinConfig::Zero => "zero",
            BuiltinConfig::VerticalStrip(_) => "vertical_strip",
            BuiltinConfig::HorizontalStrip(_) => "horizontal_strip",
            BuiltinConfig::Triangle(_) => "triangle",
            BuiltinConfig::SolenoidFlux(_) => "solenoid_flux",
            BuiltinConfig::Capacitor1d(_) => "capacitor_1d",
            BuiltinConfig::RetardedFlux(_) => "retarded_flux",
            BuiltinConfig::DiscBlob(_) => "disc_blob",
            BuiltinConfig::ElectricAb(_) => "electric_ab",
            BuiltinConfig::SmoothBump(_) => "smooth_bump",
        }
    }

    /// Instantiate the configuration. Gauges involving time need `c`.
    pub fn build(&self, constants: &PhysicalConstants) -> Result<FieldConfig> {
        constants.validate()?;
        let c = constants.c;
        let analytic = |support, topology, model: Arc<dyn FieldModel>| {
            FieldConfig::new(self.name(), ConfigKind::Analytic, support, topology, model)
        };
        let all = Support::EVERYWHERE;
        Ok(match *self {
            BuiltinConfig::Zero => FieldConfig::zero(),
            BuiltinConfig::VerticalStrip(p) => {
                ordered("vertical_strip", p.x_lo, p.x_hi)?;
                finite("amplitude", p.amplitude)?;
                let support = Support { x: (p.x_lo, p.x_hi), ..all };
                analytic(support, Topology::SimplyConnected, Arc::new(VerticalStrip(p)))
            }
            BuiltinConfig::HorizontalStrip(p) => {
                ordered("horizontal_strip", p.lo, p.hi)?;
                finite("amplitude", p.amplitude)?;
                let support = match p.axis {
                    StripAxis::Y => Support { y: (p.lo, p.hi), ..all },
                    StripAxis::T => Support { t: (p.lo, p.hi), ..all },
                };
                analytic(support, Topology::SimplyConnected, Arc::new(HorizontalStrip { p, c }))
            }
            BuiltinConfig::Triangle(p) => {
                positive("a", p.a)?;
                finite("amplitude", p.amplitude)?;
                let tri = Triangle::new(p);
                let support = Support {
                    x: (p.x_shift, p.x_shift + p.a),
                    y: (p.y_shift, p.y_shift + tri.height),
                    ..all
                };
                analytic(support, Topology::SimplyConnected, Arc::new(tri))
            }
            BuiltinConfig::SolenoidFlux(p) => {
                finite("flux", p.flux)?;
                analytic(
                    Support::EMPTY,
                    Topology::MagneticFlux {
                        center: p.center,
                        profile: FluxProfile::constant(p.flux),
                    },
                    Arc::new(RetardedFlux::new(FluxProfile::constant(p.flux), p.center, c)),
                )
            }
            BuiltinConfig::Capacitor1d(p) => {
                ordered("capacitor_1d", p.x_lo, p.x_hi)?;
                if let (Some(on), Some(off)) = (p.t_on, p.t_off) {
                    ordered("capacitor_1d pulse", on, off)?;
                }
                finite("e0", p.e0)?;
                let support = Support {
                    x: (p.x_lo, p.x_hi),
                    t: (p.t_on.unwrap_or(f64::NEG_INFINITY), p.t_off.unwrap_or(f64::INFINITY)),
                    ..all
                };
                analytic(support, Topology::SimplyConnected, Arc::new(Capacitor(p)))
            }
            BuiltinConfig::RetardedFlux(p) => {
                finite("phi0", p.phi0)?;
                finite("k", p.k)?;
                let profile = FluxProfile { phi0: p.phi0, k: p.k, t0: p.t0 };
                let support = Support { t: (p.t0, f64::INFINITY), ..all };
                analytic(
                    support,
                    Topology::MagneticFlux { center: p.center, profile },
                    Arc::new(RetardedFlux::new(profile, p.center, c)),
                )
            }
            BuiltinConfig::DiscBlob(p) => {
                positive("radius", p.radius)?;
                finite("amplitude", p.amplitude)?;
                let [cx, cy] = p.center;
                let support = Support {
                    x: (cx - p.radius, cx + p.radius),
                    y: (cy - p.radius, cy + p.radius),
                    ..all
                };
                analytic(support, Topology::SimplyConnected, Arc::new(DiscBlob(p)))
            }
            BuiltinConfig::ElectricAb(p) => {
                ordered("electric_ab x", p.x_lo, p.x_hi)?;
                ordered("electric_ab t", p.t_lo, p.t_hi)?;
                finite("flux", p.flux)?;
                analytic(
                    Support::EMPTY,
                    Topology::SpacetimeFlux {
                        x: (p.x_lo, p.x_hi),
                        t: (p.t_lo, p.t_hi),
                        flux: p.flux,
                    },
                    Arc::new(ElectricAb { p, c }),
                )
            }
            BuiltinConfig::SmoothBump(p) => {
                positive("radius", p.radius)?;
                for (n, v) in [("b0", p.b0), ("b1", p.b1), ("e0", p.e0), ("gauge", p.gauge)] {
                    finite(n, v)?;
                }
                let [cx, cy] = p.center;
                let support = Support {
                    x: (cx - p.radius, cx + p.radius),
                    y: (cy - p.radius, cy + p.radius),
                    ..all
                };
                analytic(support, Topology::SimplyConnected, Arc::new(SmoothBump { p, c }))
            }
        })
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be finite")))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive, got {v}")))
    }
}

fn ordered(name: &str, lo: f64, hi: f64) -> Result<()> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name}: need lo < hi, got [{lo}, {hi}]")))
    }
}

fn within(v: f64, lo: f64, hi: f64) -> bool {
    lo <= v && v < hi
}

fn near(v: f64, edges: &[f64], eps: f64) -> bool {
    edges.iter().any(|e| (v - e).abs() < eps)
}

#[derive(Debug)]
pub(super) struct Zero;

impl FieldModel for Zero {
    fn eval(&self, _: Component, _: P3) -> Result<f64> {
        Ok(0.0)
    }
}

/// Uniform `B_z = B₀` (or `E_x = E₀`) for `x_lo ≤ x < x_hi`.
///
/// Gauge: `A_y = B₀·clamp(x − x_lo, 0, w)`, `A_x = φ = 0` (magnetic) or
/// `φ = −E₀·clamp(x − x_lo, 0, w)`, `A = 0` (electric).
#[derive(Debug)]
struct VerticalStrip(VerticalStripParams);

impl FieldModel for VerticalStrip {
    fn eval(&self, comp: Component, [x, _, _]: P3) -> Result<f64> {
        let p = &self.0;
        let ramp = (x - p.x_lo).clamp(0.0, p.x_hi - p.x_lo);
        let inside = within(x, p.x_lo, p.x_hi);
        Ok(match (p.field, comp) {
            (StripField::Magnetic, Component::Ay) => p.amplitude * ramp,
            (StripField::Magnetic, Component::Bz) if inside => p.amplitude,
            (StripField::Electric, Component::Phi) => -p.amplitude * ramp,
            (StripField::Electric, Component::Ex) if inside => p.amplitude,
            _ => 0.0,
        })
    }

    fn breaks_along(&self, axis: Axis, _: P3) -> Vec<f64> {
        match axis {
            Axis::X => vec![self.0.x_lo, self.0.x_hi],
            _ => Vec::new(),
        }
    }

    fn critical_values(&self, axis: Axis, at: P3) -> Vec<f64> {
        self.breaks_along(axis, at)
    }

    fn near_discontinuity(&self, p: P3, eps: f64) -> bool {
        near(p[0], &[self.0.x_lo, self.0.x_hi], eps)
    }
}

/// Uniform `B_z = B₀` for `lo ≤ y < hi`, gauge `A_x = −B₀·clamp(y − lo, 0, w)`;
/// or uniform `E_x = E₀` for `lo ≤ t < hi` (a field everywhere in space for a
/// duration), gauge `A_x = −c E₀·clamp(t − lo, 0, T)`, `φ = 0`.
#[derive(Debug)]
struct HorizontalStrip {
    p: HorizontalStripParams,
    c: f64,
}

impl HorizontalStrip {
    fn axis(&self) -> Axis {
        match self.p.axis {
            StripAxis::Y => Axis::Y,
            StripAxis::T => Axis::T,
        }
    }
}

impl FieldModel for HorizontalStrip {
    fn eval(&self, comp: Component, pt: P3) -> Result<f64> {
        let p = &self.p;
        let v = pt[self.axis().index()];
        let ramp = (v - p.lo).clamp(0.0, p.hi - p.lo);
        let inside = within(v, p.lo, p.hi);
        Ok(match (p.axis, comp) {
            (StripAxis::Y, Component::Ax) => -p.amplitude * ramp,
            (StripAxis::Y, Component::Bz) if inside => p.amplitude,
            (StripAxis::T, Component::Ax) => -self.c * p.amplitude * ramp,
            (StripAxis::T, Component::Ex) if inside => p.amplitude,
            _ => 0.0,
        })
    }

    fn breaks_along(&self, axis: Axis, _: P3) -> Vec<f64> {
        if axis == self.axis() {
            vec![self.p.lo, self.p.hi]
        } else {
            Vec::new()
        }
    }

    fn critical_values(&self, axis: Axis, at: P3) -> Vec<f64> {
        self.breaks_along(axis, at)
    }

    fn near_discontinuity(&self, pt: P3, eps: f64) -> bool {
        near(pt[self.axis().index()], &[self.p.lo, self.p.hi], eps)
    }
}

/// Uniform `B_z` inside the equilateral triangle with vertices
/// `(s, u)`, `(s + a, u)`, `(s + a/2, u + √3 a/2)` where `(s, u)` is the shift.
///
/// Gauge: `A_x = 0`, `A_y(x, y) = B₀ × (length of the triangle's chord at
/// height y lying left of x)`.
#[derive(Debug)]
struct Triangle {
    p: TriangleParams,
    height: f64,
}

impl Triangle {
    fn new(p: TriangleParams) -> Self {
        Self { p, height: SQRT3 / 2.0 * p.a }
    }

    // Chord [left, right] at absolute height y, if the line cuts the triangle.
    fn chord(&self, y: f64) -> Option<(f64, f64)> {
        let h = y - self.p.y_shift;
        if !(0.0..self.height).contains(&h) {
            return None;
        }
        Some((self.p.x_shift + h / SQRT3, self.p.x_shift + self.p.a - h / SQRT3))
    }
}

impl FieldModel for Triangle {
    fn eval(&self, comp: Component, [x, y, _]: P3) -> Result<f64> {
        let b = self.p.amplitude;
        Ok(match (comp, self.chord(y)) {
            (Component::Ay, Some((l, r))) => b * (x - l).clamp(0.0, r - l),
            (Component::Bz, Some((l, r))) if within(x, l, r) => b,
            _ => 0.0,
        })
    }

    fn breaks_along(&self, axis: Axis, [x, y, _]: P3) -> Vec<f64> {
        let (s, u, a, h) = (self.p.x_shift, self.p.y_shift, self.p.a, self.height);
        match axis {
            Axis::X => self.chord(y).map(|(l, r)| vec![l, r]).unwrap_or_default(),
            Axis::Y => {
                let mut out = vec![u, u + h];
                for yy in [u + SQRT3 * (x - s), u + SQRT3 * (s + a - x)] {
                    if yy > u && yy < u + h {
                        out.push(yy);
                    }
                }
                out
            }
            Axis::T => Vec::new(),
        }
    }

    fn critical_values(&self, axis: Axis, _: P3) -> Vec<f64> {
        let (s, u, a) = (self.p.x_shift, self.p.y_shift, self.p.a);
        match axis {
            Axis::X => vec![s, s + a / 2.0, s + a],
            Axis::Y => vec![u, u + self.height],
            Axis::T => Vec::new(),
        }
    }

    fn near_discontinuity(&self, [x, y, _]: P3, eps: f64) -> bool {
        let (s, u, a) = (self.p.x_shift, self.p.y_shift, self.p.a);
        let (dx, dy) = (x - s, y - u);
        // Distances to the three edge lines, restricted to the edge segments' slabs.
        let base = dy.abs() < eps && dx > -eps && dx < a + eps;
        let in_slab = dy > -eps && dy < self.height + eps;
        let left = ((SQRT3 * dx - dy) / 2.0).abs() < eps && in_slab;
        let right = ((SQRT3 * (a - dx) - dy) / 2.0).abs() < eps && in_slab;
        base || left || right
    }
}

/// Uniform `E_x = E₀` between the plates `x_lo ≤ x < x_hi`, optionally only
/// for `t_on ≤ t < t_off`. Gauge: `A = 0`, `φ = −E₀(t)·clamp(x − x_lo, 0, w)`.
#[derive(Debug)]
struct Capacitor(CapacitorParams);

impl Capacitor {
    fn on(&self, t: f64) -> bool {
        self.0.t_on.is_none_or(|on| t >= on) && self.0.t_off.is_none_or(|off| t < off)
    }
}

impl FieldModel for Capacitor {
    fn eval(&self, comp: Component, [x, _, t]: P3) -> Result<f64> {
        let p = &self.0;
        if !self.on(t) {
            return Ok(0.0);
        }
        Ok(match comp {
            Component::Phi => -p.e0 * (x - p.x_lo).clamp(0.0, p.x_hi - p.x_lo),
            Component::Ex if within(x, p.x_lo, p.x_hi) => p.e0,
            _ => 0.0,
        })
    }

    fn breaks_along(&self, axis: Axis, _: P3) -> Vec<f64> {
        match axis {
            Axis::X => vec![self.0.x_lo, self.0.x_hi],
            Axis::T => self.0.t_on.into_iter().chain(self.0.t_off).collect(),
            Axis::Y => Vec::new(),
        }
    }

    fn critical_values(&self, axis: Axis, at: P3) -> Vec<f64> {
        self.breaks_along(axis, at)
    }

    fn near_discontinuity(&self, [x, _, t]: P3, eps: f64) -> bool {
        let times: Vec<f64> = self.0.t_on.into_iter().chain(self.0.t_off).collect();
        near(x, &[self.0.x_lo, self.0.x_hi], eps) || near(t, &times, eps)
    }
}

/// Uniform `B_z` inside a disc. Gauge: symmetric about the centre,
/// `A_θ = B₀ s/2` inside and `B₀ R²/(2s)` outside.
#[derive(Debug)]
struct DiscBlob(DiscBlobParams);

impl FieldModel for DiscBlob {
    fn eval(&self, comp: Component, [x, y, _]: P3) -> Result<f64> {
        let p = &self.0;
        let (dx, dy) = (x - p.center[0], y - p.center[1]);
        let s2 = dx * dx + dy * dy;
        let r2 = p.radius * p.radius;
        // A_θ / s, which is regular at the centre.
        let a_over_s = if s2 < r2 { p.amplitude / 2.0 } else { p.amplitude * r2 / (2.0 * s2) };
        Ok(match comp {
            Component::Ax => -a_over_s * dy,
            Component::Ay => a_over_s * dx,
            Component::Bz if s2 < r2 => p.amplitude,
            _ => 0.0,
        })
    }

    fn breaks_along(&self, axis: Axis, at: P3) -> Vec<f64> {
        circle_crossings(self.0.center, self.0.radius, axis, at)
    }

    fn critical_values(&self, axis: Axis, _: P3) -> Vec<f64> {
        match axis {
            Axis::X => vec![self.0.center[0] - self.0.radius, self.0.center[0] + self.0.radius],
            Axis::Y => vec![self.0.center[1] - self.0.radius, self.0.center[1] + self.0.radius],
            Axis::T => Vec::new(),
        }
    }

    fn polar_breaks(&self, origin: [f64; 2], line: PolarLine, _: f64) -> Vec<f64> {
        circle_polar_breaks(self.0.center, self.0.radius, origin, line)
    }

    fn near_discontinuity(&self, [x, y, _]: P3, eps: f64) -> bool {
        let s = (x - self.0.center[0]).hypot(y - self.0.center[1]);
        (s - self.0.radius).abs() < eps
    }
}

/// Where a polar coordinate line about `origin` meets a circle. Angles are
/// returned together with their ±2π images so that any unwrapped angular
/// range sees them.
pub(super) fn circle_polar_breaks(center: [f64; 2], radius: f64, origin: [f64; 2], line: PolarLine) -> Vec<f64> {
    let (dx, dy) = (center[0] - origin[0], center[1] - origin[1]);
    let dist = dx.hypot(dy);
    let theta = dy.atan2(dx);
    let images = |angles: Vec<f64>| -> Vec<f64> {
        angles
            .into_iter()
            .flat_map(|a| [a - 2.0 * PI, a, a + 2.0 * PI])
            .collect()
    };
    match line {
        PolarLine::Ray(phi) => {
            let proj = dx * phi.cos() + dy * phi.sin();
            let disc = proj * proj - dist * dist + radius * radius;
            if disc <= 0.0 {
                return Vec::new();
            }
            let h = disc.sqrt();
            [proj - h, proj + h].into_iter().filter(|&s| s > 0.0).collect()
        }
        PolarLine::Arc(rho) => {
            if dist == 0.0 || rho <= 0.0 {
                return Vec::new();
            }
            let cos = (rho * rho + dist * dist - radius * radius) / (2.0 * rho * dist);
            if cos.abs() >= 1.0 {
                return Vec::new();
            }
            let w = cos.acos();
            images(vec![theta - w, theta + w])
        }
        PolarLine::Tangents => {
            if dist <= radius {
                return Vec::new();
            }
            let w = (radius / dist).asin();
            images(vec![theta - w, theta, theta + w])
        }
    }
}

/// Where the axis-parallel line through `at` crosses a circle in the plane.
pub(super) fn circle_crossings(center: [f64; 2], radius: f64, axis: Axis, at: P3) -> Vec<f64> {
    let (across, c_along, c_across) = match axis {
        Axis::X => (1, center[0], center[1]),
        Axis::Y => (0, center[1], center[0]),
        Axis::T => return Vec::new(),
    };
    let d = at[across] - c_across;
    let disc = radius * radius - d * d;
    if disc > 0.0 {
        let h = disc.sqrt();
        vec![c_along - h, c_along + h]
    } else {
        Vec::new()
    }
}

/// An inaccessible spacetime rectangle `[x_lo, x_hi] × [t_lo, t_hi]` carrying
/// the electric flux `c ∫∫ E dx dt = flux`.
///
/// Gauge: `A = 0`, `φ = V·clamp((x − x_lo)/w, 0, 1)` while `t_lo ≤ t < t_hi`
/// with `V = −flux / (c (t_hi − t_lo))`. Outside the rectangle the potentials
/// are pure gauge; `E_x` reports zero everywhere.
#[derive(Debug)]
struct ElectricAb {
    p: ElectricAbParams,
    c: f64,
}

impl FieldModel for ElectricAb {
    fn eval(&self, comp: Component, [x, _, t]: P3) -> Result<f64> {
        let p = &self.p;
        Ok(match comp {
            Component::Phi if within(t, p.t_lo, p.t_hi) => {
                let v = -p.flux / (self.c * (p.t_hi - p.t_lo));
                v * ((x - p.x_lo) / (p.x_hi - p.x_lo)).clamp(0.0, 1.0)
            }
            _ => 0.0,
        })
    }

    fn breaks_along(&self, axis: Axis, _: P3) -> Vec<f64> {
        match axis {
            Axis::X => vec![self.p.x_lo, self.p.x_hi],
            Axis::T => vec![self.p.t_lo, self.p.t_hi],
            Axis::Y => Vec::new(),
        }
    }

    fn critical_values(&self, axis: Axis, at: P3) -> Vec<f64> {
        self.breaks_along(axis, at)
    }

    fn near_discontinuity(&self, [x, _, t]: P3, eps: f64) -> bool {
        let p = &self.p;
        x > p.x_lo - eps && x < p.x_hi + eps && t > p.t_lo - eps && t < p.t_hi + eps
    }
}

/// Smooth, compactly supported fields plus a global pure-gauge term.
///
/// With `w = 1 − |r − r_c|²/R²` inside the disc and `ψ = R² w⁴`:
/// `A = m(t)(−∂_yψ, ∂_xψ) + ∇χ`, `φ = e₀ w⁴ − (1/c) ∂_tχ`, where
/// `m(t) = b₀ + b₁ t` and `χ = γ sin x cos y (1 + t)`. Hence
/// `B_z = m(t) ∇²ψ` and `E` are confined to the disc for all times while the
/// potentials are non-zero everywhere.
#[derive(Debug)]
struct SmoothBump {
    p: SmoothBumpParams,
    c: f64,
}

impl FieldModel for SmoothBump {
    fn eval(&self, comp: Component, [x, y, t]: P3) -> Result<f64> {
        let p = &self.p;
        let (dx, dy) = (x - p.center[0], y - p.center[1]);
        let r2 = p.radius * p.radius;
        let s = (dx * dx + dy * dy) / r2;
        let w = if s < 1.0 { 1.0 - s } else { 0.0 };
        let w3 = w * w * w;
        let (psi_x, psi_y) = (-8.0 * w3 * dx, -8.0 * w3 * dy);
        let lap = -16.0 * w * w * (1.0 - 4.0 * s);
        let m = p.b0 + p.b1 * t;
        let g = p.gauge;
        let (sx, cx, sy, cy) = (x.sin(), x.cos(), y.sin(), y.cos());
        let c = self.c;
        Ok(match comp {
            Component::Ax => -psi_y * m + g * cx * cy * (1.0 + t),
            Component::Ay => psi_x * m - g * sx * sy * (1.0 + t),
            Component::Phi => p.e0 * w3 * w - g * sx * cy / c,
            Component::Bz => m * lap,
            Component::Ex => 8.0 * w3 * (p.e0 * dx / r2 - p.b1 / c * dy),
            Component::Ey => 8.0 * w3 * (p.e0 * dy / r2 + p.b1 / c * dx),
        })
    }

    fn breaks_along(&self, axis: Axis, at: P3) -> Vec<f64> {
        circle_crossings(self.p.center, self.p.radius, axis, at)
    }

    fn critical_values(&self, axis: Axis, _: P3) -> Vec<f64> {
        let (c, r) = (self.p.center, self.p.radius);
        match axis {
            Axis::X => vec![c[0] - r, c[0] + r],
            Axis::Y => vec![c[1] - r, c[1] + r],
            Axis::T => Vec::new(),
        }
    }
}

/// The vector potential `Φ/(2π r) e_θ` of a flux line; shared by the static
/// solenoid and the retarded model.
pub(super) fn flux_line_potential(center: [f64; 2], a_theta_times_r: f64, [x, y, t]: P3, comp: Component) -> Result<f64> {
    let (dx, dy) = (x - center[0], y - center[1]);
    let r2 = dx * dx + dy * dy;
    if r2 == 0.0 {
        return Err(Error::SingularPoint {
            at: Event([x, y, t]),
            reason: "vector potential of a flux line is singular on the line".into(),
        });
    }
    let k = a_theta_times_r / (2.0 * PI * r2);
    Ok(match comp {
        Component::Ax => -k * dy,
        Component::Ay => k * dx,
        _ => 0.0,
    })
}
