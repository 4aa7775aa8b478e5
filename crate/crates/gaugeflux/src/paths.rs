//! Integration primitives shared by the solvers: axis-parallel line integrals,
//! iterated rectangle integrals and two-segment corner paths, all with the
//! configuration's breakpoints wired in.

use crate::error::{Error, Event, Result};
use crate::fields::{Axis, Component, FieldConfig, P3};
use crate::quadrature::{Integrator, QuadratureSpec};
use crate::solution::Sense;

/// Sampling tolerance for independence and field-free checks (flux units).
pub(crate) const INDEPENDENCE_TOL: f64 = 1e-6;
/// Largest field value accepted as "zero" at an observation event.
pub(crate) const OBSERVATION_TOL: f64 = 1e-9;
/// Number of samples along validation segments.
pub(crate) const SEGMENT_SAMPLES: usize = 9;

/// Which leg of a two-segment path is traversed first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Corner {
    /// Along the second coordinate at the initial first coordinate, then across.
    UpFirst,
    /// Along the first coordinate at the initial second coordinate, then up.
    AcrossFirst,
}

impl Corner {
    pub(crate) fn sense(self) -> Sense {
        match self {
            Corner::UpFirst => Sense::Clockwise,
            Corner::AcrossFirst => Sense::Counterclockwise,
        }
    }
}

pub(crate) type Scalar<'a> = &'a dyn Fn(P3) -> Result<f64>;

pub(crate) struct Paths<'a> {
    pub cfg: &'a FieldConfig,
    pub q: Integrator,
}

fn with(base: P3, axis: Axis, v: f64) -> P3 {
    let mut p = base;
    p[axis.index()] = v;
    p
}

impl<'a> Paths<'a> {
    pub fn new(cfg: &'a FieldConfig, spec: &QuadratureSpec) -> Result<Self> {
        Ok(Self {
            cfg,
            q: Integrator::new(spec)?,
        })
    }

    pub fn comp(&self, c: Component) -> impl Fn(P3) -> Result<f64> + 'a {
        let cfg = self.cfg;
        move |p| cfg.eval(c, p)
    }

    /// `∫_a^b f` along `axis` on the line through `base`.
    pub fn line(&self, f: Scalar<'_>, axis: Axis, base: P3, a: f64, b: f64) -> Result<f64> {
        let breaks = self.cfg.breaks_along(axis, base);
        self.q.integrate(|s| f(with(base, axis, s)), a, b, &breaks)
    }

    /// `∫_c^d d(outer) ∫_a^b d(inner) f` in the plane through `base`.
    pub fn surface(&self, f: Scalar<'_>, inner: Axis, outer: Axis, base: P3, (a, b): (f64, f64), (c, d): (f64, f64)) -> Result<f64> {
        if a == b || c == d {
            return Ok(0.0);
        }
        let mut outer_breaks = self.cfg.critical_values(outer, with(base, inner, a));
        outer_breaks.extend(self.cfg.critical_values(outer, with(base, inner, b)));
        outer_breaks.extend(self.cfg.breaks_along(outer, with(base, inner, a)));
        outer_breaks.extend(self.cfg.breaks_along(outer, with(base, inner, b)));
        self.q.integrate_rect(
            |u, v| f(with(with(base, inner, u), outer, v)),
            (a, b),
            (c, d),
            |v| self.cfg.breaks_along(inner, with(base, outer, v)),
            &outer_breaks,
        )
    }

    /// Line integral of the planar vector field `(fu, fv)` from `(u0, v0)` to
    /// `(u, v)` along the two-segment path selected by `corner`.
    #[allow(clippy::too_many_arguments)]
    pub fn corner(
        &self,
        fu: Scalar<'_>,
        fv: Scalar<'_>,
        (ua, va): (Axis, Axis),
        base: P3,
        (u0, v0): (f64, f64),
        (u, v): (f64, f64),
        corner: Corner,
    ) -> Result<f64> {
        let at = |uu: f64, vv: f64| with(with(base, ua, uu), va, vv);
        Ok(match corner {
            Corner::UpFirst => self.line(fv, va, at(u0, v0), v0, v)? + self.line(fu, ua, at(u0, v), u0, u)?,
            Corner::AcrossFirst => self.line(fu, ua, at(u0, v0), u0, u)? + self.line(fv, va, at(u, v0), v0, v)?,
        })
    }

    /// Time integral of a corner-path line integral of `(fu, fv)`:
    /// `∫_{t0}^{t} dt′ ∮_{corner} (fu, fv)·dr` with the spatial integral innermost.
    #[allow(clippy::too_many_arguments)]
    pub fn corner_in_time(
        &self,
        fu: Scalar<'_>,
        fv: Scalar<'_>,
        (ua, va): (Axis, Axis),
        base: P3,
        (u0, v0): (f64, f64),
        (u, v): (f64, f64),
        (t0, t): (f64, f64),
        corner: Corner,
    ) -> Result<f64> {
        let at = |uu: f64, vv: f64| with(with(base, ua, uu), va, vv);
        let ta = Axis::T;
        Ok(match corner {
            Corner::UpFirst => {
                self.surface(fv, va, ta, at(u0, v0), (v0, v), (t0, t))? + self.surface(fu, ua, ta, at(u0, v), (u0, u), (t0, t))?
            }
            Corner::AcrossFirst => {
                self.surface(fu, ua, ta, at(u0, v0), (u0, u), (t0, t))? + self.surface(fv, va, ta, at(u, v0), (v0, v), (t0, t))?
            }
        })
    }

    /// Largest `|f|` over equispaced samples of the segment from `a` to `b`
    /// along `axis` through `base`, times the segment length, with the worst
    /// sample.
    pub fn segment_bound(&self, f: Scalar<'_>, axis: Axis, base: P3, a: f64, b: f64) -> Result<(f64, P3)> {
        let len = (b - a).abs();
        let mut worst = (0.0, with(base, axis, b));
        for k in 0..SEGMENT_SAMPLES {
            let s = a + (b - a) * k as f64 / (SEGMENT_SAMPLES - 1) as f64;
            let p = with(base, axis, s);
            let v = f(p)?.abs() * len;
            if v > worst.0 {
                worst = (v, p);
            }
        }
        Ok(worst)
    }

    /// Fail with a decomposition error if `f` is not negligible on the segment.
    #[allow(clippy::too_many_arguments)]
    pub fn require_free_segment(&self, f: Scalar<'_>, axis: Axis, base: P3, a: f64, b: f64, what: &str, label: &str) -> Result<()> {
        let (bound, at) = self.segment_bound(f, axis, base, a, b)?;
        if bound > INDEPENDENCE_TOL {
            let [x, y, t] = at;
            return Err(Error::unsupported(format!(
                "{what}: derivative of the bracket reaches {bound:.3e} > {INDEPENDENCE_TOL:e} at sampled {label} \
                 (field sampled at x={x}, y={y}, t={t})"
            )));
        }
        Ok(())
    }
}

/// Fail unless every listed field component vanishes at `p`.
pub(crate) fn require_field_free(cfg: &FieldConfig, comps: &[Component], p: P3) -> Result<()> {
    for &c in comps {
        let v = cfg.eval(c, p)?;
        if v.abs() > OBSERVATION_TOL {
            return Err(Error::FieldAtObservation {
                field: c.name(),
                value: v,
                at: Event(p),
            });
        }
    }
    Ok(())
}

pub(crate) fn require_finite(what: &str, values: &[f64]) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{what}: coordinates must be finite")))
    }
}

/// Central difference of `f` with step `h`.
pub(crate) fn central<F: Fn(f64) -> Result<f64>>(f: F, x: f64, h: f64) -> Result<f64> {
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}

pub(crate) fn check_step(step: f64, tol: f64) -> Result<()> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::invalid(format!("finite-difference step must be positive, got {step}")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}
