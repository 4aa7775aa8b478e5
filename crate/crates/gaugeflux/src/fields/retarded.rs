//! A confined flux whose value is ramped after `t0`, with fields that reach an
//! observer only after the light-travel time.
//!
//! Everything derives from one sharp-front vector potential
//! `A_θ(r, t) = Φ(t − r/c) / (2π r)` with `φ = 0`, so Faraday's law holds by
//! construction and both `E` and `B_z` vanish wherever `c (t − t0) < r`.
//! Ampère's law is not claimed.

use std::f64::consts::PI;

use super::builtin::{circle_crossings, flux_line_potential};
use super::{Axis, Component, FieldModel, FluxProfile, P3};
use crate::error::{Error, Event, Result};

/// Field values of the retarded model at one event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetardedFields {
    pub e_x: f64,
    pub e_y: f64,
    pub b_z: f64,
    /// Azimuthal component `A_θ`.
    pub a_theta: f64,
}

/// `E` and `B_z` of the retarded model at `point` and time `t`.
///
/// `E_θ = B_z = −Φ′(t − r/c) / (2π r c)`; both are exactly zero outside the
/// light cone of the ramp start.
pub fn retarded_flux_fields(profile: &FluxProfile, center: [f64; 2], point: [f64; 2], t: f64, c: f64) -> Result<RetardedFields> {
    if !(c > 0.0) {
        return Err(Error::invalid("speed of light must be positive"));
    }
    let (dx, dy) = (point[0] - center[0], point[1] - center[1]);
    let r = dx.hypot(dy);
    if r == 0.0 {
        return Err(Error::SingularPoint {
            at: Event([point[0], point[1], t]),
            reason: "retarded fields are singular on the flux line".into(),
        });
    }
    let tr = t - r / c;
    let e_theta = -profile.rate(tr) / (2.0 * PI * r * c);
    Ok(RetardedFields {
        e_x: -e_theta * dy / r,
        e_y: e_theta * dx / r,
        b_z: e_theta,
        a_theta: profile.value(tr) / (2.0 * PI * r),
    })
}

/// Evaluator back end for `solenoid_flux` (constant profile) and `retarded_flux`.
#[derive(Debug)]
pub(super) struct RetardedFlux {
    profile: FluxProfile,
    center: [f64; 2],
    c: f64,
}

impl RetardedFlux {
    pub(super) fn new(profile: FluxProfile, center: [f64; 2], c: f64) -> Self {
        Self { profile, center, c }
    }

    fn front_radius(&self, t: f64) -> Option<f64> {
        (self.profile.k != 0.0 && t > self.profile.t0).then(|| self.c * (t - self.profile.t0))
    }
}

impl FieldModel for RetardedFlux {
    fn eval(&self, comp: Component, p: P3) -> Result<f64> {
        let [x, y, t] = p;
        match comp {
            Component::Ax | Component::Ay => {
                let r = (x - self.center[0]).hypot(y - self.center[1]);
                flux_line_potential(self.center, self.profile.value(t - r / self.c), p, comp)
            }
            Component::Phi => Ok(0.0),
            Component::Bz | Component::Ex | Component::Ey => {
                let f = retarded_flux_fields(&self.profile, self.center, [x, y], t, self.c)?;
                Ok(match comp {
                    Component::Bz => f.b_z,
                    Component::Ex => f.e_x,
                    _ => f.e_y,
                })
            }
        }
    }

    fn breaks_along(&self, axis: Axis, at: P3) -> Vec<f64> {
        match axis {
            Axis::T => {
                if self.profile.k == 0.0 {
                    return Vec::new();
                }
                let r = (at[0] - self.center[0]).hypot(at[1] - self.center[1]);
                vec![self.profile.t0 + r / self.c]
            }
            _ => match self.front_radius(at[2]) {
                Some(rf) => {
                    // The radiated field also peaks like 1/r at the flux line.
                    let mut v = circle_crossings(self.center, rf, axis, at);
                    if !v.is_empty() {
                        v.push(self.center[axis.index()]);
                    }
                    v
                }
                None => Vec::new(),
            },
        }
    }

    fn critical_values(&self, axis: Axis, at: P3) -> Vec<f64> {
        let [cx, cy] = self.center;
        match axis {
            // First arrival of the front on lines through `at` along x or y.
            Axis::T if self.profile.k != 0.0 => vec![
                self.profile.t0 + (at[1] - cy).abs() / self.c,
                self.profile.t0 + (at[0] - cx).abs() / self.c,
            ],
            Axis::T => Vec::new(),
            Axis::X | Axis::Y => {
                let c0 = self.center[axis.index()];
                let mut out = vec![c0];
                if let Some(rf) = self.front_radius(at[2]) {
                    out.extend([c0 - rf, c0 + rf]);
                }
                out
            }
        }
    }

    fn near_discontinuity(&self, [x, y, t]: P3, eps: f64) -> bool {
        let r = (x - self.center[0]).hypot(y - self.center[1]);
        r < eps || self.front_radius(t).is_some_and(|rf| (r - rf).abs() < eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RAMP: FluxProfile = FluxProfile { phi0: 1.0, k: 0.5, t0: 0.0 };

    #[test]
    fn outside_light_cone_fields_vanish() {
        let f = retarded_flux_fields(&RAMP, [0.0, 0.0], [5.0, 0.0], 3.0, 1.0).unwrap();
        assert_eq!((f.e_x, f.e_y, f.b_z), (0.0, 0.0, 0.0));
        assert!((f.a_theta - 1.0 / (2.0 * PI * 5.0)).abs() < 1e-15);
    }

    #[test]
    fn static_flux_gives_pure_potential() {
        let stat = FluxProfile::constant(2.0);
        let f = retarded_flux_fields(&stat, [1.0, 1.0], [1.0, 3.0], 10.0, 1.0).unwrap();
        assert_eq!((f.e_x, f.e_y, f.b_z), (0.0, 0.0, 0.0));
        assert!((f.a_theta - 2.0 / (2.0 * PI * 2.0)).abs() < 1e-15);
    }

    #[test]
    fn ramp_inside_light_cone() {
        let k = 0.7;
        let prof = FluxProfile { phi0: 1.0, k, t0: 0.0 };
        let f = retarded_flux_fields(&prof, [0.0, 0.0], [0.0, 1.0], 2.0, 1.0).unwrap();
        let e = f.e_x.hypot(f.e_y);
        assert!((e - k / (2.0 * PI)).abs() < 1e-15);
        assert!((f.b_z + k / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn singular_on_axis() {
        assert!(matches!(
            retarded_flux_fields(&RAMP, [0.0, 0.0], [0.0, 0.0], 1.0, 1.0),
            Err(Error::SingularPoint { .. })
        ));
    }
}
