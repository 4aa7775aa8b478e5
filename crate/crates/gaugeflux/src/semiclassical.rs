//! Double-slit fringe shift: the Aharonov–Bohm phase against the phase from
//! the classical deflection in a thin field region, magnetic and electric.
//!
//! Everything is written in terms of the flux quantum `Φ₀ = hc/e` and the
//! de Broglie wavelength, so `h` and `e` never appear separately. The screen
//! axis is positive upward; a positive `E` points upward too.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::PhysicalConstants;

/// Ratio above which the thin-region approximation is flagged.
pub const SMALL_DEFLECTION_RATIO: f64 = 0.1;

/// A thin strip of magnetic field `B` and width `W` right behind the slits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FringeSetupMagnetic {
    pub q_over_e: f64,
    pub b: f64,
    pub w: f64,
    pub d: f64,
    pub l: f64,
    pub lambda_db: f64,
    #[serde(default)]
    pub constants: PhysicalConstants,
}

/// A transverse electric pulse of strength `E` and duration `T` acting while
/// the particle, moving at speed `v`, is right behind the slits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FringeSetupElectric {
    pub q_over_e: f64,
    pub e: f64,
    pub t: f64,
    pub d: f64,
    pub l: f64,
    pub lambda_db: f64,
    pub v: f64,
    #[serde(default)]
    pub constants: PhysicalConstants,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FringeResult {
    /// Aharonov–Bohm phase difference between the two slit paths, radians.
    pub phi_ab: f64,
    /// Displacement of the central fringe on the screen.
    pub x_c: f64,
    /// Phase difference implied by the displacement, radians.
    pub phi_semi: f64,
    /// `phi_ab + phi_semi`; zero up to rounding.
    pub sum: f64,
    /// Approximation-validity warnings.
    pub warnings: Vec<String>,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be finite, got {v}")))
    }
}

fn result(phi_ab: f64, x_c: f64, d: f64, l: f64, lambda: f64, warnings: Vec<String>) -> FringeResult {
    let phi_semi = 2.0 * PI * d * x_c / (lambda * l);
    FringeResult {
        phi_ab,
        x_c,
        phi_semi,
        sum: phi_ab + phi_semi,
        warnings,
    }
}

pub fn magnetic_fringe(s: &FringeSetupMagnetic) -> Result<FringeResult> {
    s.constants.validate()?;
    finite("q/e", s.q_over_e)?;
    finite("B", s.b)?;
    for (n, v) in [("W", s.w), ("d", s.d), ("L", s.l), ("wavelength", s.lambda_db)] {
        positive(n, v)?;
    }
    let mut warnings = Vec::new();
    if s.w / s.l > SMALL_DEFLECTION_RATIO {
        warnings.push(format!("W/L = {:.3} exceeds {SMALL_DEFLECTION_RATIO}; the thin-strip approximation is poor", s.w / s.l));
    }
    let phi0 = s.constants.flux_quantum;
    let flux = s.b * s.w * s.d;
    let phi_ab = 2.0 * PI * s.q_over_e * flux / phi0;
    let x_c = -s.q_over_e * s.b * s.w * s.l * s.lambda_db / phi0;
    Ok(result(phi_ab, x_c, s.d, s.l, s.lambda_db, warnings))
}

pub fn electric_fringe(s: &FringeSetupElectric) -> Result<FringeResult> {
    s.constants.validate()?;
    finite("q/e", s.q_over_e)?;
    finite("E", s.e)?;
    if !(s.t >= 0.0 && s.t.is_finite()) {
        return Err(Error::invalid(format!("pulse duration must be non-negative, got {}", s.t)));
    }
    for (n, v) in [("d", s.d), ("L", s.l), ("wavelength", s.lambda_db), ("v", s.v)] {
        positive(n, v)?;
    }
    let mut warnings = Vec::new();
    let ratio = s.t * s.v / s.l;
    if ratio > SMALL_DEFLECTION_RATIO {
        warnings.push(format!("Tv/L = {ratio:.3} exceeds {SMALL_DEFLECTION_RATIO}; the short-pulse approximation is poor"));
    }
    let (c, phi0) = (s.constants.c, s.constants.flux_quantum);
    let phi_ab = -2.0 * PI * s.q_over_e * c * s.t * s.e * s.d / phi0;
    let x_c = s.q_over_e * c * s.e * s.t * s.l * s.lambda_db / phi0;
    Ok(result(phi_ab, x_c, s.d, s.l, s.lambda_db, warnings))
}
