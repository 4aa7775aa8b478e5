//! Result types shared by all solvers.

use serde::{Deserialize, Serialize};

/// Which solution formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Static, path up from the initial point then across (`+∫∫B_z`, `g(x)`).
    Lambda1,
    /// Static, path across then up (`−∫∫B_z`, `h(y)`).
    Lambda2,
    /// `(x, t)`: potentials along `x₀` in time then across in `x` (`+c∫∫E`, `g(x)`).
    Lambda3,
    /// `(x, t)`: across at `t₀`, then along `x` in time (`−c∫∫E`, `ĝ(t)`).
    Lambda4,
    /// The naive potential-integral formula with `A` at `t` and `φ` at `x`.
    Naive,
    /// The naive formula with `A` at `t₀` and `φ` at `x₀`.
    NaiveInitialPoint,
    Full1,
    Full2,
    Full4,
    Fin,
    Polar1,
    Polar2,
}

/// Orientation of a two-segment path from the initial to the observation
/// point, read as the first half of a loop around the observation rectangle.
///
/// "Up first" (second coordinate first) is clockwise for a rectangle with
/// positive extents; "across first" is counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sense {
    Clockwise,
    Counterclockwise,
}

/// A gauge-function value split into its ingredients.
///
/// `lambda = lambda0 + dirac_part + nonlocal_part + gauge_fix_part +
/// multiplicity_part`, summed in that order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeSolution {
    pub lambda: f64,
    pub lambda0: f64,
    /// Line integrals of the potentials.
    pub dirac_part: f64,
    /// Double integrals of the field differences.
    pub nonlocal_part: f64,
    /// Value of `g`, `h`, `ĝ`, `G`, `Ĝ`, `F` as applicable.
    pub gauge_fix_part: f64,
    /// Constant offset for multiply connected regions.
    pub multiplicity_part: f64,
    pub branch: Branch,
    /// Orientation of the potential path.
    pub potential_sense: Option<Sense>,
    /// Orientation of the path along which the electric-field integrals run.
    pub field_sense: Option<Sense>,
}

impl GaugeSolution {
    pub(crate) fn assemble(branch: Branch, lambda0: f64, dirac: f64, nonlocal: f64, gauge_fix: f64, multiplicity: f64) -> Self {
        Self {
            lambda: lambda0 + dirac + nonlocal + gauge_fix + multiplicity,
            lambda0,
            dirac_part: dirac,
            nonlocal_part: nonlocal,
            gauge_fix_part: gauge_fix,
            multiplicity_part: multiplicity,
            branch,
            potential_sense: None,
            field_sense: None,
        }
    }

    pub(crate) fn with_senses(mut self, potential: Option<Sense>, field: Option<Sense>) -> Self {
        self.potential_sense = potential;
        self.field_sense = field;
        self
    }

    /// The phase `q Λ / ħc`.
    pub fn phase(&self, constants: &crate::PhysicalConstants) -> f64 {
        constants.phase(self.lambda)
    }
}

/// Finite-difference residuals of the defining PDEs at one observation event.
///
/// `residual_x = |∂Λ/∂x − A_x|`, `residual_y = |∂Λ/∂y − A_y|`,
/// `residual_t = |−(1/c) ∂Λ/∂t − φ|`; components not part of the system
/// being checked are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residual_x: Option<f64>,
    pub residual_y: Option<f64>,
    pub residual_t: Option<f64>,
    pub tol: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub(crate) fn new(residual_x: Option<f64>, residual_y: Option<f64>, residual_t: Option<f64>, tol: f64) -> Self {
        let worst = [residual_x, residual_y, residual_t]
            .into_iter()
            .flatten()
            .fold(0.0, f64::max);
        let finite = [residual_x, residual_y, residual_t].into_iter().flatten().all(f64::is_finite);
        Self {
            residual_x,
            residual_y,
            residual_t,
            tol,
            pass: finite && worst <= tol,
        }
    }

    pub fn max_residual(&self) -> f64 {
        [self.residual_x, self.residual_y, self.residual_t]
            .into_iter()
            .flatten()
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts_sum_to_lambda() {
        let s = GaugeSolution::assemble(Branch::Lambda1, 0.5, 1.0, -2.0, 0.25, 3.0);
        assert_eq!(s.lambda, 0.5 + 1.0 - 2.0 + 0.25 + 3.0);
    }

    #[test]
    fn residual_pass_flag() {
        assert!(ResidualReport::new(Some(1e-7), None, Some(2e-7), 1e-6).pass);
        assert!(!ResidualReport::new(Some(1e-5), None, None, 1e-6).pass);
        assert!(!ResidualReport::new(Some(f64::NAN), None, None, 1e-6).pass);
    }
}
