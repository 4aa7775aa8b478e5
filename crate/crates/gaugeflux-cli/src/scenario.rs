//! Scenario files: one JSON document naming a configuration, a list of
//! observation frames and the tasks to run on them.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use gaugeflux::dynamic1d::{NaiveVariant, SpacetimeFrame};
use gaugeflux::fields::{BuiltinConfig, SampleRegion, TabulatedGrid};
use gaugeflux::full3::{ConditionSet, Frame3, Variant};
use gaugeflux::semiclassical::{FringeSetupElectric, FringeSetupMagnetic};
use gaugeflux::static2d::{ObservationFrame, PolarBranch, PolarFrame, PolarPoint};
use gaugeflux::{FieldConfig, PhysicalConstants, QuadratureSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub config: ConfigSpec,
    #[serde(default)]
    pub constants: PhysicalConstants,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default)]
    pub frames: Vec<FrameSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

/// Either a built-in (`name` plus optional `params`) or a tabulated grid file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<PathBuf>,
}

impl ConfigSpec {
    pub fn builtin(config: &BuiltinConfig) -> Self {
        let value = serde_json::to_value(config).expect("built-in configs serialize");
        Self {
            name: Some(config.name().to_string()),
            params: value.get("params").cloned(),
            grid: None,
        }
    }

    /// Relative grid paths are resolved against `base`.
    pub fn build(&self, constants: &PhysicalConstants, base: &Path) -> Result<FieldConfig> {
        match (&self.grid, &self.name) {
            (Some(grid), name) => {
                if self.params.is_some() {
                    bail!("config: `params` cannot be combined with `grid`");
                }
                let path = base.join(grid);
                let label = name.clone().unwrap_or_else(|| grid.display().to_string());
                Ok(TabulatedGrid::load(&path)?.into_config(label))
            }
            (None, Some(name)) => {
                let mut tagged = serde_json::json!({ "name": name });
                if let Some(p) = &self.params {
                    tagged["params"] = p.clone();
                }
                let builtin: BuiltinConfig = serde_path_to_error::deserialize(tagged)
                    .map_err(|e| anyhow!("config `{name}`: {e}"))?;
                Ok(builtin.build(constants)?)
            }
            (None, None) => bail!("config needs either `name` or `grid`"),
        }
    }
}

/// Expand one frame into `count` frames whose observation points fill the
/// given ranges along a Halton sequence. Axes left out keep the frame's value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSpec {
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<[f64; 2]>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaticFrameSpec {
    pub p0: [f64; 2],
    pub p: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_ref: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_ref: Option<f64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub lambda0: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub t: f64,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub multiplicities: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpacetimeFrameSpec {
    /// `[x₀, t₀]`.
    pub p0: [f64; 2],
    /// `[x, t]`.
    pub p: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_ref: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_ref: Option<f64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub lambda0: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub y: f64,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub multiplicities: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FullFrameSpec {
    /// `[x₀, y₀, t₀]`.
    pub p0: [f64; 3],
    /// `[x, y, t]`.
    pub p: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_ref: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_ref: Option<f64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub lambda0: f64,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub multiplicities: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarFrameSpec {
    #[serde(default)]
    pub origin: [f64; 2],
    /// `[ρ₀, φ₀]`.
    pub p0: [f64; 2],
    /// `[ρ, φ]`.
    pub p: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_ref: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_ref: Option<f64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub lambda0: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub t: f64,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub multiplicities: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum FrameSpec {
    Static(StaticFrameSpec),
    Spacetime(SpacetimeFrameSpec),
    Full(FullFrameSpec),
    Polar(PolarFrameSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Static,
    Spacetime,
    Full,
    Polar,
}

impl Dim {
    pub fn name(self) -> &'static str {
        match self {
            Dim::Static => "static (x, y)",
            Dim::Spacetime => "spacetime (x, t)",
            Dim::Full => "full (x, y, t)",
            Dim::Polar => "polar (rho, phi)",
        }
    }
}

/// A frame ready for the solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frame {
    Static(ObservationFrame),
    Spacetime(SpacetimeFrame),
    Full(Frame3),
    Polar(PolarFrame),
}

impl Frame {
    pub fn dim(&self) -> Dim {
        match self {
            Frame::Static(_) => Dim::Static,
            Frame::Spacetime(_) => Dim::Spacetime,
            Frame::Full(_) => Dim::Full,
            Frame::Polar(_) => Dim::Polar,
        }
    }

    /// `([x₀, y₀, t₀], [x, y, t])`; polar frames are reported in Cartesian coordinates.
    pub fn coords(&self) -> ([f64; 3], [f64; 3]) {
        match self {
            Frame::Static(f) => ([f.p0[0], f.p0[1], f.t], [f.p[0], f.p[1], f.t]),
            Frame::Spacetime(f) => ([f.p0[0], f.y, f.p0[1]], [f.p[0], f.y, f.p[1]]),
            Frame::Full(f) => (f.p0, f.p),
            Frame::Polar(f) => {
                let (a, b) = (f.p0.to_cartesian(f.origin), f.p.to_cartesian(f.origin));
                ([a[0], a[1], f.t], [b[0], b[1], f.t])
            }
        }
    }
}

// Radical inverse in base `b`.
fn halton(mut i: usize, b: usize) -> f64 {
    let (mut f, mut r) = (1.0, 0.0);
    while i > 0 {
        f /= b as f64;
        r += f * (i % b) as f64;
        i /= b;
    }
    r
}

fn lerp(range: Option<[f64; 2]>, u: f64, keep: f64) -> f64 {
    range.map_or(keep, |[lo, hi]| lo + (hi - lo) * u)
}

impl SampleSpec {
    fn check(&self, allowed: &[&str]) -> Result<()> {
        if self.count == 0 {
            bail!("sample.count must be at least 1");
        }
        for (axis, r) in [("x", self.x), ("y", self.y), ("t", self.t)] {
            match r {
                Some([lo, hi]) if !(lo.is_finite() && hi.is_finite() && lo <= hi) => {
                    bail!("sample.{axis} must be an ordered finite range")
                }
                Some(_) if !allowed.contains(&axis) => bail!("sample.{axis} is not an axis of this frame"),
                _ => {}
            }
        }
        Ok(())
    }

    // Points 1..=count of the (2, 3, 5) Halton sequence; index 0 is the corner.
    fn points(&self, keep: [f64; 3]) -> Vec<[f64; 3]> {
        (1..=self.count)
            .map(|i| {
                [
                    lerp(self.x, halton(i, 2), keep[0]),
                    lerp(self.y, halton(i, 3), keep[1]),
                    lerp(self.t, halton(i, 5), keep[2]),
                ]
            })
            .collect()
    }
}

impl FrameSpec {
    pub fn dim(&self) -> Dim {
        match self {
            FrameSpec::Static(_) => Dim::Static,
            FrameSpec::Spacetime(_) => Dim::Spacetime,
            FrameSpec::Full(_) => Dim::Full,
            FrameSpec::Polar(_) => Dim::Polar,
        }
    }

    /// The frame itself, or its sampled copies.
    pub fn expand(&self) -> Result<Vec<Frame>> {
        match self {
            FrameSpec::Static(s) => {
                let base = |p: [f64; 2]| {
                    let mut f = ObservationFrame::new(s.p0, p).with_lambda0(s.lambda0).at_time(s.t);
                    f.x_ref = s.x_ref.unwrap_or(f.x_ref);
                    f.y_ref = s.y_ref.unwrap_or(f.y_ref);
                    f.multiplicities = s.multiplicities;
                    Frame::Static(f)
                };
                Ok(match &s.sample {
                    None => vec![base(s.p)],
                    Some(sm) => {
                        sm.check(&["x", "y"])?;
                        sm.points([s.p[0], s.p[1], 0.0]).into_iter().map(|q| base([q[0], q[1]])).collect()
                    }
                })
            }
            FrameSpec::Spacetime(s) => {
                let base = |p: [f64; 2]| {
                    let mut f = SpacetimeFrame::new(s.p0, p).with_lambda0(s.lambda0);
                    f.x_ref = s.x_ref.unwrap_or(f.x_ref);
                    f.t_ref = s.t_ref.unwrap_or(f.t_ref);
                    f.y = s.y;
                    f.multiplicities = s.multiplicities;
                    Frame::Spacetime(f)
                };
                Ok(match &s.sample {
                    None => vec![base(s.p)],
                    Some(sm) => {
                        sm.check(&["x", "t"])?;
                        sm.points([s.p[0], 0.0, s.p[1]]).into_iter().map(|q| base([q[0], q[2]])).collect()
                    }
                })
            }
            FrameSpec::Full(s) => {
                let base = |p: [f64; 3]| {
                    let mut f = Frame3::new(s.p0, p).with_lambda0(s.lambda0);
                    f.x_ref = s.x_ref.unwrap_or(f.x_ref);
                    f.y_ref = s.y_ref.unwrap_or(f.y_ref);
                    f.multiplicities = s.multiplicities;
                    Frame::Full(f)
                };
                Ok(match &s.sample {
                    None => vec![base(s.p)],
                    Some(sm) => {
                        sm.check(&["x", "y", "t"])?;
                        sm.points(s.p).into_iter().map(base).collect()
                    }
                })
            }
            FrameSpec::Polar(s) => {
                let mut f = PolarFrame::new(
                    s.origin,
                    PolarPoint::new(s.p0[0], s.p0[1])?,
                    PolarPoint::new(s.p[0], s.p[1])?,
                )
                .with_lambda0(s.lambda0);
                f.rho_ref = s.rho_ref.unwrap_or(f.rho_ref);
                f.phi_ref = s.phi_ref.unwrap_or(f.phi_ref);
                f.t = s.t;
                f.multiplicities = s.multiplicities;
                Ok(vec![Frame::Polar(f)])
            }
        }
    }
}

/// Condition functions for the full solutions; scenario files can only pick
/// the built-in choices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conditions {
    Zero,
    #[default]
    Reference,
}

impl Conditions {
    pub fn set(self) -> ConditionSet {
        match self {
            Conditions::Zero => ConditionSet::zero(),
            Conditions::Reference => ConditionSet::reference(),
        }
    }
}

/// Solutions whose defining PDEs `verify` can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Solution {
    Lambda1,
    Lambda2,
    Lambda3,
    Lambda4,
    Naive,
    NaiveInitialPoint,
    Full1,
    Full2,
    Full4,
    Fin,
}

impl Solution {
    pub fn dim(self) -> Dim {
        match self {
            Solution::Lambda1 | Solution::Lambda2 => Dim::Static,
            Solution::Lambda3 | Solution::Lambda4 | Solution::Naive | Solution::NaiveInitialPoint => Dim::Spacetime,
            Solution::Full1 | Solution::Full2 | Solution::Full4 | Solution::Fin => Dim::Full,
        }
    }

    pub fn variant(self) -> Option<Variant> {
        match self {
            Solution::Full1 => Some(Variant::Full1),
            Solution::Full2 => Some(Variant::Full2),
            Solution::Full4 => Some(Variant::Full4),
            Solution::Fin => Some(Variant::Fin),
            _ => None,
        }
    }

    pub fn name(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    }
}

fn default_step() -> f64 {
    1e-4
}

fn default_tol() -> f64 {
    1e-6
}

fn default_cancel_tol() -> f64 {
    1e-8
}

fn default_samples() -> usize {
    10
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskSpec {
    /// Finite-difference check of the potential/field relations over a region.
    Consistency {
        region: SampleRegion,
        #[serde(default = "default_samples")]
        samples: usize,
        #[serde(default = "default_tol")]
        tol: f64,
    },
    Lambda1 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
    Lambda2 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
    Lambda3 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
    Lambda4 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
    Naive {
        #[serde(default)]
        variant: NaiveVariant,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
    Polar {
        branch: PolarBranch,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
    Full {
        variant: Variant,
        #[serde(default)]
        conditions: Conditions,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
    /// `Λ₁ − Λ₂` (or `Λ₄ − Λ₃`) without multiplicity constants, against the
    /// enclosed inaccessible flux.
    Cancel {
        #[serde(default = "default_cancel_tol")]
        tol: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
    Multiplicities {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
    /// `full2 − fin` at each listed observation time, against `Φ(t₀)`.
    VankampenSweep {
        t: Vec<f64>,
        #[serde(default = "default_tol")]
        tol: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
    FringeMagnetic {
        setup: FringeSetupMagnetic,
    },
    FringeElectric {
        setup: FringeSetupElectric,
    },
    Verify {
        solution: Solution,
        #[serde(default = "default_step")]
        step: f64,
        #[serde(default = "default_tol")]
        tol: f64,
        #[serde(default)]
        conditions: Conditions,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<usize>>,
    },
}

impl TaskSpec {
    pub fn label(&self) -> String {
        match self {
            TaskSpec::Consistency { .. } => "consistency".into(),
            TaskSpec::Lambda1 { .. } => "lambda1".into(),
            TaskSpec::Lambda2 { .. } => "lambda2".into(),
            TaskSpec::Lambda3 { .. } => "lambda3".into(),
            TaskSpec::Lambda4 { .. } => "lambda4".into(),
            TaskSpec::Naive { variant, .. } => match variant {
                NaiveVariant::Observation => "naive".into(),
                NaiveVariant::InitialPoint => "naive:initial-point".into(),
            },
            TaskSpec::Polar { branch, .. } => match branch {
                PolarBranch::First => "polar:first".into(),
                PolarBranch::Second => "polar:second".into(),
            },
            TaskSpec::Full { variant, .. } => format!("full:{}", Solution::from(*variant).name()),
            TaskSpec::Cancel { .. } => "cancel".into(),
            TaskSpec::Multiplicities { .. } => "multiplicities".into(),
            TaskSpec::VankampenSweep { .. } => "vankampen-sweep".into(),
            TaskSpec::FringeMagnetic { .. } => "fringe-magnetic".into(),
            TaskSpec::FringeElectric { .. } => "fringe-electric".into(),
            TaskSpec::Verify { solution, .. } => format!("verify:{}", solution.name()),
        }
    }

    /// Tasks whose pass/fail flags decide the exit status.
    pub fn is_verification(&self) -> bool {
        matches!(
            self,
            TaskSpec::Consistency { .. }
                | TaskSpec::Cancel { .. }
                | TaskSpec::VankampenSweep { .. }
                | TaskSpec::Verify { .. }
        )
    }

    /// Frame dimensionalities the task accepts; empty for frame-less tasks.
    pub fn dims(&self) -> &'static [Dim] {
        match self {
            TaskSpec::Consistency { .. } | TaskSpec::FringeMagnetic { .. } | TaskSpec::FringeElectric { .. } => &[],
            TaskSpec::Lambda1 { .. } | TaskSpec::Lambda2 { .. } => &[Dim::Static],
            TaskSpec::Lambda3 { .. } | TaskSpec::Lambda4 { .. } | TaskSpec::Naive { .. } => &[Dim::Spacetime],
            TaskSpec::Polar { .. } => &[Dim::Polar],
            TaskSpec::Full { .. } | TaskSpec::VankampenSweep { .. } => &[Dim::Full],
            TaskSpec::Cancel { .. } => &[Dim::Static, Dim::Spacetime],
            TaskSpec::Multiplicities { .. } => &[Dim::Static, Dim::Spacetime, Dim::Full],
            TaskSpec::Verify { solution, .. } => match solution.dim() {
                Dim::Static => &[Dim::Static],
                Dim::Spacetime => &[Dim::Spacetime],
                _ => &[Dim::Full],
            },
        }
    }

    pub fn frame_selection(&self) -> Option<&[usize]> {
        match self {
            TaskSpec::Lambda1 { frames }
            | TaskSpec::Lambda2 { frames }
            | TaskSpec::Lambda3 { frames }
            | TaskSpec::Lambda4 { frames }
            | TaskSpec::Naive { frames, .. }
            | TaskSpec::Polar { frames, .. }
            | TaskSpec::Full { frames, .. }
            | TaskSpec::Cancel { frames, .. }
            | TaskSpec::Multiplicities { frames }
            | TaskSpec::VankampenSweep { frames, .. }
            | TaskSpec::Verify { frames, .. } => frames.as_deref(),
            _ => None,
        }
    }
}

impl From<Variant> for Solution {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Full1 => Solution::Full1,
            Variant::Full2 => Solution::Full2,
            Variant::Full4 => Solution::Full4,
            Variant::Fin => Solution::Fin,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "yes")]
    pub table: bool,
    /// Relative to the scenario file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    /// Relative to the scenario file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            table: true,
            csv: None,
            json: None,
        }
    }
}

impl Scenario {
    /// Parse JSON text; errors name the offending field path and line.
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let s: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            anyhow!("scenario field `{path}`: {}", e.into_inner())
        })?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenarios serialize")
    }

    /// Expanded frames, in file order.
    pub fn frames(&self) -> Result<Vec<Vec<Frame>>> {
        self.frames
            .iter()
            .enumerate()
            .map(|(i, f)| f.expand().with_context(|| format!("frames[{i}]")))
            .collect()
    }

    /// Structural checks: dimensionality of every task against its frames.
    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        self.quadrature.validate()?;
        let dims: Vec<Dim> = self.frames.iter().map(FrameSpec::dim).collect();
        for (i, task) in self.tasks.iter().enumerate() {
            let accepted = task.dims();
            if accepted.is_empty() {
                continue;
            }
            let selected: Vec<usize> = match task.frame_selection() {
                Some(sel) => sel.to_vec(),
                None => (0..dims.len()).collect(),
            };
            if selected.is_empty() {
                bail!("tasks[{i}] ({}): no frames to run on", task.label());
            }
            for k in selected {
                let Some(d) = dims.get(k) else {
                    bail!("tasks[{i}] ({}): frame index {k} out of range", task.label());
                };
                if !accepted.contains(d) {
                    bail!(
                        "tasks[{i}] ({}): dimensionality mismatch, frames[{k}] is {} but the task needs {}",
                        task.label(),
                        d.name(),
                        accepted.iter().map(|d| d.name()).collect::<Vec<_>>().join(" or ")
                    );
                }
            }
        }
        Ok(())
    }
}
