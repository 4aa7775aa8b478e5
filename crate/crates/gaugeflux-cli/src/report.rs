//! Run results and their CSV, JSON and plain-text renderings.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use gaugeflux::{GaugeSolution, ResidualReport};
use serde::{Deserialize, Serialize};

/// One output line: a (task, frame) pair, or a single line for frame-less tasks.
///
/// `value` and `value2` are task specific: the difference and the enclosed
/// flux for `cancel`, the two ledger constants for `multiplicities`, `ΔΛ`
/// and `Φ(t₀)` for `vankampen-sweep` (whose `residual_t` holds the induction
/// identity residual), the two maxima for `consistency`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub task: String,
    pub x0: Option<f64>,
    pub y0: Option<f64>,
    pub t0: Option<f64>,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub t: Option<f64>,
    pub lambda: Option<f64>,
    pub dirac_part: Option<f64>,
    pub nonlocal_part: Option<f64>,
    pub gauge_fix_part: Option<f64>,
    pub multiplicity_part: Option<f64>,
    pub residual_x: Option<f64>,
    pub residual_y: Option<f64>,
    pub residual_t: Option<f64>,
    pub value: Option<f64>,
    pub value2: Option<f64>,
    pub phi_ab: Option<f64>,
    pub x_c: Option<f64>,
    pub phi_semi: Option<f64>,
    pub sum: Option<f64>,
    pub pass: Option<bool>,
    pub error: Option<String>,
}

/// CSV header, in column order.
pub const CSV_COLUMNS: [&str; 23] = [
    "task",
    "x0",
    "y0",
    "t0",
    "x",
    "y",
    "t",
    "lambda",
    "dirac_part",
    "nonlocal_part",
    "gauge_fix_part",
    "multiplicity_part",
    "residual_x",
    "residual_y",
    "residual_t",
    "value",
    "value2",
    "phi_ab",
    "x_c",
    "phi_semi",
    "sum",
    "pass",
    "error",
];

impl Row {
    pub fn new(task: &str, coords: Option<([f64; 3], [f64; 3])>) -> Self {
        let mut r = Row {
            task: task.to_string(),
            ..Row::default()
        };
        if let Some(([x0, y0, t0], [x, y, t])) = coords {
            (r.x0, r.y0, r.t0, r.x, r.y, r.t) = (Some(x0), Some(y0), Some(t0), Some(x), Some(y), Some(t));
        }
        r
    }

    pub fn with_solution(mut self, s: &GaugeSolution) -> Self {
        self.lambda = Some(s.lambda);
        self.dirac_part = Some(s.dirac_part);
        self.nonlocal_part = Some(s.nonlocal_part);
        self.gauge_fix_part = Some(s.gauge_fix_part);
        self.multiplicity_part = Some(s.multiplicity_part);
        self
    }

    pub fn with_residuals(mut self, r: &ResidualReport) -> Self {
        self.residual_x = r.residual_x;
        self.residual_y = r.residual_y;
        self.residual_t = r.residual_t;
        self.pass = Some(r.pass);
        self
    }

    fn cells(&self) -> Vec<String> {
        let f = |v: Option<f64>| v.map(|v| format!("{v:e}")).unwrap_or_default();
        vec![
            self.task.clone(),
            f(self.x0),
            f(self.y0),
            f(self.t0),
            f(self.x),
            f(self.y),
            f(self.t),
            f(self.lambda),
            f(self.dirac_part),
            f(self.nonlocal_part),
            f(self.gauge_fix_part),
            f(self.multiplicity_part),
            f(self.residual_x),
            f(self.residual_y),
            f(self.residual_t),
            f(self.value),
            f(self.value2),
            f(self.phi_ab),
            f(self.x_c),
            f(self.phi_semi),
            f(self.sum),
            self.pass.map(|p| p.to_string()).unwrap_or_default(),
            self.error.clone().unwrap_or_default(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub task: String,
    /// Whether the task's outcome counts towards the exit status.
    pub verification: bool,
    pub rows: Vec<Row>,
    /// Set when the task could not run at all.
    pub error: Option<String>,
    pub warnings: Vec<String>,
    /// For verification tasks: every row passed and nothing errored.
    pub pass: Option<bool>,
    /// Wall-clock time; the only field that varies between identical runs.
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub config: String,
    pub tasks: Vec<TaskReport>,
    /// All verification tasks passed.
    pub pass: bool,
}

impl Report {
    pub fn rows(&self) -> impl Iterator<Item = &Row> {
        self.tasks.iter().flat_map(|t| t.rows.iter())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
        w.write_record(CSV_COLUMNS)?;
        for row in self.rows() {
            w.write_record(row.cells())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "scenario {} (config {}): {verdict}", self.scenario, self.config);
        let g = |v: Option<f64>| v.map(|v| format!("{v:>13.6e}")).unwrap_or_else(|| format!("{:>13}", "-"));
        for t in &self.tasks {
            let status = match t.pass {
                Some(true) => " [pass]",
                Some(false) => " [FAIL]",
                None => "",
            };
            let _ = writeln!(out, "\n== {}{status}  ({:.1} ms)", t.task, t.elapsed_ms);
            if let Some(e) = &t.error {
                let _ = writeln!(out, "   error: {e}");
            }
            for w in &t.warnings {
                let _ = writeln!(out, "   warning: {w}");
            }
            if t.rows.is_empty() {
                continue;
            }
            let _ = writeln!(
                out,
                "   {:>27} {:>13} {:>13} {:>13} {:>13} {:>13} {:>13}",
                "observation (x, y, t)", "lambda", "nonlocal", "gauge_fix", "residual", "value", "value2"
            );
            for r in &t.rows {
                let at = match (r.x, r.y, r.t) {
                    (Some(x), Some(y), Some(t)) => format!("({x:7.3}, {y:7.3}, {t:7.3})"),
                    _ => String::new(),
                };
                let residual = [r.residual_x, r.residual_y, r.residual_t]
                    .into_iter()
                    .flatten()
                    .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
                let mark = match r.pass {
                    Some(true) => " ok",
                    Some(false) => " FAIL",
                    None => "",
                };
                let _ = write!(
                    out,
                    "   {at:>27} {} {} {} {} {} {}{mark}",
                    g(r.lambda),
                    g(r.nonlocal_part),
                    g(r.gauge_fix_part),
                    g(residual),
                    g(r.value),
                    g(r.value2)
                );
                if r.phi_ab.is_some() {
                    let _ = write!(out, "  phi_ab {} x_c {} phi_semi {} sum {}", g(r.phi_ab), g(r.x_c), g(r.phi_semi), g(r.sum));
                }
                if let Some(e) = &r.error {
                    let _ = write!(out, "  error: {e}");
                }
                out.push('\n');
            }
        }
        out
    }
}
