//! Configurations tabulated on a regular `(x, y, t)` grid.
//!
//! Text format: an optional set of `#` comment lines, a header line
//! `x y t A_x A_y phi B_z E_x E_y`, then one whitespace-separated row per
//! node. Every combination of the distinct `x`, `y`, `t` values must appear
//! exactly once. Interpolation is bilinear in space and linear in time; a
//! single time slice describes a static configuration.

use std::path::Path;
use std::sync::Arc;

use super::{Axis, Component, ConfigKind, FieldConfig, FieldModel, Support, Topology, P3};
use crate::error::{Error, Result};

const HEADER: [&str; 9] = ["x", "y", "t", "A_x", "A_y", "phi", "B_z", "E_x", "E_y"];

#[derive(Debug, Clone)]
pub struct TabulatedGrid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ts: Vec<f64>,
    // [t][y][x][component]
    values: Vec<[f64; 6]>,
}

impl TabulatedGrid {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Grid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Error::Grid("empty grid file".into()))?;
        let cols: Vec<&str> = header.split_whitespace().collect();
        if cols != HEADER {
            return Err(Error::Grid(format!(
                "line {hline}: expected header `{}`, found `{header}`",
                HEADER.join(" ")
            )));
        }
        let mut rows = Vec::new();
        for (n, line) in lines {
            let vals = line
                .split_whitespace()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Grid(format!("line {n}: `{s}`: {e}"))))
                .collect::<Result<Vec<f64>>>()?;
            if vals.len() != 9 {
                return Err(Error::Grid(format!("line {n}: expected 9 columns, found {}", vals.len())));
            }
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(Error::Grid(format!("line {n}: non-finite value")));
            }
            rows.push(vals);
        }
        let axis = |k: usize| {
            let mut v: Vec<f64> = rows.iter().map(|r| r[k]).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v
        };
        let (xs, ys, ts) = (axis(0), axis(1), axis(2));
        if xs.len() < 2 || ys.len() < 2 {
            return Err(Error::Grid("need at least two distinct x and y values".into()));
        }
        let expected = xs.len() * ys.len() * ts.len();
        if rows.len() != expected {
            return Err(Error::Grid(format!(
                "incomplete grid: {} rows for {}x{}x{} nodes",
                rows.len(),
                xs.len(),
                ys.len(),
                ts.len()
            )));
        }
        let mut values = vec![[f64::NAN; 6]; expected];
        let pos = |v: &[f64], x: f64| v.binary_search_by(|p| p.total_cmp(&x)).unwrap();
        for r in &rows {
            let idx = (pos(&ts, r[2]) * ys.len() + pos(&ys, r[1])) * xs.len() + pos(&xs, r[0]);
            if !values[idx][0].is_nan() {
                return Err(Error::Grid(format!("duplicate node ({}, {}, {})", r[0], r[1], r[2])));
            }
            values[idx].copy_from_slice(&r[3..9]);
        }
        Ok(Self { xs, ys, ts, values })
    }

    pub fn into_config(self, name: impl Into<String>) -> FieldConfig {
        FieldConfig::new(
            name,
            ConfigKind::TabulatedGrid,
            Support::EVERYWHERE,
            Topology::SimplyConnected,
            Arc::new(self),
        )
    }

    fn node(&self, it: usize, iy: usize, ix: usize) -> &[f64; 6] {
        &self.values[(it * self.ys.len() + iy) * self.xs.len() + ix]
    }

    fn slice(&self, it: usize, (ix, fx): (usize, f64), (iy, fy): (usize, f64), k: usize) -> f64 {
        let v00 = self.node(it, iy, ix)[k];
        let v10 = self.node(it, iy, ix + 1)[k];
        let v01 = self.node(it, iy + 1, ix)[k];
        let v11 = self.node(it, iy + 1, ix + 1)[k];
        (1.0 - fy) * ((1.0 - fx) * v00 + fx * v10) + fy * ((1.0 - fx) * v01 + fx * v11)
    }
}

// Cell index and fractional position of `v` in `axis`.
fn locate(axis: &[f64], v: f64, name: &str) -> Result<(usize, f64)> {
    let (lo, hi) = (axis[0], axis[axis.len() - 1]);
    if !(lo..=hi).contains(&v) {
        return Err(Error::Grid(format!("{name} = {v} outside the grid range [{lo}, {hi}]")));
    }
    let i = axis.partition_point(|&a| a <= v).saturating_sub(1).min(axis.len() - 2);
    Ok((i, (v - axis[i]) / (axis[i + 1] - axis[i])))
}

impl FieldModel for TabulatedGrid {
    fn eval(&self, comp: Component, [x, y, t]: P3) -> Result<f64> {
        let k = Component::ALL.iter().position(|&c| c == comp).unwrap();
        let cx = locate(&self.xs, x, "x")?;
        let cy = locate(&self.ys, y, "y")?;
        if self.ts.len() == 1 {
            return Ok(self.slice(0, cx, cy, k));
        }
        let (it, ft) = locate(&self.ts, t, "t")?;
        Ok((1.0 - ft) * self.slice(it, cx, cy, k) + ft * self.slice(it + 1, cx, cy, k))
    }

    fn breaks_along(&self, axis: Axis, _: P3) -> Vec<f64> {
        match axis {
            Axis::X => self.xs.clone(),
            Axis::Y => self.ys.clone(),
            Axis::T => self.ts.clone(),
        }
    }

    fn critical_values(&self, axis: Axis, at: P3) -> Vec<f64> {
        self.breaks_along(axis, at)
    }
}
