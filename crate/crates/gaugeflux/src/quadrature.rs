//! Deterministic 1-D quadrature and iterated rectangle integrals.
//!
//! Two rules are available: composite Gauss–Legendre on a fixed panel layout
//! and globally adaptive Simpson. Both split the interval at caller-supplied
//! breakpoints first, so piecewise-polynomial integrands (strip edges, polygon
//! indicators, bilinear grids) are integrated exactly up to rounding.
//!
//! Integrals are signed: `∫_a^b f = −∫_b^a f` holds bit for bit, because the
//! reversed interval is evaluated on the same layout and negated.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integration rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Rule {
    /// Composite Gauss–Legendre with `order` nodes per panel.
    GaussLegendre { order: usize },
    /// Globally adaptive Simpson with Richardson correction.
    AdaptiveSimpson,
}

/// Controls every integral evaluated by the solvers.
///
/// `panels` is the fixed panel count of the Gauss–Legendre rule and the
/// initial panel count of the adaptive rule. `max_depth` caps the number of
/// bisections of any single adaptive panel. The tolerances only matter for the
/// adaptive rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    pub rule: Rule,
    pub panels: usize,
    pub max_depth: u32,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rule: Rule::GaussLegendre { order: 8 },
            panels: 16,
            max_depth: 40,
            abs_tol: 1e-11,
            rel_tol: 1e-11,
        }
    }
}

impl QuadratureSpec {
    /// Adaptive Simpson with the given absolute and relative tolerance.
    pub fn adaptive(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            rule: Rule::AdaptiveSimpson,
            panels: 8,
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    /// Composite Gauss–Legendre with `order` nodes on `panels` panels.
    pub fn gauss(order: usize, panels: usize) -> Self {
        Self {
            rule: Rule::GaussLegendre { order },
            panels,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.panels == 0 {
            return Err(Error::invalid("quadrature panels must be at least 1"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::invalid("quadrature abs_tol must be positive"));
        }
        if !(self.rel_tol >= 0.0) {
            return Err(Error::invalid("quadrature rel_tol must be non-negative"));
        }
        if let Rule::GaussLegendre { order } = self.rule {
            if order == 0 || order > 64 {
                return Err(Error::invalid(format!(
                    "Gauss-Legendre order must be in 1..=64, got {order}"
                )));
            }
        }
        if self.max_depth == 0 || self.max_depth > 60 {
            return Err(Error::invalid("quadrature max_depth must be in 1..=60"));
        }
        Ok(())
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A validated spec together with precomputed nodes; cheap to share.
#[derive(Debug, Clone)]
pub struct Integrator {
    spec: QuadratureSpec,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Integrator {
    pub fn new(spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        let (nodes, weights) = match spec.rule {
            Rule::GaussLegendre { order } => gauss_legendre(order),
            Rule::AdaptiveSimpson => (Vec::new(), Vec::new()),
        };
        Ok(Self {
            spec: *spec,
            nodes,
            weights,
        })
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    /// Signed integral of `f` from `a` to `b`, split at `breaks`.
    pub fn integrate<F>(&self, f: F, a: f64, b: f64, breaks: &[f64]) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::invalid(format!("non-finite integration limits [{a}, {b}]")));
        }
        match a.partial_cmp(&b) {
            Some(Ordering::Equal) => Ok(0.0),
            Some(Ordering::Less) => self.forward(&f, a, b, breaks),
            _ => Ok(-self.forward(&f, b, a, breaks)?),
        }
    }

    /// Iterated integral `∫_c^d dv ∫_a^b du f(u, v)`; the inner integral runs
    /// over the first argument. `inner_breaks(v)` supplies breakpoints of the
    /// inner integrand on the line at `v`, `outer_breaks` those of the outer one.
    pub fn integrate_rect<F, B>(
        &self,
        f: F,
        (a, b): (f64, f64),
        (c, d): (f64, f64),
        inner_breaks: B,
        outer_breaks: &[f64],
    ) -> Result<f64>
    where
        F: Fn(f64, f64) -> Result<f64>,
        B: Fn(f64) -> Vec<f64>,
    {
        self.integrate(
            |v| self.integrate(|u| f(u, v), a, b, &inner_breaks(v)),
            c,
            d,
            outer_breaks,
        )
    }

    fn forward(&self, f: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64, breaks: &[f64]) -> Result<f64> {
        let pieces = split(lo, hi, breaks);
        match self.spec.rule {
            Rule::GaussLegendre { .. } => {
                let total = hi - lo;
                let mut sum = 0.0;
                for &(pa, pb) in &pieces {
                    let share = (self.spec.panels as f64 * (pb - pa) / total).round() as usize;
                    sum += self.gauss_piece(f, pa, pb, share.max(1))?;
                }
                Ok(sum)
            }
            Rule::AdaptiveSimpson => self.adaptive(f, &pieces),
        }
    }

    fn gauss_piece(&self, f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64, panels: usize) -> Result<f64> {
        let h = (b - a) / panels as f64;
        let mut sum = 0.0;
        for k in 0..panels {
            let pa = a + k as f64 * h;
            let pb = if k + 1 == panels { b } else { pa + h };
            let (mid, half) = (0.5 * (pa + pb), 0.5 * (pb - pa));
            let mut s = 0.0;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                s += w * eval(f, mid + half * x)?;
            }
            sum += half * s;
        }
        Ok(sum)
    }

    fn adaptive(&self, f: &dyn Fn(f64) -> Result<f64>, pieces: &[(f64, f64)]) -> Result<f64> {
        const MAX_PANELS: usize = 500_000;
        let total: f64 = pieces.iter().map(|(a, b)| b - a).sum();
        let mut heap = BinaryHeap::new();
        let mut frozen = Vec::new();
        for &(pa, pb) in pieces {
            let n = ((self.spec.panels as f64 * (pb - pa) / total).round() as usize).max(1);
            let h = (pb - pa) / n as f64;
            for k in 0..n {
                let a = pa + k as f64 * h;
                let b = if k + 1 == n { pb } else { a + h };
                // Piece ends are breakpoints where the integrand may jump;
                // sample them as one-sided limits from inside the piece.
                let nudge = 1e-12 * (pb - pa);
                let fa = eval(f, if k == 0 { a + nudge } else { a })?;
                let fb = eval(f, if k + 1 == n { b - nudge } else { b })?;
                let fm = eval(f, 0.5 * (a + b))?;
                heap.push(SimpsonPanel::new(f, a, b, fa, fm, fb, 0)?);
            }
        }
        let (mut value, mut error) = totals(heap.iter());
        loop {
            let target = self.spec.abs_tol.max(self.spec.rel_tol * value.abs());
            if error <= target {
                // Running sums drift; confirm with an ordered re-summation.
                let (v, e) = totals(heap.iter().chain(frozen.iter()));
                if e <= target {
                    return Ok(v);
                }
                value = v;
                error = e;
            }
            let exhausted = heap.len() + frozen.len() >= MAX_PANELS;
            match heap.pop() {
                Some(p) if !exhausted && p.depth < self.spec.max_depth => {
                    let (l, r) = p.bisect(f)?;
                    value += l.value + r.value - p.value;
                    error += l.error + r.error - p.error;
                    heap.push(l);
                    heap.push(r);
                }
                Some(p) if !exhausted => frozen.push(p),
                popped => {
                    heap.extend(popped);
                    heap.extend(frozen.drain(..));
                    let (value, error) = totals(heap.iter());
                    if error <= target {
                        return Ok(value);
                    }
                    return Err(Error::ToleranceNotMet {
                        estimate: value,
                        error,
                        target,
                    });
                }
            }
        }
    }
}

fn eval(f: &dyn Fn(f64) -> Result<f64>, x: f64) -> Result<f64> {
    let v = f(x)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::invalid(format!("integrand is not finite at {x}")))
    }
}

// Panel values are summed in position order so the result does not depend on
// the heap's internal layout.
fn totals<'a>(panels: impl Iterator<Item = &'a SimpsonPanel>) -> (f64, f64) {
    let mut all: Vec<&SimpsonPanel> = panels.collect();
    all.sort_by(|p, q| p.a.total_cmp(&q.a));
    all.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

/// Sub-intervals of `[lo, hi]` cut at the breakpoints strictly inside it.
fn split(lo: f64, hi: f64, breaks: &[f64]) -> Vec<(f64, f64)> {
    let eps = 1e-13 * (hi - lo).abs().max(lo.abs()).max(hi.abs()).max(1e-300);
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|&x| x.is_finite() && x > lo + eps && x < hi - eps)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() <= eps);
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut start = lo;
    for c in cuts {
        out.push((start, c));
        start = c;
    }
    out.push((start, hi));
    out
}

#[derive(Debug, Clone)]
struct SimpsonPanel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    fl: f64,
    fr: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl SimpsonPanel {
    fn new(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64, fa: f64, fm: f64, fb: f64, depth: u32) -> Result<Self> {
        let m = 0.5 * (a + b);
        let fl = eval(f, 0.5 * (a + m))?;
        let fr = eval(f, 0.5 * (m + b))?;
        let h = b - a;
        let coarse = h / 6.0 * (fa + 4.0 * fm + fb);
        let fine = h / 12.0 * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb);
        let diff = (fine - coarse) / 15.0;
        Ok(Self {
            a,
            b,
            fa,
            fm,
            fb,
            fl,
            fr,
            value: fine + diff,
            error: diff.abs(),
            depth,
        })
    }

    fn bisect(&self, f: &dyn Fn(f64) -> Result<f64>) -> Result<(Self, Self)> {
        let m = 0.5 * (self.a + self.b);
        let d = self.depth + 1;
        Ok((
            SimpsonPanel::new(f, self.a, m, self.fa, self.fl, self.fm, d)?,
            SimpsonPanel::new(f, m, self.b, self.fm, self.fr, self.fb, d)?,
        ))
    }
}

impl PartialEq for SimpsonPanel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SimpsonPanel {}

impl PartialOrd for SimpsonPanel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimpsonPanel {
    // Largest error first; ties resolved by position for reproducibility.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Signed integral of `f` over `[a, b]` under `spec`.
pub fn integrate_1d<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    Integrator::new(spec)?.integrate(f, a, b, &[])
}

/// Iterated integral over `[a, b] × [c, d]`, inner over the first variable.
pub fn integrate_rect<F>(f: F, x: (f64, f64), y: (f64, f64), spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    Integrator::new(spec)?.integrate_rect(f, x, y, |_| Vec::new(), &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Result<f64> {
        move |x| Ok(f(x))
    }

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        for n in 1..=12 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14, "n = {n}");
            for deg in 0..2 * n {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n = {n}, deg = {deg}");
            }
        }
    }

    #[test]
    fn trivial_integrals() {
        let spec = QuadratureSpec::default();
        assert_eq!(integrate_1d(ok(|_| 0.0), 0.0, 1.0, &spec).unwrap(), 0.0);
        assert!((integrate_1d(ok(|_| 1.0), 2.0, 5.0, &spec).unwrap() - 3.0).abs() < 1e-13);
        let r = integrate_rect(|_, _| Ok(1.0), (0.0, 2.0), (0.0, 3.0), &spec).unwrap();
        assert!((r - 6.0).abs() < 1e-12);
    }

    #[test]
    fn clamp_ramp_with_breaks_is_exact() {
        let q = Integrator::new(&QuadratureSpec::default()).unwrap();
        let f = ok(|x: f64| (x - 1.0).clamp(0.0, 1.0));
        let v = q.integrate(&f, 0.0, 3.0, &[1.0, 2.0]).unwrap();
        assert!((v - 1.5).abs() < 1e-14);
        let a = Integrator::new(&QuadratureSpec::adaptive(1e-12, 0.0)).unwrap();
        let v = a.integrate(&f, 0.0, 3.0, &[]).unwrap();
        assert!((v - 1.5).abs() < 1e-10);
    }

    #[test]
    fn reversed_limits_negate_exactly() {
        for spec in [QuadratureSpec::default(), QuadratureSpec::adaptive(1e-10, 1e-10)] {
            let q = Integrator::new(&spec).unwrap();
            let f = ok(|x: f64| (3.0 * x).sin() + x * x);
            let fwd = q.integrate(&f, -0.3, 2.2, &[0.5]).unwrap();
            let back = q.integrate(&f, 2.2, -0.3, &[0.5]).unwrap();
            assert_eq!(fwd, -back);
        }
    }

    #[test]
    fn adaptive_reports_best_estimate_when_budget_runs_out() {
        let spec = QuadratureSpec {
            max_depth: 3,
            ..QuadratureSpec::adaptive(1e-14, 0.0)
        };
        let err = integrate_1d(ok(|x: f64| if x < 0.3 { 0.0 } else { 1.0 }), 0.0, 1.0, &spec).unwrap_err();
        match err {
            Error::ToleranceNotMet { estimate, .. } => assert!((estimate - 0.7).abs() < 0.1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn integrand_errors_propagate() {
        let spec = QuadratureSpec::default();
        let e = integrate_1d(|_| Err(Error::invalid("boom")), 0.0, 1.0, &spec).unwrap_err();
        assert_eq!(e, Error::invalid("boom"));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let bad = QuadratureSpec { panels: 0, ..QuadratureSpec::default() };
        assert!(Integrator::new(&bad).is_err());
        let bad = QuadratureSpec { abs_tol: 0.0, ..QuadratureSpec::default() };
        assert!(Integrator::new(&bad).is_err());
    }
}
