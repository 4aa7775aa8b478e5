//! Task dispatch. Frames of one task are evaluated in parallel; rows keep
//! the frame order.

use std::path::Path;
use std::time::Instant;

use anyhow::Result;
use gaugeflux::dynamic1d::{
    electric_ab_multiplicities, lambda3_dynamic, lambda4_dynamic, lambda_naive, verify_xt_system, NaiveVariant,
};
use gaugeflux::fields::check_consistency;
use gaugeflux::full3::{faraday_check, lambda_full, ledger3, van_kampen_delta, verify_full_system, Frame3};
use gaugeflux::semiclassical::{electric_fringe, magnetic_fringe, FringeResult};
use gaugeflux::static2d::{ab_multiplicities, cancellation_check, lambda1_static, lambda2_static, lambda_polar, verify_gradient};
use gaugeflux::{FieldConfig, PhysicalConstants, QuadratureSpec};
use rayon::prelude::*;

use crate::report::{Report, Row, TaskReport};
use crate::scenario::{Frame, Scenario, Solution, TaskSpec};

struct Ctx<'a> {
    cfg: &'a FieldConfig,
    spec: &'a QuadratureSpec,
    k: &'a PhysicalConstants,
}

/// Run every task of `scenario` in order. Relative paths inside the scenario
/// resolve against `base`. Solver failures are recorded per row or per task;
/// only an unusable configuration aborts the run.
pub fn run_scenario(scenario: &Scenario, base: &Path) -> Result<Report> {
    scenario.validate()?;
    let cfg = scenario.config.build(&scenario.constants, base)?;
    let frames = scenario.frames()?;
    let ctx = Ctx {
        cfg: &cfg,
        spec: &scenario.quadrature,
        k: &scenario.constants,
    };
    let tasks: Vec<TaskReport> = scenario.tasks.iter().map(|t| run_task(&ctx, t, &frames)).collect();
    let pass = tasks.iter().filter(|t| t.verification).all(|t| t.pass == Some(true));
    Ok(Report {
        scenario: scenario.name.clone(),
        config: cfg.name().to_string(),
        tasks,
        pass,
    })
}

/// Load, run and resolve paths against the scenario's directory.
pub fn run_file(path: &Path) -> Result<(Scenario, Report)> {
    let scenario = Scenario::load(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let report = run_scenario(&scenario, base)?;
    Ok((scenario, report))
}

fn run_task(ctx: &Ctx, task: &TaskSpec, frames: &[Vec<Frame>]) -> TaskReport {
    let start = Instant::now();
    let label = task.label();
    let selected: Vec<Frame> = match task.frame_selection() {
        Some(sel) => sel.iter().flat_map(|&i| frames[i].iter().copied()).collect(),
        None => frames.iter().flatten().copied().collect(),
    };
    let mut warnings = Vec::new();
    let mut error = None;
    let rows: Vec<Row> = match task {
        TaskSpec::Consistency { region, samples, tol } => match check_consistency(ctx.cfg, region, *samples, *tol, ctx.k) {
            Ok(r) => {
                let mut row = Row::new(&label, None);
                (row.value, row.value2, row.pass) = (Some(r.magnetic_residual), Some(r.electric_residual), Some(r.pass));
                vec![row]
            }
            Err(e) => {
                error = Some(e.to_string());
                Vec::new()
            }
        },
        TaskSpec::FringeMagnetic { setup } => fringe_row(&label, magnetic_fringe(setup), &mut warnings, &mut error),
        TaskSpec::FringeElectric { setup } => fringe_row(&label, electric_fringe(setup), &mut warnings, &mut error),
        TaskSpec::VankampenSweep { t, tol, .. } => {
            let jobs: Vec<Frame3> = selected
                .iter()
                .filter_map(|f| match f {
                    Frame::Full(f) => Some(*f),
                    _ => None,
                })
                .flat_map(|f| t.iter().map(move |&t| f.moved_to([f.p[0], f.p[1], t])))
                .collect();
            jobs.par_iter().map(|f| vankampen_row(ctx, &label, f, *tol)).collect()
        }
        _ => selected.par_iter().map(|f| frame_row(ctx, task, &label, f)).collect(),
    };
    let pass = task
        .is_verification()
        .then(|| error.is_none() && !rows.is_empty() && rows.iter().all(|r| r.pass == Some(true)));
    TaskReport {
        task: label,
        verification: task.is_verification(),
        rows,
        error,
        warnings,
        pass,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn fringe_row(label: &str, r: gaugeflux::Result<FringeResult>, warnings: &mut Vec<String>, error: &mut Option<String>) -> Vec<Row> {
    match r {
        Ok(r) => {
            warnings.extend(r.warnings.iter().cloned());
            let mut row = Row::new(label, None);
            (row.phi_ab, row.x_c, row.phi_semi, row.sum) = (Some(r.phi_ab), Some(r.x_c), Some(r.phi_semi), Some(r.sum));
            vec![row]
        }
        Err(e) => {
            *error = Some(e.to_string());
            Vec::new()
        }
    }
}

fn vankampen_row(ctx: &Ctx, label: &str, frame: &Frame3, tol: f64) -> Row {
    let mut row = Row::new(label, Some((frame.p0, frame.p)));
    let outcome = (|| -> gaugeflux::Result<()> {
        let delta = van_kampen_delta(ctx.cfg, frame, ctx.spec, ctx.k)?;
        let phi_t0 = ledger3(ctx.cfg, frame)?.f_x0_t0;
        let faraday = faraday_check(ctx.cfg, frame, ctx.spec, ctx.k)?;
        let scale = |s: f64| if s > 0.0 { s } else { 1.0 };
        let delta_ok = (delta - phi_t0).abs() <= tol * scale(phi_t0.abs());
        let faraday_ok = faraday.residual.abs() <= tol * scale(faraday.field_term.abs().max(phi_t0.abs()));
        (row.value, row.value2, row.residual_t) = (Some(delta), Some(phi_t0), Some(faraday.residual));
        row.pass = Some(delta_ok && faraday_ok);
        Ok(())
    })();
    if let Err(e) = outcome {
        row.error = Some(e.to_string());
        row.pass = Some(false);
    }
    row
}

fn frame_row(ctx: &Ctx, task: &TaskSpec, label: &str, frame: &Frame) -> Row {
    let row = Row::new(label, Some(frame.coords()));
    let verification = task.is_verification();
    match evaluate(ctx, task, frame, row.clone()) {
        Ok(r) => r,
        Err(e) => Row {
            error: Some(e.to_string()),
            pass: verification.then_some(false),
            ..row
        },
    }
}

fn evaluate(ctx: &Ctx, task: &TaskSpec, frame: &Frame, mut row: Row) -> gaugeflux::Result<Row> {
    let Ctx { cfg, spec, k } = *ctx;
    Ok(match (task, frame) {
        (TaskSpec::Lambda1 { .. }, Frame::Static(f)) => row.with_solution(&lambda1_static(cfg, f, spec)?),
        (TaskSpec::Lambda2 { .. }, Frame::Static(f)) => row.with_solution(&lambda2_static(cfg, f, spec)?),
        (TaskSpec::Lambda3 { .. }, Frame::Spacetime(f)) => row.with_solution(&lambda3_dynamic(cfg, f, spec, k)?),
        (TaskSpec::Lambda4 { .. }, Frame::Spacetime(f)) => row.with_solution(&lambda4_dynamic(cfg, f, spec, k)?),
        (TaskSpec::Naive { variant, .. }, Frame::Spacetime(f)) => {
            row.with_solution(&lambda_naive(cfg, f, *variant, spec, k)?)
        }
        (TaskSpec::Polar { branch, .. }, Frame::Polar(f)) => row.with_solution(&lambda_polar(cfg, f, *branch, spec)?),
        (TaskSpec::Full { variant, conditions, .. }, Frame::Full(f)) => {
            row.with_solution(&lambda_full(cfg, f, *variant, &conditions.set(), spec, k)?)
        }
        (TaskSpec::Cancel { tol, .. }, Frame::Static(f)) => {
            let d = cancellation_check(cfg, f, spec)?;
            let flux = cfg.enclosed_magnetic_flux((f.p0[0], f.p0[1]), (f.p[0], f.p[1]), f.t)?;
            (row.value, row.value2, row.pass) = (Some(d), Some(flux), Some((d - flux).abs() <= *tol));
            row
        }
        (TaskSpec::Cancel { tol, .. }, Frame::Spacetime(f)) => {
            let bare = f.without_multiplicities();
            let d = lambda4_dynamic(cfg, &bare, spec, k)?.lambda - lambda3_dynamic(cfg, &bare, spec, k)?.lambda;
            let flux = cfg.enclosed_electric_flux((f.p0[0], f.p0[1]), (f.p[0], f.p[1]))?;
            (row.value, row.value2, row.pass) = (Some(d), Some(flux), Some((d - flux).abs() <= *tol));
            row
        }
        (TaskSpec::Multiplicities { .. }, Frame::Static(f)) => {
            let m = ab_multiplicities(cfg, f)?;
            (row.value, row.value2) = (Some(m.f_y0), Some(m.h_hat_x0));
            row
        }
        (TaskSpec::Multiplicities { .. }, Frame::Spacetime(f)) => {
            let m = electric_ab_multiplicities(cfg, f)?;
            (row.value, row.value2) = (Some(m.tau_t0), Some(m.chi_x0));
            row
        }
        (TaskSpec::Multiplicities { .. }, Frame::Full(f)) => {
            let m = ledger3(cfg, f)?;
            (row.value, row.value2) = (Some(m.f_x0_t0), Some(m.h_hat_y0_t0));
            row
        }
        (TaskSpec::Verify { solution, step, tol, conditions, .. }, frame) => {
            let (step, tol) = (*step, *tol);
            match (solution, frame) {
                (Solution::Lambda1 | Solution::Lambda2, Frame::Static(f)) => {
                    let solve = |fr: &_| match solution {
                        Solution::Lambda1 => lambda1_static(cfg, fr, spec),
                        _ => lambda2_static(cfg, fr, spec),
                    };
                    let r = verify_gradient(cfg, f, solve, step, tol)?;
                    row.with_solution(&solve(f)?).with_residuals(&r)
                }
                (Solution::Lambda3 | Solution::Lambda4 | Solution::Naive | Solution::NaiveInitialPoint, Frame::Spacetime(f)) => {
                    let solve = |fr: &_| match solution {
                        Solution::Lambda3 => lambda3_dynamic(cfg, fr, spec, k),
                        Solution::Lambda4 => lambda4_dynamic(cfg, fr, spec, k),
                        Solution::Naive => lambda_naive(cfg, fr, NaiveVariant::Observation, spec, k),
                        _ => lambda_naive(cfg, fr, NaiveVariant::InitialPoint, spec, k),
                    };
                    let r = verify_xt_system(cfg, f, solve, step, tol, k)?;
                    row.with_solution(&solve(f)?).with_residuals(&r)
                }
                (s, Frame::Full(f)) if s.variant().is_some() => {
                    let variant = s.variant().expect("checked above");
                    let conds = conditions.set();
                    let r = verify_full_system(cfg, f, variant, &conds, step, tol, spec, k)?;
                    row.with_solution(&lambda_full(cfg, f, variant, &conds, spec, k)?).with_residuals(&r)
                }
                _ => unreachable!("dimensionality is validated before running"),
            }
        }
        _ => unreachable!("dimensionality is validated before running"),
    })
}
