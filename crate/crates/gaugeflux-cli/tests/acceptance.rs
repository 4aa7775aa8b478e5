//! One line per acceptance criterion; exits nonzero if any fails.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use gaugeflux::semiclassical::{electric_fringe, magnetic_fringe, FringeSetupElectric, FringeSetupMagnetic};
use gaugeflux::PhysicalConstants;
use gaugeflux_cli::{run_file, Report, Row, Scenario};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SQRT3: f64 = 1.732_050_807_568_877_2;
const RESIDUAL_TOL: f64 = 1e-6;
const MIN_SAMPLES: usize = 20;

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

struct Run {
    file: String,
    scenario: Scenario,
    report: Report,
    seconds: f64,
}

impl Run {
    fn rows<'a>(&'a self, task: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.report.tasks.iter().filter(move |t| t.task == task).flat_map(|t| t.rows.iter())
    }

    fn task_seconds(&self, task: &str) -> f64 {
        self.report.tasks.iter().filter(|t| t.task == task).map(|t| t.elapsed_ms).sum::<f64>() / 1e3
    }
}

fn load_all() -> Vec<Run> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(scenarios_dir())
        .expect("scenarios directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let start = Instant::now();
            let (scenario, report) = run_file(&p).unwrap_or_else(|e| panic!("{}: {e:#}", p.display()));
            Run {
                file: p.file_name().unwrap().to_string_lossy().into_owned(),
                scenario,
                report,
                seconds: start.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

fn get<'a>(runs: &'a [Run], name: &str) -> &'a Run {
    runs.iter().find(|r| r.scenario.name == name).unwrap_or_else(|| panic!("scenario {name} missing"))
}

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn max_residual(r: &Row) -> f64 {
    [r.residual_x, r.residual_y, r.residual_t].into_iter().flatten().fold(0.0, f64::max)
}

fn c1(runs: &[Run]) -> Outcome {
    let total: f64 = runs.iter().map(|r| r.seconds).sum();
    let (mut tasks, mut worst, mut bad) = (0, 0.0f64, Vec::new());
    for run in runs {
        for t in &run.report.tasks {
            // The naive formulas are the negative control of criterion 2.
            if !t.task.starts_with("verify:") || t.task.starts_with("verify:naive") {
                continue;
            }
            tasks += 1;
            let r = t.rows.iter().map(max_residual).fold(0.0, f64::max);
            worst = worst.max(r);
            let ok = t.error.is_none()
                && t.rows.len() >= MIN_SAMPLES
                && t.rows.iter().all(|row| row.error.is_none() && max_residual(row) <= RESIDUAL_TOL);
            if !ok {
                bad.push(format!("{}:{} ({} rows, max residual {r:.2e})", run.file, t.task, t.rows.len()));
            }
        }
    }
    let detail = format!("{tasks} verify tasks over {} scenarios, max residual {worst:.2e}, total {total:.2} s", runs.len());
    check(bad.is_empty() && tasks > 0 && total < 10.0, if bad.is_empty() { detail } else { format!("{detail}; failing: {}", bad.join(", ")) })
}

fn c2(runs: &[Run]) -> Outcome {
    let run = get(runs, "naive-capacitor");
    let e0 = 1.0;
    let c = run.scenario.constants.c;
    let rows: Vec<&Row> = run.rows("verify:naive").collect();
    let mut ratio = f64::INFINITY;
    for r in &rows {
        let bound = 0.9 * c * (r.t.unwrap() - r.t0.unwrap()) * e0;
        ratio = ratio.min(r.residual_x.unwrap_or(0.0) / bound);
    }
    check(
        !rows.is_empty() && ratio >= 1.0 && !run.report.pass,
        format!("{} interior points, min residual_x / (0.9 c (t - t0) E0) = {ratio:.4}, report fails: {}", rows.len(), !run.report.pass),
    )
}

fn pairwise(run: &Run, a: &str, b: &str) -> (usize, f64) {
    let (ra, rb): (Vec<&Row>, Vec<&Row>) = (run.rows(a).collect(), run.rows(b).collect());
    assert_eq!(ra.len(), rb.len(), "{}: {a} vs {b}", run.file);
    let d = ra.iter().zip(&rb).map(|(x, y)| (x.lambda.unwrap() - y.lambda.unwrap()).abs()).fold(0.0, f64::max);
    (ra.len(), d)
}

fn cancel_max(run: &Run) -> f64 {
    run.rows("cancel").map(|r| (r.value.unwrap() - r.value2.unwrap()).abs()).fold(0.0, f64::max)
}

fn c3(runs: &[Run]) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, a, b, tol) in [
        ("vertical-strip", "lambda1", "lambda2", 1e-8),
        ("horizontal-strip", "lambda1", "lambda2", 1e-8),
        ("capacitor", "lambda3", "lambda4", 1e-8),
        ("pulse", "lambda3", "lambda4", 1e-8),
        ("triangle", "lambda1", "lambda2", 1e-6),
    ] {
        let run = get(runs, name);
        let (n, d) = pairwise(run, a, b);
        ok &= n > 0 && d <= tol;
        parts.push(format!("{name} {d:.1e}/{n}"));
    }
    let tri = cancel_max(get(runs, "triangle"));
    ok &= tri <= 1e-6;
    parts.push(format!("triangle cancel {tri:.1e}"));
    check(ok, parts.join(", "))
}

fn c4(runs: &[Run]) -> Outcome {
    let run = get(runs, "triangle");
    let a = 1.0;
    let g = |x: f64| -(SQRT3 * a * x - SQRT3 * x * x / 2.0) + SQRT3 * a * a / 4.0;
    let h = |y: f64| a * y - y * y / SQRT3 - SQRT3 * a * a / 4.0;
    let dg = run.rows("lambda1").map(|r| (r.gauge_fix_part.unwrap() - g(r.x.unwrap())).abs()).fold(0.0, f64::max);
    let dh = run.rows("lambda2").map(|r| (r.gauge_fix_part.unwrap() - h(r.y.unwrap())).abs()).fold(0.0, f64::max);
    let n = run.rows("lambda1").count();
    check(n > 0 && dg <= 1e-6 && dh <= 1e-6, format!("{n} points, max |g - g*| = {dg:.1e}, max |h - h*| = {dh:.1e}"))
}

fn c5(runs: &[Run]) -> Outcome {
    let run = get(runs, "solenoid");
    let flux = 1.0;
    let m = run.rows("multiplicities").next().unwrap();
    let (f, h_hat) = (m.value.unwrap(), m.value2.unwrap());
    // Frame 0 carries the ledger, frame 1 does not.
    let l1 = run.rows("lambda1").next().unwrap().lambda.unwrap();
    let l2 = run.rows("lambda2").next().unwrap().lambda.unwrap();
    let ok = (f + flux).abs() <= 1e-9 && (h_hat - flux).abs() <= 1e-9 && ((l2 - l1) - flux).abs() <= 1e-9;
    check(ok, format!("f(y0) = {f}, h^(x0) = {h_hat}, lambda2 - lambda1 = {:.12}", l2 - l1))
}

fn c6(runs: &[Run]) -> Outcome {
    let run = get(runs, "electric-ab");
    let flux = 1.0;
    let m = run.rows("multiplicities").next().unwrap();
    let (tau, chi) = (m.value.unwrap(), m.value2.unwrap());
    let ok = (tau - flux).abs() <= 1e-9 && (-chi - flux).abs() <= 1e-9;
    check(ok, format!("tau(t0) = {tau}, -chi(x0) = {}, flux = {flux}", -chi))
}

fn c7(runs: &[Run]) -> Outcome {
    let run = get(runs, "vankampen");
    let rows: Vec<&Row> = run.rows("vankampen-sweep").collect();
    let mut seen = Vec::new();
    let (mut worst_delta, mut worst_faraday, mut ok) = (0.0f64, 0.0f64, true);
    for r in &rows {
        let (delta, phi_t0) = (r.value.unwrap(), r.value2.unwrap());
        let rel = (delta - phi_t0).abs() / phi_t0.abs();
        worst_delta = worst_delta.max(rel);
        worst_faraday = worst_faraday.max(r.residual_t.unwrap().abs() / phi_t0.abs());
        ok &= rel <= 1e-6 && r.pass == Some(true);
        seen.push(r.t.unwrap() - r.t0.unwrap());
    }
    let covered = [1.0, 2.0, 3.0, 4.0].iter().all(|dt| seen.iter().any(|s| (s - dt).abs() < 1e-12));
    let secs = run.task_seconds("vankampen-sweep");
    check(
        ok && covered && secs < 5.0,
        format!(
            "t - t0 = {seen:?}: max |dLambda - Phi(t0)|/|Phi(t0)| = {worst_delta:.1e}, max Faraday residual {worst_faraday:.1e}, {secs:.2} s"
        ),
    )
}

fn c8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    let u = |rng: &mut StdRng, lo: f64, hi: f64| rng.gen_range(lo..hi);
    for _ in 0..1000 {
        let k = PhysicalConstants {
            c: u(&mut rng, 0.1, 10.0),
            flux_quantum: u(&mut rng, 0.1, 10.0),
            ..PhysicalConstants::default()
        };
        let m = magnetic_fringe(&FringeSetupMagnetic {
            q_over_e: u(&mut rng, -3.0, 3.0),
            b: u(&mut rng, -5.0, 5.0),
            w: u(&mut rng, 1e-3, 1.0),
            d: u(&mut rng, 1e-3, 2.0),
            l: u(&mut rng, 1.0, 100.0),
            lambda_db: u(&mut rng, 1e-3, 1.0),
            constants: k,
        })
        .unwrap();
        let e = electric_fringe(&FringeSetupElectric {
            q_over_e: u(&mut rng, -3.0, 3.0),
            e: u(&mut rng, -5.0, 5.0),
            t: u(&mut rng, 0.0, 1.0),
            d: u(&mut rng, 1e-3, 2.0),
            l: u(&mut rng, 1.0, 100.0),
            lambda_db: u(&mut rng, 1e-3, 1.0),
            v: u(&mut rng, 0.1, 10.0),
            constants: k,
        })
        .unwrap();
        for r in [m, e] {
            worst = worst.max(r.sum.abs() / r.phi_ab.abs().max(1.0));
        }
    }
    let ex = magnetic_fringe(&FringeSetupMagnetic {
        q_over_e: -1.0,
        b: 1.0,
        w: 0.1,
        d: 1.0,
        l: 10.0,
        lambda_db: 0.05,
        constants: PhysicalConstants::default(),
    })
    .unwrap();
    let ok = worst <= 1e-12 && (ex.phi_ab + 0.2 * PI).abs() <= 1e-9 && (ex.x_c - 0.05).abs() <= 1e-9;
    check(ok, format!("2000 draws, max relative |sum| = {worst:.1e}; example phi_ab = {:.7}, x_c = {:.7}", ex.phi_ab, ex.x_c))
}

fn c9(runs: &[Run]) -> Outcome {
    let run = get(runs, "disc-blob");
    let polar = run.rows("polar:first").next().unwrap().lambda.unwrap();
    let cart = run.rows("lambda1").next().unwrap().lambda.unwrap();
    check((polar - cart).abs() <= 1e-6, format!("polar {polar:.10}, cartesian {cart:.10}, |diff| = {:.1e}", (polar - cart).abs()))
}

fn c10(runs: &[Run]) -> Outcome {
    let run = get(runs, "static-limit");
    let reference = run.rows("lambda1").next().unwrap().lambda.unwrap();
    let mut worst = 0.0f64;
    let mut n = 0;
    for v in ["full1", "full2", "full4", "fin"] {
        for r in run.rows(&format!("full:{v}")) {
            worst = worst.max((r.lambda.unwrap() - reference).abs());
            n += 1;
        }
    }
    check(n == 4 && worst <= 1e-8, format!("{n} variants vs static {reference:.12}, max |diff| = {worst:.1e}"))
}

fn main() -> ExitCode {
    let runs = load_all();
    let results: [(u32, Outcome); 10] = [
        (1, c1(&runs)),
        (2, c2(&runs)),
        (3, c3(&runs)),
        (4, c4(&runs)),
        (5, c5(&runs)),
        (6, c6(&runs)),
        (7, c7(&runs)),
        (8, c8()),
        (9, c9(&runs)),
        (10, c10(&runs)),
    ];
    let mut all = true;
    for (n, r) in &results {
        match r {
            Ok(d) => println!("criterion {n}: PASS — {d}"),
            Err(d) => {
                all = false;
                println!("criterion {n}: FAIL — {d}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
