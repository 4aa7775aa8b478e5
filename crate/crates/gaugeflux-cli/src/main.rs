use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use gaugeflux::semiclassical::{electric_fringe, magnetic_fringe, FringeResult, FringeSetupElectric, FringeSetupMagnetic};
use gaugeflux::PhysicalConstants;
use gaugeflux_cli::{catalog, run_file};

/// Generalized gauge functions: run scenarios, list configurations, and
/// evaluate double-slit fringe shifts.
#[derive(Parser)]
#[command(name = "gaugeflux", version)]
struct Cli {
    /// Not accepted: every computation is deterministic.
    #[arg(long, global = true, hide = true)]
    seed: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file; exits 1 if any verification task fails.
    Run {
        file: PathBuf,
        /// Write the per-row CSV here (overrides the scenario's output.csv).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the JSON report here (overrides the scenario's output.json).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Do not print the table.
        #[arg(long, short)]
        quiet: bool,
    },
    /// List the built-in configurations with example parameters.
    ListConfigs,
    /// Fringe displacement against the Aharonov–Bohm phase.
    #[command(subcommand)]
    Fringe(Fringe),
}

#[derive(Subcommand)]
enum Fringe {
    /// Thin magnetic strip behind the slits.
    Magnetic(MagneticArgs),
    /// Short transverse electric pulse behind the slits.
    Electric(ElectricArgs),
}

#[derive(Args)]
struct Common {
    /// Particle charge in units of e.
    #[arg(long, allow_hyphen_values = true)]
    q_over_e: f64,
    /// Slit separation.
    #[arg(long)]
    d: f64,
    /// Slit-to-screen distance.
    #[arg(long)]
    l: f64,
    /// de Broglie wavelength.
    #[arg(long)]
    lambda_db: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    flux_quantum: f64,
    /// Print the result as JSON.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn constants(&self) -> PhysicalConstants {
        PhysicalConstants {
            c: self.c,
            flux_quantum: self.flux_quantum,
            ..PhysicalConstants::default()
        }
    }
}

#[derive(Args)]
struct MagneticArgs {
    #[command(flatten)]
    common: Common,
    /// Field strength in the strip.
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    /// Strip width.
    #[arg(long)]
    w: f64,
}

#[derive(Args)]
struct ElectricArgs {
    #[command(flatten)]
    common: Common,
    /// Field strength, positive upward.
    #[arg(long, allow_hyphen_values = true)]
    e: f64,
    /// Pulse duration.
    #[arg(long)]
    t: f64,
    /// Particle speed.
    #[arg(long)]
    v: f64,
}

fn print_fringe(r: &FringeResult, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(r)?);
        return Ok(());
    }
    println!("phi_ab   = {:.10e}", r.phi_ab);
    println!("x_c      = {:.10e}", r.x_c);
    println!("phi_semi = {:.10e}", r.phi_semi);
    println!("sum      = {:.3e}", r.sum);
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    if cli.seed.is_some() {
        bail!("--seed is not accepted: all computations are deterministic");
    }
    match cli.command {
        Command::Run { file, csv, json, quiet } => {
            let (scenario, report) = run_file(&file)?;
            let base = file.parent().map(PathBuf::from).unwrap_or_default();
            let csv = csv.or_else(|| scenario.output.csv.as_ref().map(|p| base.join(p)));
            let json = json.or_else(|| scenario.output.json.as_ref().map(|p| base.join(p)));
            if scenario.output.table && !quiet {
                print!("{}", report.render_table());
            }
            if let Some(p) = csv {
                report.write_csv(&p)?;
            }
            if let Some(p) = json {
                report.write_json(&p)?;
            }
            Ok(report.pass)
        }
        Command::ListConfigs => {
            for (name, about, example) in catalog::listing() {
                println!("{name}\n    {about}\n    example: {example}");
            }
            Ok(true)
        }
        Command::Fringe(Fringe::Magnetic(a)) => {
            let s = FringeSetupMagnetic {
                q_over_e: a.common.q_over_e,
                b: a.b,
                w: a.w,
                d: a.common.d,
                l: a.common.l,
                lambda_db: a.common.lambda_db,
                constants: a.common.constants(),
            };
            print_fringe(&magnetic_fringe(&s)?, a.common.json)?;
            Ok(true)
        }
        Command::Fringe(Fringe::Electric(a)) => {
            let s = FringeSetupElectric {
                q_over_e: a.common.q_over_e,
                e: a.e,
                t: a.t,
                d: a.common.d,
                l: a.common.l,
                lambda_db: a.common.lambda_db,
                v: a.v,
                constants: a.common.constants(),
            };
            print_fringe(&electric_fringe(&s)?, a.common.json)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
