// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! `dissent`: steady-state entanglement sweeps from the command line.

mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dissent_core::dressed::DephasingConvention;
use dissent_core::solver::Tolerances;
use dissent_core::sweep::{
    evaluate_point, gnuplot_script, run_detuned_peak_scan, run_fig1_sweep, run_fig2_sweep, write_csv, Axis, AxisSpec,
    Model, SweepResult, SweepSpec,
};
use dissent_core::validate::{validate, Fault, ValidationConfig};
use dissent_core::SystemParams;

use config::ConfigFile;

const CSV_HELP: &str = "\
CSV output: `#` metadata lines (version, model, dephasing convention, basis, full
parameter set, axes, peak, plateau), then a header row and one row per grid point:

    <swept axes...>,concurrence,rho11,rho22,rho33,rho44,abs_rho23,residual

Axes come first in sweep order (first axis varies slowest). rho_kk and abs_rho23
are in the bare basis |e1e2>,|e1g2>,|g1e2>,|g1g2> for --model full and in the
dressed basis |e1+>,|e1->,|g1+>,|g1-> for the secular models. residual is
||G vec(rho)|| of the reported state.";

#[derive(Parser)]
#[command(
    name = "dissent",
    version,
    about = "Steady-state entanglement of two atoms coupled through a common reservoir",
    long_about = "Steady-state entanglement of two non-identical atoms coupled only through their \
                  common radiation reservoir, atom 2 laser-driven. Rates and frequencies are in units of gamma1."
)]
struct Cli {
    /// Flat `key = value` file with defaults for any long flag; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Steady state at a single parameter point (JSON on stdout).
    Point(PointArgs),
    /// Concurrence versus Omega0 with the full model (defaults: Delta0=15, 351 points over [0, 35]).
    #[command(after_help = CSV_HELP)]
    Fig1(ScanArgs),
    /// Omega0 scan with a detuned laser (defaults: Delta0=15, DeltaL=5); peak expected at sqrt(Delta^2 - DeltaL^2).
    #[command(after_help = CSV_HELP)]
    Detuned(ScanArgs),
    /// Closed-form concurrence over (alpha, cos^2 theta) on the Omega = Delta crossing.
    #[command(after_help = CSV_HELP)]
    Fig2(SurfaceArgs),
    /// Run the cross-check suite; JSON report on stdout, non-zero exit on any failure.
    Validate(ValidateArgs),
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    /// Decay rate of the undriven atom 1.
    #[arg(long, allow_hyphen_values = true)]
    gamma1: Option<f64>,
    /// Decay rate of the driven atom 2.
    #[arg(long, allow_hyphen_values = true)]
    gamma2: Option<f64>,
    /// Rabi frequency of the drive on atom 2.
    #[arg(long, allow_hyphen_values = true)]
    rabi0: Option<f64>,
    /// Transition-frequency difference omega1 - omega2.
    #[arg(long, allow_hyphen_values = true)]
    delta0: Option<f64>,
    /// Laser detuning omega2 - omega_L.
    #[arg(long = "deltaL", alias = "delta-l", allow_hyphen_values = true)]
    delta_l: Option<f64>,
    /// Interatomic distance times the wave number.
    #[arg(long, allow_hyphen_values = true)]
    kr12: Option<f64>,
    /// Dipole orientation relative to the interatomic axis.
    #[arg(long, allow_hyphen_values = true)]
    cos2eta: Option<f64>,
    /// Replace the computed dipole-dipole shift (sensitivity studies only).
    #[arg(long, allow_hyphen_values = true)]
    omega12_override: Option<f64>,
    /// Replace the computed collective damping (sensitivity studies only).
    #[arg(long, allow_hyphen_values = true)]
    gamma12_override: Option<f64>,
}

#[derive(Args, Clone, Default)]
struct TolArgs {
    /// Allowed generator trace defect.
    #[arg(long)]
    tol_trace: Option<f64>,
    /// Largest acceptable condition estimate of the steady-state system.
    #[arg(long)]
    tol_condition: Option<f64>,
    /// Most negative eigenvalue tolerated in a steady state.
    #[arg(long)]
    tol_negativity: Option<f64>,
    /// Largest anti-Hermitian part removed after a solve.
    #[arg(long)]
    tol_hermitization: Option<f64>,
    /// Relative |Omega - Delta| accepted as resonant.
    #[arg(long)]
    tol_resonance: Option<f64>,
    /// Integrator relative tolerance.
    #[arg(long)]
    tol_rtol: Option<f64>,
    /// Integrator absolute tolerance.
    #[arg(long)]
    tol_atol: Option<f64>,
    /// Smallest integrator step.
    #[arg(long)]
    tol_min_step: Option<f64>,
}

#[derive(Args, Clone, Default)]
struct RunArgs {
    /// full | secular_mutual | secular_cascade
    #[arg(long)]
    model: Option<Model>,
    /// Dressed dephasing rate: quarter = (gamma2/4) sin^2(2theta), full-model = gamma2 sin^2(2theta).
    #[arg(long)]
    convention: Option<DephasingConvention>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    run: RunArgs,
    /// Grid points along Omega0.
    #[arg(long)]
    points: Option<usize>,
    /// Smallest Omega0.
    #[arg(long, allow_hyphen_values = true)]
    min: Option<f64>,
    /// Largest Omega0.
    #[arg(long, allow_hyphen_values = true)]
    max: Option<f64>,
    /// Also write a gnuplot script for the CSV.
    #[arg(long, value_name = "FILE")]
    gnuplot: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    run: RunArgs,
    /// Grid points along each axis.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_max: Option<f64>,
    #[arg(long)]
    cos2theta_min: Option<f64>,
    #[arg(long)]
    cos2theta_max: Option<f64>,
    /// Omega = Delta at which the surface is evaluated.
    #[arg(long)]
    omega: Option<f64>,
    /// Also write a gnuplot script for the CSV.
    #[arg(long, value_name = "FILE")]
    gnuplot: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// Random points per secular-vs-analytic check.
    #[arg(long)]
    samples: Option<usize>,
    /// Output file for the JSON report (default: stdout).
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[command(flatten)]
    tol: TolArgs,
    /// Deliberately break the secular generators (self-test of the suite).
    #[arg(long, hide = true)]
    inject_sign_flip: bool,
}

fn apply_params(cfg: &ConfigFile, args: &ParamArgs, mut p: SystemParams) -> Result<SystemParams> {
    macro_rules! set {
        ($field:ident, $key:literal) => {
            if let Some(v) = cfg.pick(args.$field, $key)? {
                p.$field = v;
            }
        };
    }
    set!(gamma1, "gamma1");
    set!(gamma2, "gamma2");
    set!(rabi0, "rabi0");
    set!(delta0, "delta0");
    set!(delta_l, "deltaL");
    set!(kr12, "kr12");
    set!(cos2eta, "cos2eta");
    if let Some(v) = cfg.pick(args.omega12_override, "omega12-override")? {
        p.omega12_override = Some(v);
    }
    if let Some(v) = cfg.pick(args.gamma12_override, "gamma12-override")? {
        p.gamma12_override = Some(v);
    }
    Ok(p)
}

fn tolerances(cfg: &ConfigFile, args: &TolArgs) -> Result<Tolerances> {
    let mut t = Tolerances::default();
    macro_rules! set {
        ($flag:ident, $field:ident, $key:literal) => {
            if let Some(v) = cfg.pick(args.$flag, $key)? {
                t.$field = v;
            }
        };
    }
    set!(tol_trace, trace_preservation, "tol-trace");
    set!(tol_condition, max_condition, "tol-condition");
    set!(tol_negativity, negativity, "tol-negativity");
    set!(tol_hermitization, hermitization, "tol-hermitization");
    set!(tol_resonance, resonance_rel, "tol-resonance");
    set!(tol_rtol, evolve_rtol, "tol-rtol");
    set!(tol_atol, evolve_atol, "tol-atol");
    set!(tol_min_step, min_step, "tol-min-step");
    Ok(t)
}

fn apply_run(cfg: &ConfigFile, args: &RunArgs, spec: &mut SweepSpec) -> Result<()> {
    if let Some(m) = cfg.pick(args.model, "model")? {
        spec.model = m;
    }
    if let Some(c) = cfg.pick(args.convention, "convention")? {
        spec.convention = c;
    }
    spec.threads = cfg.pick(args.threads, "threads")?;
    if spec.threads == Some(0) {
        bail!("--threads must be at least 1");
    }
    spec.tolerances = tolerances(cfg, &args.tol)?;
    Ok(())
}

fn output_path(cfg: &ConfigFile, flag: &Option<PathBuf>) -> Result<Option<PathBuf>> {
    cfg.pick(flag.clone(), "out")
}

fn with_output(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn emit_sweep(result: &SweepResult, out: Option<PathBuf>, gnuplot: Option<PathBuf>) -> Result<()> {
    with_output(out.as_deref(), |w| Ok(write_csv(result, w)?))?;
    if let Some(script) = gnuplot {
        let data = out
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "sweep.csv".to_string());
        std::fs::write(&script, gnuplot_script(result, &data))
            .with_context(|| format!("writing {}", script.display()))?;
    }
    summarize(result);
    Ok(())
}

/// One-line summary on stderr so stdout stays pure CSV.
fn summarize(result: &SweepResult) {
    let names = result.axis_names();
    if let Some(p) = &result.peak {
        let at: Vec<String> = names.iter().zip(&p.coords).map(|(n, v)| format!("{n}={v}")).collect();
        let mut line = format!("peak concurrence {:.6} at {}", p.value, at.join(", "));
        if let (Some(r), 1) = (p.refined, names.len()) {
            line.push_str(&format!(" (refined {r:.4})"));
        }
        eprintln!("{line}");
    }
    if let Some(e) = result.expected_peak {
        eprintln!("expected Omega = Delta crossing at rabi0={e:.4}");
    }
    if let Some(pl) = &result.plateau {
        eprintln!(
            "plateau over rabi0 in [{}, {}]: mean {:.6}, std {:.6}",
            pl.from, pl.to, pl.mean, pl.std_dev
        );
    }
    for n in &result.notes {
        eprintln!("note: {n}");
    }
}

fn scan_spec(cfg: &ConfigFile, args: &ScanArgs, mut spec: SweepSpec) -> Result<SweepSpec> {
    spec.base = apply_params(cfg, &args.params, spec.base)?;
    apply_run(cfg, &args.run, &mut spec)?;
    let axis = &mut spec.axes[0];
    if let Some(v) = cfg.pick(args.points, "points")? {
        axis.points = v;
    }
    if let Some(v) = cfg.pick(args.min, "min")? {
        axis.min = v;
    }
    if let Some(v) = cfg.pick(args.max, "max")? {
        axis.max = v;
    }
    Ok(spec)
}

fn run_point(cfg: &ConfigFile, args: &PointArgs) -> Result<()> {
    let p = apply_params(cfg, &args.params, SystemParams::default())?;
    let model = cfg.pick(args.run.model, "model")?.unwrap_or(Model::Full);
    let convention = cfg.pick(args.run.convention, "convention")?.unwrap_or_default();
    let tol = tolerances(cfg, &args.run.tol)?;
    let coupling = p.coupling()?;
    let r = evaluate_point(&p, model, convention, &tol)?;
    let rows = |part: fn(&dissent_core::C64) -> f64| -> Vec<Vec<f64>> {
        (0..4)
            .map(|i| (0..4).map(|j| part(&r.rho.get(i, j))).collect())
            .collect()
    };
    let report = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "params": p,
        "model": model.to_string(),
        "convention": convention.to_string(),
        "basis": model.basis_label(),
        "coupling": { "omega12": coupling.omega12, "gamma12": coupling.gamma12 },
        "generalized_rabi": p.generalized_rabi(),
        "total_detuning": p.total_detuning(),
        "concurrence": r.concurrence,
        "populations": r.populations,
        "abs_rho23": r.abs_rho23,
        "residual": r.residual,
        "rho_re": rows(|z| z.re),
        "rho_im": rows(|z| z.im),
    });
    let out = output_path(cfg, &args.run.out)?;
    with_output(out.as_deref(), |w| {
        serde_json::to_writer_pretty(&mut *w, &report)?;
        writeln!(w)?;
        Ok(())
    })
}

fn run_fig2(cfg: &ConfigFile, args: &SurfaceArgs) -> Result<()> {
    let mut spec = SweepSpec::fig2(dissent_core::Coupling::Mutual);
    spec.base = apply_params(cfg, &args.params, spec.base)?;
    apply_run(cfg, &args.run, &mut spec)?;
    let points = cfg.pick(args.points, "points")?;
    let mut set_axis = |axis: Axis, lo: Option<f64>, hi: Option<f64>| {
        let a: &mut AxisSpec = spec.axes.iter_mut().find(|a| a.axis == axis).expect("fig2 axis");
        if let Some(v) = lo {
            a.min = v;
        }
        if let Some(v) = hi {
            a.max = v;
        }
        if let Some(n) = points {
            a.points = n;
        }
    };
    set_axis(
        Axis::Alpha,
        cfg.pick(args.alpha_min, "alpha-min")?,
        cfg.pick(args.alpha_max, "alpha-max")?,
    );
    set_axis(
        Axis::Cos2theta,
        cfg.pick(args.cos2theta_min, "cos2theta-min")?,
        cfg.pick(args.cos2theta_max, "cos2theta-max")?,
    );
    if let Some(w) = cfg.pick(args.omega, "omega")? {
        spec.resonant_omega = w;
    }
    let result = run_fig2_sweep(&spec)?;
    emit_sweep(
        &result,
        output_path(cfg, &args.run.out)?,
        cfg.pick(args.gnuplot.clone(), "gnuplot")?,
    )
}

fn run_validate(cfg: &ConfigFile, args: &ValidateArgs) -> Result<bool> {
    let mut vc = ValidationConfig::default();
    if let Some(s) = cfg.pick(args.seed, "seed")? {
        vc.seed = s;
    }
    if let Some(n) = cfg.pick(args.samples, "samples")? {
        vc.secular_samples = n;
    }
    vc.tolerances = tolerances(cfg, &args.tol)?;
    if args.inject_sign_flip {
        vc.fault = Some(Fault::FlipGammaBar12);
    }
    let report = validate(&vc);
    for c in &report.checks {
        eprintln!(
            "[{}] {} measured {:.3e} tolerance {:.1e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.tolerance
        );
    }
    let out = output_path(cfg, &args.out)?;
    with_output(out.as_deref(), |w| {
        serde_json::to_writer_pretty(&mut *w, &report)?;
        writeln!(w)?;
        Ok(())
    })?;
    Ok(report.passed)
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match &cli.command {
        Command::Point(args) => run_point(&cfg, args)?,
        Command::Fig1(args) => {
            let spec = scan_spec(&cfg, args, SweepSpec::fig1(15.0, 1.0))?;
            let result = run_fig1_sweep(&spec)?;
            emit_sweep(
                &result,
                output_path(&cfg, &args.run.out)?,
                cfg.pick(args.gnuplot.clone(), "gnuplot")?,
            )?;
        }
        Command::Detuned(args) => {
            let spec = scan_spec(&cfg, args, SweepSpec::detuned(15.0, 5.0))?;
            let result = run_detuned_peak_scan(&spec)?;
            emit_sweep(
                &result,
                output_path(&cfg, &args.run.out)?,
                cfg.pick(args.gnuplot.clone(), "gnuplot")?,
            )?;
        }
        Command::Fig2(args) => run_fig2(&cfg, args)?,
        Command::Validate(args) => return run_validate(&cfg, args),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
