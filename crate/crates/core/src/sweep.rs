// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps over steady-state concurrence, with CSV output.
//!
//! Grid points are independent and are evaluated on a rayon pool; rows are
//! always returned in grid order (first axis slowest), so output files are
//! reproducible bit for bit.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dressed::{analytic_steady_state, Coupling, DephasingConvention, DressedParams};
use crate::entanglement::{concurrence_general, concurrence_xstate};
use crate::error::{Error, Result};
use crate::liouvillian::{build_full_generator, secular_generator_from_dressed, SecularVariant};
use crate::matrix::ComplexMatrix;
use crate::params::SystemParams;
use crate::solver::{steady_state, Tolerances};

/// Column order of every sweep CSV after the swept-axis columns.
pub const CSV_VALUE_COLUMNS: [&str; 7] = [
    "concurrence",
    "rho11",
    "rho22",
    "rho33",
    "rho44",
    "abs_rho23",
    "residual",
];

/// Which description of the system a sweep evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Numerical steady state of the full master equation (bare basis).
    Full,
    /// Closed-form X state, mutual coupling (dressed basis).
    SecularMutual,
    /// Closed-form X state, cascaded coupling (dressed basis).
    SecularCascade,
}

impl Model {
    pub fn coupling(self) -> Option<Coupling> {
        match self {
            Model::Full => None,
            Model::SecularMutual => Some(Coupling::Mutual),
            Model::SecularCascade => Some(Coupling::Cascade),
        }
    }

    pub fn basis_label(self) -> &'static str {
        match self {
            Model::Full => "bare",
            _ => "dressed",
        }
    }
}

impl FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.replace('-', "_").as_str() {
            "full" => Ok(Model::Full),
            "secular_mutual" | "mutual" => Ok(Model::SecularMutual),
            "secular_cascade" | "cascade" => Ok(Model::SecularCascade),
            _ => Err(format!("unknown model '{s}' (full | secular_mutual | secular_cascade)")),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Full => "full",
            Model::SecularMutual => "secular_mutual",
            Model::SecularCascade => "secular_cascade",
        })
    }
}

/// A sweepable quantity: any [`SystemParams`] field, or the derived pair
/// (α, cos²θ) used for resonant surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Gamma1,
    Gamma2,
    Rabi0,
    Delta0,
    DeltaL,
    Kr12,
    Cos2eta,
    /// α = (γ₁ − γ₂)/(γ₁ + γ₂) at fixed γ₁ + γ₂ = 2.
    Alpha,
    /// Dressing cos²θ at the Ω = Δ crossing.
    Cos2theta,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Gamma1 => "gamma1",
            Axis::Gamma2 => "gamma2",
            Axis::Rabi0 => "rabi0",
            Axis::Delta0 => "delta0",
            Axis::DeltaL => "deltaL",
            Axis::Kr12 => "kr12",
            Axis::Cos2eta => "cos2eta",
            Axis::Alpha => "alpha",
            Axis::Cos2theta => "cos2theta",
        }
    }

    fn is_derived(self) -> bool {
        matches!(self, Axis::Alpha | Axis::Cos2theta)
    }
}

impl FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let all = [
            Axis::Gamma1,
            Axis::Gamma2,
            Axis::Rabi0,
            Axis::Delta0,
            Axis::DeltaL,
            Axis::Kr12,
            Axis::Cos2eta,
            Axis::Alpha,
            Axis::Cos2theta,
        ];
        all.into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown axis '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub axis: Axis,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl AxisSpec {
    pub fn new(axis: Axis, min: f64, max: f64, points: usize) -> Self {
        Self { axis, min, max, points }
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }

    /// Evenly spaced grid including both end points.
    pub fn values(&self) -> Vec<f64> {
        let step = self.step();
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.max
                } else {
                    self.min + step * k as f64
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: SystemParams,
    pub axes: Vec<AxisSpec>,
    pub model: Model,
    pub convention: DephasingConvention,
    pub tolerances: Tolerances,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Ω = Δ used when a cos²θ axis places points on the level crossing.
    pub resonant_omega: f64,
}

impl SweepSpec {
    pub fn new(base: SystemParams, axes: Vec<AxisSpec>, model: Model) -> Self {
        Self {
            base,
            axes,
            model,
            convention: DephasingConvention::Quarter,
            tolerances: Tolerances::default(),
            threads: None,
            resonant_omega: 50.0,
        }
    }

    /// Ω₀ ∈ [0, 35γ₁] over 351 points, full model, Δ_L = 0.
    pub fn fig1(delta0: f64, gamma2: f64) -> Self {
        let base = SystemParams {
            gamma2,
            delta0,
            ..SystemParams::default()
        };
        Self::new(base, vec![AxisSpec::new(Axis::Rabi0, 0.0, 35.0, 351)], Model::Full)
    }

    /// α ∈ [−0.95, 0.95] × cos²θ ∈ [0.02, 0.98], 81 × 81, closed-form model.
    pub fn fig2(coupling: Coupling) -> Self {
        let model = match coupling {
            Coupling::Mutual => Model::SecularMutual,
            Coupling::Cascade => Model::SecularCascade,
        };
        Self::new(
            SystemParams::default(),
            vec![
                AxisSpec::new(Axis::Alpha, -0.95, 0.95, 81),
                AxisSpec::new(Axis::Cos2theta, 0.02, 0.98, 81),
            ],
            model,
        )
    }

    /// Like [`SweepSpec::fig1`] with a detuned laser.
    pub fn detuned(delta0: f64, delta_l: f64) -> Self {
        let mut spec = Self::fig1(delta0, 1.0);
        spec.base.delta_l = delta_l;
        spec
    }

    pub fn with_points(mut self, points: usize) -> Self {
        for a in &mut self.axes {
            a.points = points;
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() {
            return Err(Error::InvalidSweep("no swept axis".into()));
        }
        for (k, a) in self.axes.iter().enumerate() {
            if a.points < 2 {
                return Err(Error::InvalidSweep(format!(
                    "axis {} needs at least 2 points",
                    a.axis.name()
                )));
            }
            if !(a.min.is_finite() && a.max.is_finite()) || a.max <= a.min {
                return Err(Error::InvalidSweep(format!(
                    "axis {} needs finite min < max (got {}..{})",
                    a.axis.name(),
                    a.min,
                    a.max
                )));
            }
            if self.axes[..k].iter().any(|b| b.axis == a.axis) {
                return Err(Error::InvalidSweep(format!("axis {} listed twice", a.axis.name())));
            }
            if a.axis == Axis::Alpha && (a.min <= -1.0 || a.max >= 1.0) {
                return Err(Error::InvalidSweep("alpha must stay inside (-1, 1)".into()));
            }
        }
        let derived = self.axes.iter().any(|a| a.axis.is_derived());
        if derived && self.model == Model::Full {
            return Err(Error::InvalidSweep(
                "alpha/cos2theta axes need a secular model (secular_mutual | secular_cascade)".into(),
            ));
        }
        if self.resonant_omega <= 0.0 {
            return Err(Error::InvalidSweep("resonant omega must be positive".into()));
        }
        Ok(())
    }

    pub fn grid_size(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    /// Grid coordinates in row order, first axis slowest.
    pub fn grid(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = vec![Vec::new()];
        for axis in &self.axes {
            let vals = axis.values();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    vals.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(*v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Parameters of the grid point at `coords`.
    pub fn params_at(&self, coords: &[f64]) -> SystemParams {
        let mut p = self.base;
        let mut cos2theta = None;
        for (axis, &v) in self.axes.iter().zip(coords) {
            match axis.axis {
                Axis::Gamma1 => p.gamma1 = v,
                Axis::Gamma2 => p.gamma2 = v,
                Axis::Rabi0 => p.rabi0 = v,
                Axis::Delta0 => p.delta0 = v,
                Axis::DeltaL => p.delta_l = v,
                Axis::Kr12 => p.kr12 = v,
                Axis::Cos2eta => p.cos2eta = v,
                Axis::Alpha => {
                    p.gamma1 = 1.0 + v;
                    p.gamma2 = 1.0 - v;
                }
                Axis::Cos2theta => cos2theta = Some(v),
            }
        }
        if let Some(c2) = cos2theta {
            let r = SystemParams::at_resonance(p.gamma1, p.gamma2, self.resonant_omega, c2);
            p.rabi0 = r.rabi0;
            p.delta0 = r.delta0;
            p.delta_l = r.delta_l;
        }
        p
    }
}

/// Steady-state observables at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointResult {
    pub concurrence: f64,
    /// Diagonal of ρ in the model's basis.
    pub populations: [f64; 4],
    /// |ρ₂₃| in the model's basis.
    pub abs_rho23: f64,
    pub residual: f64,
    #[serde(skip)]
    pub rho: ComplexMatrix,
}

/// Evaluates one point with the requested model.
pub fn evaluate_point(
    params: &SystemParams,
    model: Model,
    convention: DephasingConvention,
    tol: &Tolerances,
) -> Result<PointResult> {
    match model.coupling() {
        None => {
            let generator = build_full_generator(params)?;
            let ss = steady_state(&generator, tol)?;
            let rho = ss.rho;
            Ok(PointResult {
                concurrence: concurrence_general(&rho)?,
                populations: std::array::from_fn(|k| rho.get(k, k).re),
                abs_rho23: rho.get(1, 2).norm(),
                residual: ss.residual,
                rho,
            })
        }
        Some(coupling) => {
            let mismatch = params.resonance_mismatch();
            if mismatch > tol.resonance_rel {
                return Err(Error::OffResonance {
                    omega: params.generalized_rabi(),
                    delta: params.total_detuning(),
                    mismatch,
                });
            }
            let gamma12 = params.coupling()?.gamma12;
            let dp = DressedParams::with_convention(params, gamma12, convention)?;
            let x = analytic_steady_state(&dp, coupling)?;
            let variant = match coupling {
                Coupling::Mutual => SecularVariant::ResonantMutual,
                Coupling::Cascade => SecularVariant::ResonantCascade,
            };
            let rho = x.to_matrix();
            let residual = secular_generator_from_dressed(&dp, variant)?
                .matrix
                .apply(&rho.vectorize())
                .norm();
            Ok(PointResult {
                concurrence: concurrence_xstate(&x),
                populations: x.populations(),
                abs_rho23: x.rho23.abs(),
                residual,
                rho,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    pub concurrence: f64,
    pub populations: [f64; 4],
    pub abs_rho23: f64,
    pub residual: f64,
}

/// Location of the largest concurrence on the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Peak {
    pub index: usize,
    pub coords: Vec<f64>,
    pub value: f64,
    /// Three-point parabolic refinement along a 1-D axis, within one step of
    /// the grid maximum.
    pub refined: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Plateau {
    pub from: f64,
    pub to: f64,
    pub mean: f64,
    pub std_dev: f64,
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    Generic,
    Fig1,
    Fig2,
    Detuned,
}

impl SweepKind {
    pub fn name(self) -> &'static str {
        match self {
            SweepKind::Generic => "sweep",
            SweepKind::Fig1 => "fig1",
            SweepKind::Fig2 => "fig2",
            SweepKind::Detuned => "detuned",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub kind: SweepKind,
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub peak: Option<Peak>,
    pub plateau: Option<Plateau>,
    /// Ω₀ of the Ω = Δ crossing for Rabi-frequency scans.
    pub expected_peak: Option<f64>,
    pub notes: Vec<String>,
}

impl SweepResult {
    pub fn axis_names(&self) -> Vec<&'static str> {
        self.spec.axes.iter().map(|a| a.axis.name()).collect()
    }

    pub fn concurrences(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.concurrence).collect()
    }

    /// Whether the grid maximum lies within one step of `expected_peak`.
    pub fn peak_within_one_step(&self) -> Option<bool> {
        let peak = self.peak.as_ref()?;
        let expected = self.expected_peak?;
        let step = self.spec.axes[0].step();
        Some((peak.coords[0] - expected).abs() <= step * (1.0 + 1e-9))
    }
}

/// Evaluates every grid point of `spec`.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let grid = spec.grid();
    let eval = |(index, coords): (usize, Vec<f64>)| -> Result<SweepRow> {
        let params = spec.params_at(&coords);
        let point =
            evaluate_point(&params, spec.model, spec.convention, &spec.tolerances).map_err(|e| Error::RowFailed {
                index,
                params: Box::new(params),
                source: Box::new(e),
            })?;
        let values = [point.concurrence, point.abs_rho23, point.residual];
        if values.iter().chain(point.populations.iter()).any(|v| !v.is_finite()) {
            return Err(Error::RowFailed {
                index,
                params: Box::new(params),
                source: Box::new(Error::NonPhysical("non-finite output".into())),
            });
        }
        Ok(SweepRow {
            coords,
            concurrence: point.concurrence,
            populations: point.populations,
            abs_rho23: point.abs_rho23,
            residual: point.residual,
        })
    };
    let run = || -> Result<Vec<SweepRow>> { grid.into_par_iter().enumerate().map(eval).collect() };
    let rows = match spec.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidSweep(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };
    let peak = grid_peak(spec, &rows);
    Ok(SweepResult {
        kind: SweepKind::Generic,
        spec: spec.clone(),
        rows,
        peak,
        plateau: None,
        expected_peak: None,
        notes: Vec::new(),
    })
}

fn grid_peak(spec: &SweepSpec, rows: &[SweepRow]) -> Option<Peak> {
    let ys: Vec<f64> = rows.iter().map(|r| r.concurrence).collect();
    if spec.axes.len() == 1 {
        let xs: Vec<f64> = rows.iter().map(|r| r.coords[0]).collect();
        find_peak_1d(&xs, &ys)
    } else {
        let index = argmax(&ys)?;
        Some(Peak {
            index,
            coords: rows[index].coords.clone(),
            value: ys[index],
            refined: None,
        })
    }
}

fn argmax(ys: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, &y) in ys.iter().enumerate() {
        if best.is_none_or(|b| y > ys[b]) {
            best = Some(k);
        }
    }
    best
}

/// Grid argmax (first occurrence) plus three-point parabolic refinement,
/// clamped to one grid step either side.
pub fn find_peak_1d(xs: &[f64], ys: &[f64]) -> Option<Peak> {
    let i = argmax(ys)?;
    let mut refined = xs[i];
    if i > 0 && i + 1 < ys.len() {
        let (ym, y0, yp) = (ys[i - 1], ys[i], ys[i + 1]);
        let h = 0.5 * (xs[i + 1] - xs[i - 1]);
        let curvature = ym - 2.0 * y0 + yp;
        if curvature < 0.0 {
            let shift = 0.5 * h * (ym - yp) / curvature;
            refined = xs[i] + shift.clamp(-h, h);
        }
    }
    Some(Peak {
        index: i,
        coords: vec![xs[i]],
        value: ys[i],
        refined: Some(refined),
    })
}

fn plateau(rows: &[SweepRow], from: f64, to: f64) -> Option<Plateau> {
    let vals: Vec<f64> = rows
        .iter()
        .filter(|r| r.coords[0] >= from && r.coords[0] <= to)
        .map(|r| r.concurrence)
        .collect();
    if vals.is_empty() {
        return None;
    }
    let n = vals.len() as f64;
    let mean = vals.iter().sum::<f64>() / n;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Some(Plateau {
        from,
        to,
        mean,
        std_dev: var.sqrt(),
        samples: vals.len(),
    })
}

fn check_rabi_scan(spec: &SweepSpec) -> Result<()> {
    if spec.axes.len() != 1 || spec.axes[0].axis != Axis::Rabi0 {
        return Err(Error::InvalidSweep(
            "Rabi-frequency scans sweep exactly one axis: rabi0".into(),
        ));
    }
    if spec.model != Model::Full {
        return Err(Error::InvalidSweep("Rabi-frequency scans use the full model".into()));
    }
    Ok(())
}

/// Concurrence versus Ω₀ with the full model; reports the peak, the expected
/// Ω = Δ location and the plateau over Ω₀ ∈ [2γ₁, 0.8Δ₀].
pub fn run_fig1_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    check_rabi_scan(spec)?;
    let mut result = run_sweep(spec)?;
    result.kind = SweepKind::Fig1;
    result.expected_peak = spec.base.resonant_rabi0();
    if spec.base.delta0 > 0.0 {
        result.plateau = plateau(&result.rows, 2.0 * spec.base.gamma1, 0.8 * spec.base.delta0);
    }
    Ok(result)
}

/// Ω₀ scan with a detuned laser; the crossing sits at Ω₀ = √(Δ² − Δ_L²).
pub fn run_detuned_peak_scan(spec: &SweepSpec) -> Result<SweepResult> {
    let mut result = run_fig1_sweep(spec)?;
    result.kind = SweepKind::Detuned;
    result.plateau = None;
    if result.expected_peak.is_none() {
        result.notes.push(format!(
            "no resonance reachable: Delta = {} must exceed |DeltaL| = {}",
            spec.base.total_detuning(),
            spec.base.delta_l.abs()
        ));
    }
    Ok(result)
}

/// Closed-form concurrence surface over (α, cos²θ) at Ω = Δ.
pub fn run_fig2_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    let axes: Vec<Axis> = spec.axes.iter().map(|a| a.axis).collect();
    if axes != [Axis::Alpha, Axis::Cos2theta] {
        return Err(Error::InvalidSweep("fig2 sweeps exactly alpha then cos2theta".into()));
    }
    if spec.model == Model::Full {
        return Err(Error::InvalidSweep(
            "fig2 uses secular_mutual or secular_cascade".into(),
        ));
    }
    let mut result = run_sweep(spec)?;
    result.kind = SweepKind::Fig2;
    Ok(result)
}

/// Shortest round-trip text for `v`; exponent form for very small or large
/// magnitudes, and no negative zero.
pub fn fmt_num(v: f64) -> String {
    let v = v + 0.0;
    let a = v.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), fmt_num)
}

/// Writes `result` as CSV: `#` metadata lines, a header row, then one row per
/// grid point with the swept values followed by [`CSV_VALUE_COLUMNS`].
pub fn write_csv<W: Write>(result: &SweepResult, mut w: W) -> Result<()> {
    let spec = &result.spec;
    let p = &spec.base;
    writeln!(w, "# dissent {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# sweep: {}", result.kind.name())?;
    writeln!(w, "# model: {}", spec.model)?;
    writeln!(w, "# dephasing: {}", spec.convention)?;
    writeln!(w, "# basis: {}", spec.model.basis_label())?;
    writeln!(
        w,
        "# params: gamma1={} gamma2={} rabi0={} delta0={} deltaL={} kr12={} cos2eta={} omega12_override={} gamma12_override={}",
        fmt_num(p.gamma1),
        fmt_num(p.gamma2),
        fmt_num(p.rabi0),
        fmt_num(p.delta0),
        fmt_num(p.delta_l),
        fmt_num(p.kr12),
        fmt_num(p.cos2eta),
        fmt_opt(p.omega12_override),
        fmt_opt(p.gamma12_override)
    )?;
    if let Ok(cc) = p.coupling() {
        writeln!(
            w,
            "# coupling: omega12={} gamma12={}",
            fmt_num(cc.omega12),
            fmt_num(cc.gamma12)
        )?;
    }
    if spec.axes.iter().any(|a| a.axis == Axis::Cos2theta) {
        writeln!(w, "# resonant_omega: {}", spec.resonant_omega)?;
    }
    for a in &spec.axes {
        writeln!(
            w,
            "# axis: {} min={} max={} points={}",
            a.axis.name(),
            a.min,
            a.max,
            a.points
        )?;
    }
    if let Some(peak) = &result.peak {
        let coords: Vec<String> = result
            .axis_names()
            .iter()
            .zip(&peak.coords)
            .map(|(n, v)| format!("{n}={}", fmt_num(*v)))
            .collect();
        write!(w, "# peak: {} concurrence={}", coords.join(" "), fmt_num(peak.value))?;
        if let Some(r) = peak.refined {
            write!(w, " refined={}", fmt_num(r))?;
        }
        writeln!(w)?;
    }
    if matches!(result.kind, SweepKind::Fig1 | SweepKind::Detuned) {
        writeln!(w, "# expected_peak: rabi0={}", fmt_opt(result.expected_peak))?;
    }
    if let Some(pl) = &result.plateau {
        writeln!(
            w,
            "# plateau: from={} to={} mean={} std={} samples={}",
            fmt_num(pl.from),
            fmt_num(pl.to),
            fmt_num(pl.mean),
            fmt_num(pl.std_dev),
            pl.samples
        )?;
    }
    for note in &result.notes {
        writeln!(w, "# note: {note}")?;
    }
    let mut header: Vec<&str> = result.axis_names();
    header.extend(CSV_VALUE_COLUMNS);
    writeln!(w, "{}", header.join(","))?;
    for row in &result.rows {
        let mut fields: Vec<String> = row.coords.iter().map(|&v| fmt_num(v)).collect();
        fields.push(fmt_num(row.concurrence));
        fields.extend(row.populations.iter().map(|&v| fmt_num(v)));
        fields.push(fmt_num(row.abs_rho23));
        fields.push(fmt_num(row.residual));
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

/// A gnuplot script that plots the CSV written for `result`.
pub fn gnuplot_script(result: &SweepResult, csv_path: &str) -> String {
    let names = result.axis_names();
    let mut s =
        String::from("set datafile separator ','\nset datafile commentschars '#'\nset key autotitle columnhead\n");
    match names.len() {
        1 => {
            s.push_str(&format!("set xlabel '{}'\nset ylabel 'concurrence'\n", names[0]));
            s.push_str(&format!("plot '{csv_path}' using 1:2 with lines\n"));
        }
        _ => {
            s.push_str(&format!(
                "set xlabel '{}'\nset ylabel '{}'\nset zlabel 'concurrence'\nset pm3d map\n",
                names[0], names[1]
            ));
            s.push_str(&format!("splot '{csv_path}' using 1:2:3 with pm3d\n"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_values_include_end_points() {
        let a = AxisSpec::new(Axis::Rabi0, 0.0, 35.0, 351);
        let v = a.values();
        assert_eq!(v.len(), 351);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[350], 35.0);
        assert!((a.step() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn grid_is_row_major() {
        let spec = SweepSpec::fig2(Coupling::Mutual).with_points(3);
        let g = spec.grid();
        assert_eq!(g.len(), 9);
        assert_eq!(g[1], vec![-0.95, 0.5]);
        assert_eq!(g[3][0], 0.0);
    }

    #[test]
    fn derived_axes_land_on_resonance() {
        let spec = SweepSpec::fig2(Coupling::Cascade);
        let p = spec.params_at(&[-0.5, 0.8]);
        assert!((p.gamma1 - 0.5).abs() < 1e-15 && (p.gamma2 - 1.5).abs() < 1e-15);
        assert!(p.resonance_mismatch() < 1e-14);
    }

    #[test]
    fn spec_validation() {
        assert!(SweepSpec::fig1(15.0, 1.0).with_points(1).validate().is_err());
        let mut bad = SweepSpec::fig2(Coupling::Mutual);
        bad.model = Model::Full;
        assert!(bad.validate().is_err());
        let mut dup = SweepSpec::fig1(15.0, 1.0);
        dup.axes.push(dup.axes[0]);
        assert!(dup.validate().is_err());
        let mut empty = SweepSpec::fig1(15.0, 1.0);
        empty.axes[0].max = empty.axes[0].min;
        assert!(empty.validate().is_err());
    }

    #[test]
    fn peak_refinement_stays_within_a_step() {
        let xs: Vec<f64> = (0..11).map(|k| k as f64 * 0.5).collect();
        let ys: Vec<f64> = xs.iter().map(|x| -(x - 2.2f64).powi(2)).collect();
        let p = find_peak_1d(&xs, &ys).unwrap();
        assert_eq!(p.coords[0], 2.0);
        // Exact for a parabola.
        assert!((p.refined.unwrap() - 2.2).abs() < 1e-12);

        let edge = find_peak_1d(&[0.0, 1.0, 2.0], &[3.0, 2.0, 1.0]).unwrap();
        assert_eq!(edge.refined, Some(0.0));
    }

    #[test]
    fn secular_models_reject_off_resonant_points() {
        let p = SystemParams {
            rabi0: 3.0,
            delta0: 15.0,
            ..SystemParams::default()
        };
        let err = evaluate_point(
            &p,
            Model::SecularMutual,
            DephasingConvention::Quarter,
            &Tolerances::default(),
        );
        assert!(matches!(err, Err(Error::OffResonance { .. })));
    }

    #[test]
    fn rabi_scans_require_rabi_axis_and_full_model() {
        let spec = SweepSpec::fig2(Coupling::Mutual);
        assert!(run_fig1_sweep(&spec).is_err());
        let mut s = SweepSpec::fig1(15.0, 1.0);
        s.model = Model::SecularMutual;
        assert!(run_fig1_sweep(&s).is_err());
        assert!(run_fig2_sweep(&SweepSpec::fig1(15.0, 1.0)).is_err());
    }

    #[test]
    fn failed_row_carries_parameters() {
        let mut spec = SweepSpec::fig1(15.0, 1.0).with_points(3);
        spec.base.gamma12_override = Some(5.0);
        match run_sweep(&spec) {
            Err(Error::RowFailed { index, params, .. }) => {
                assert_eq!(index, 0);
                assert_eq!(params.gamma12_override, Some(5.0));
            }
            other => panic!("expected row failure, got {other:?}"),
        }
    }

    #[test]
    fn csv_layout() {
        let spec = SweepSpec::detuned(15.0, 5.0).with_points(5);
        let result = run_detuned_peak_scan(&spec).unwrap();
        let mut buf = Vec::new();
        write_csv(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], "rabi0,concurrence,rho11,rho22,rho33,rho44,abs_rho23,residual");
        assert_eq!(data.len(), 6);
        assert!(text.contains("# expected_peak: rabi0="));
        assert!(text.contains("# sweep: detuned"));
        assert!(data[1..].iter().all(|l| l.split(',').count() == 8));
    }

    #[test]
    fn number_formatting_round_trips() {
        for v in [
            0.0,
            -0.0,
            1.0,
            0.1,
            35.0,
            3.9e-17,
            -2.5e-9,
            1e20,
            0.0632,
            f64::MIN_POSITIVE,
        ] {
            let s = fmt_num(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(3.9e-17), "3.9e-17");
    }

    #[test]
    fn unreachable_resonance_is_noted() {
        let spec = SweepSpec::detuned(15.0, -20.0).with_points(4);
        let result = run_detuned_peak_scan(&spec).unwrap();
        assert!(result.expected_peak.is_none());
        assert!(result.notes[0].contains("no resonance reachable"));
        assert_eq!(result.peak_within_one_step(), None);
    }
}
