// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Cross-checks between the independent descriptions of the system.
//!
//! Each check reports the worst measured deviation next to the tolerance it
//! was held to, so a report is useful even when everything passes.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dressed::{analytic_steady_state, to_dressed_basis, Coupling, DephasingConvention, DressedParams, XState};
use crate::entanglement::{concurrence_general, concurrence_xstate};
use crate::error::Result;
use crate::liouvillian::{
    build_full_generator, build_secular_generator, secular_generator_from_dressed, SecularOptions, SecularVariant,
};
use crate::matrix::{ComplexMatrix, DensityDefects, C64};
use crate::params::SystemParams;
use crate::solver::{evolve, steady_state, Tolerances};

/// Deliberate defects for exercising the suite itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// Flip the sign of γ̄₁₂ in the secular generators (not in the closed form).
    FlipGammaBar12,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationConfig {
    pub seed: u64,
    /// Random resonant parameter points per secular-vs-analytic check.
    pub secular_samples: usize,
    pub concurrence_samples: usize,
    pub unitary_samples: usize,
    /// Δ₀ ladder for the full-vs-secular convergence check.
    pub convergence_deltas: Vec<f64>,
    pub tolerances: Tolerances,
    pub fault: Option<Fault>,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed_2026,
            secular_samples: 100,
            concurrence_samples: 1000,
            unitary_samples: 100,
            convergence_deltas: vec![25.0, 50.0, 100.0, 200.0],
            tolerances: Tolerances::default(),
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Worst deviation seen (or the measured quantity for threshold checks).
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn at_most(name: &str, measured: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed: measured.is_finite() && measured <= tolerance,
            measured,
            tolerance,
            detail,
        }
    }

    fn failed(name: &str, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed: false,
            measured: f64::NAN,
            tolerance,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs every check; failures are recorded, never raised.
pub fn validate(config: &ValidationConfig) -> ValidationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();
    for coupling in [Coupling::Mutual, Coupling::Cascade] {
        for convention in [DephasingConvention::Quarter, DephasingConvention::FullModel] {
            checks.push(secular_vs_analytic(config, coupling, convention, &mut rng));
        }
    }
    checks.extend(convergence(config));
    checks.push(xstate_concurrence_equivalence(config.concurrence_samples, &mut rng));
    checks.push(local_unitary_invariance(config.unitary_samples, &mut rng));
    checks.extend(physicality(config, &mut rng));
    checks.push(off_resonance_decoupling(&config.tolerances));
    let passed = checks.iter().all(|c| c.passed);
    ValidationReport {
        seed: config.seed,
        passed,
        checks,
    }
}

/// A random point on the Ω = Δ crossing.
pub fn random_resonant_params<R: Rng>(rng: &mut R) -> SystemParams {
    let gamma1 = rng.gen_range(0.2..3.0);
    let gamma2 = rng.gen_range(0.2..3.0);
    let omega = rng.gen_range(10.0..200.0);
    let cos2theta = rng.gen_range(0.05..0.95);
    SystemParams::at_resonance(gamma1, gamma2, omega, cos2theta)
}

fn variant_of(coupling: Coupling) -> SecularVariant {
    match coupling {
        Coupling::Mutual => SecularVariant::ResonantMutual,
        Coupling::Cascade => SecularVariant::ResonantCascade,
    }
}

/// Largest elementwise gap between the secular null-space state and the
/// closed form at one parameter point.
pub fn secular_analytic_gap(
    params: &SystemParams,
    coupling: Coupling,
    convention: DephasingConvention,
    tol: &Tolerances,
    fault: Option<Fault>,
) -> Result<f64> {
    let gamma12 = params.coupling()?.gamma12;
    let dp = DressedParams::with_convention(params, gamma12, convention)?;
    let mut generator_dp = dp;
    if fault == Some(Fault::FlipGammaBar12) {
        generator_dp.gamma_bar12 = -generator_dp.gamma_bar12;
    }
    let generator = secular_generator_from_dressed(&generator_dp, variant_of(coupling))?;
    let numeric = steady_state(&generator, tol)?.rho;
    let analytic = analytic_steady_state(&dp, coupling)?.to_matrix();
    Ok(numeric.max_abs_diff(&analytic))
}

fn secular_vs_analytic<R: Rng>(
    config: &ValidationConfig,
    coupling: Coupling,
    convention: DephasingConvention,
    rng: &mut R,
) -> Check {
    let name = format!("secular_vs_analytic_{}_{}", coupling_name(coupling), convention);
    let tolerance = 1e-10;
    let mut worst = 0.0f64;
    for _ in 0..config.secular_samples {
        let p = random_resonant_params(rng);
        match secular_analytic_gap(&p, coupling, convention, &config.tolerances, config.fault) {
            Ok(gap) => worst = worst.max(gap),
            Err(e) => return Check::failed(&name, tolerance, format!("{e} at {p:?}")),
        }
    }
    Check::at_most(
        &name,
        worst,
        tolerance,
        format!("{} random resonant points", config.secular_samples),
    )
}

fn coupling_name(c: Coupling) -> &'static str {
    match c {
        Coupling::Mutual => "mutual",
        Coupling::Cascade => "cascade",
    }
}

/// Full-model steady state at Ω₀ = Δ₀ (γ₁ = γ₂ = 1, Δ_L = 0) rotated into the
/// dressed basis, against the closed form; returns the largest elementwise gap.
pub fn full_vs_analytic_gap(delta0: f64, convention: DephasingConvention, tol: &Tolerances) -> Result<f64> {
    let params = SystemParams {
        rabi0: delta0,
        delta0,
        ..SystemParams::default()
    };
    let full = steady_state(&build_full_generator(&params)?, tol)?.rho;
    let gamma12 = params.coupling()?.gamma12;
    let dp = DressedParams::with_convention(&params, gamma12, convention)?;
    let analytic = analytic_steady_state(&dp, Coupling::Mutual)?.to_matrix();
    Ok(to_dressed_basis(&full, dp.cos2theta).max_abs_diff(&analytic))
}

fn convergence(config: &ValidationConfig) -> Vec<Check> {
    let tolerance = 0.02;
    let mut gaps = Vec::new();
    for &d in &config.convergence_deltas {
        match full_vs_analytic_gap(d, DephasingConvention::FullModel, &config.tolerances) {
            Ok(g) => gaps.push(g),
            Err(e) => {
                return vec![Check::failed(
                    "full_vs_secular_convergence",
                    tolerance,
                    format!("Delta0 = {d}: {e}"),
                )]
            }
        }
    }
    let detail = config
        .convergence_deltas
        .iter()
        .zip(&gaps)
        .map(|(d, g)| format!("Delta0={d}: {g:.3e}"))
        .collect::<Vec<_>>()
        .join(", ");
    let monotone = gaps.windows(2).all(|w| w[1] < w[0]);
    let last = gaps.last().copied().unwrap_or(f64::NAN);
    vec![
        Check::at_most("full_vs_secular_convergence", last, tolerance, detail.clone()),
        Check {
            name: "full_vs_secular_monotone".into(),
            passed: monotone,
            measured: if monotone { 0.0 } else { 1.0 },
            tolerance: 0.0,
            detail,
        },
    ]
}

/// A random X state: Dirichlet-like populations and |ρ₂₃| < √(ρ₂₂ρ₃₃).
pub fn random_xstate<R: Rng>(rng: &mut R) -> XState {
    let w: [f64; 4] = std::array::from_fn(|_| -rng.gen_range(1e-3f64..1.0).ln());
    let s: f64 = w.iter().sum();
    let [rho11, rho22, rho33, rho44] = w.map(|x| x / s);
    let rho23 = rng.gen_range(-1.0..1.0) * (rho22 * rho33).sqrt();
    XState {
        rho11,
        rho22,
        rho33,
        rho44,
        rho23,
    }
}

fn xstate_concurrence_equivalence<R: Rng>(samples: usize, rng: &mut R) -> Check {
    let name = "concurrence_xstate_equivalence";
    let tolerance = 1e-12;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let x = random_xstate(rng);
        match concurrence_general(&x.to_matrix()) {
            Ok(c) => worst = worst.max((c - concurrence_xstate(&x)).abs()),
            Err(e) => return Check::failed(name, tolerance, format!("{e} for {x:?}")),
        }
    }
    Check::at_most(name, worst, tolerance, format!("{samples} random X states"))
}

fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A random state of rank 1, 2 or 4: A·A†/tr with A complex 4×k.
pub fn random_density_matrix<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let rank = [1, 2, 4][rng.gen_range(0..3)];
    let a = ComplexMatrix::from_fn(4, rank, |_, _| random_complex(rng));
    let m = &a * &a.dagger();
    let tr = m.trace();
    m.scale(C64::new(1.0, 0.0) / tr).hermitian_part()
}

/// A Haar-ish random 2×2 unitary from Euler angles and a global phase.
pub fn random_unitary2<R: Rng>(rng: &mut R) -> ComplexMatrix {
    let theta: f64 = rng.gen_range(0.0..PI / 2.0);
    let (a, b, g) = (
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..2.0 * PI),
    );
    let e = |phi: f64| C64::from_polar(1.0, phi);
    let (ct, st) = (theta.cos(), theta.sin());
    ComplexMatrix::from_fn(2, 2, |i, j| {
        e(a) * match (i, j) {
            (0, 0) => e(b) * ct,
            (0, 1) => e(g) * st,
            (1, 0) => -e(-g) * st,
            _ => e(-b) * ct,
        }
    })
}

fn local_unitary_invariance<R: Rng>(samples: usize, rng: &mut R) -> Check {
    let name = "concurrence_local_unitary_invariance";
    let tolerance = 1e-10;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let rho = random_density_matrix(rng);
        let u = random_unitary2(rng).kron(&random_unitary2(rng));
        let rotated = (&(&u * &rho) * &u.dagger()).hermitian_part();
        match (concurrence_general(&rho), concurrence_general(&rotated)) {
            (Ok(a), Ok(b)) => worst = worst.max((a - b).abs()),
            (Err(e), _) | (_, Err(e)) => return Check::failed(name, tolerance, e.to_string()),
        }
    }
    Check::at_most(name, worst, tolerance, format!("{samples} random states and U1 x U2"))
}

/// Steady states from every producer (full model, secular null space, closed
/// form) on a random sample; returns the worst invariants seen.
pub fn physicality_sample<R: Rng>(samples: usize, tol: &Tolerances, rng: &mut R) -> Result<DensityDefects> {
    let mut worst = DensityDefects {
        trace_error: 0.0,
        hermiticity_error: 0.0,
        min_eigenvalue: f64::INFINITY,
    };
    let mut absorb = |rho: &ComplexMatrix| {
        let d = DensityDefects::of(rho);
        worst.trace_error = worst.trace_error.max(d.trace_error);
        worst.hermiticity_error = worst.hermiticity_error.max(d.hermiticity_error);
        worst.min_eigenvalue = worst.min_eigenvalue.min(d.min_eigenvalue);
    };
    for _ in 0..samples {
        let off = SystemParams {
            gamma2: rng.gen_range(0.2..5.0),
            rabi0: rng.gen_range(0.0..40.0),
            delta0: rng.gen_range(0.0..40.0),
            delta_l: rng.gen_range(-10.0..10.0),
            ..SystemParams::default()
        };
        absorb(&steady_state(&build_full_generator(&off)?, tol)?.rho);

        let on = random_resonant_params(rng);
        absorb(&steady_state(&build_full_generator(&on)?, tol)?.rho);
        for coupling in [Coupling::Mutual, Coupling::Cascade] {
            let opts = SecularOptions {
                resonance_rel_tol: tol.resonance_rel,
                ..SecularOptions::default()
            };
            absorb(&steady_state(&build_secular_generator(&on, variant_of(coupling), &opts)?, tol)?.rho);
            let dp = DressedParams::with_convention(&on, on.coupling()?.gamma12, opts.convention)?;
            absorb(&analytic_steady_state(&dp, coupling)?.to_matrix());
        }
    }
    Ok(worst)
}

fn physicality<R: Rng>(config: &ValidationConfig, rng: &mut R) -> Vec<Check> {
    match physicality_sample(config.secular_samples, &config.tolerances, rng) {
        Ok(d) => vec![
            Check::at_most("physicality_trace", d.trace_error, 1e-12, String::new()),
            Check::at_most("physicality_hermiticity", d.hermiticity_error, 1e-12, String::new()),
            Check::at_most(
                "physicality_negativity",
                -d.min_eigenvalue,
                1e-8,
                format!("min eigenvalue {:.3e}", d.min_eigenvalue),
            ),
        ],
        Err(e) => vec![Check::failed("physicality", 0.0, e.to_string())],
    }
}

/// Full model at Δ₀ = 100, Ω₀ = 50 and the off-resonance secular evolution.
fn off_resonance_decoupling(tol: &Tolerances) -> Check {
    let name = "off_resonance_decoupling";
    let tolerance = 0.01;
    let run = || -> Result<(f64, f64, f64)> {
        let p = SystemParams {
            rabi0: 50.0,
            delta0: 100.0,
            ..SystemParams::default()
        };
        let rho = steady_state(&build_full_generator(&p)?, tol)?.rho;
        let conc = concurrence_general(&rho)?;
        let excited1 = rho.get(0, 0).re + rho.get(1, 1).re;

        let opts = SecularOptions::default();
        let g = build_secular_generator(&p, SecularVariant::OffResonance, &opts)?;
        let mut rho0 = ComplexMatrix::zeros(4, 4);
        rho0.set(0, 0, C64::new(1.0, 0.0));
        let late = evolve(&g, &rho0, 20.0, 0.5, tol)?;
        let secular_excited1 = late.get(0, 0).re + late.get(1, 1).re;
        Ok((conc, excited1, secular_excited1))
    };
    match run() {
        Ok((c, e, s)) => Check::at_most(
            name,
            c.max(e).max(s),
            tolerance,
            format!("concurrence {c:.3e}, atom-1 excited {e:.3e}, secular atom-1 excited after t=20: {s:.3e}"),
        ),
        Err(e) => Check::failed(name, tolerance, e.to_string()),
    }
}
