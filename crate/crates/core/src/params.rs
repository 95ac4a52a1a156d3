// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical parameters and the collective atom-atom coupling.
//!
//! Units: ħ = 1 and every rate or frequency is measured in units of γ₁ by
//! convention (γ₁ = 1 unless overridden). `2γᵢ` is the population relaxation
//! rate of atom `i`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One simulation point. Atom 2 is the laser-driven atom.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Decay rate of the undriven atom.
    pub gamma1: f64,
    /// Decay rate of the driven atom.
    pub gamma2: f64,
    /// Resonant Rabi frequency Ω₀ at the driven atom.
    pub rabi0: f64,
    /// Bare transition-frequency difference Δ₀ = ω₁ − ω₂.
    pub delta0: f64,
    /// Laser detuning Δ_L = ω₂ − ω_L.
    pub delta_l: f64,
    /// Dimensionless separation k·r₁₂; a quarter wavelength is π/2.
    pub kr12: f64,
    /// cos²η of the dipole orientation relative to the interatomic axis.
    pub cos2eta: f64,
    /// Replaces Ω₁₂ = Re U₁₂ when set.
    #[serde(default)]
    pub omega12_override: Option<f64>,
    /// Replaces γ₁₂ = −Im U₁₂ when set.
    #[serde(default)]
    pub gamma12_override: Option<f64>,
}

/// Orientation-averaged dipoles.
pub const COS2ETA_AVERAGED: f64 = 1.0 / 3.0;

/// Quarter-wavelength separation.
pub const KR12_QUARTER_WAVE: f64 = FRAC_PI_2;

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            gamma1: 1.0,
            gamma2: 1.0,
            rabi0: 0.0,
            delta0: 0.0,
            delta_l: 0.0,
            kr12: KR12_QUARTER_WAVE,
            cos2eta: COS2ETA_AVERAGED,
            omega12_override: None,
            gamma12_override: None,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("rabi0", self.rabi0),
            ("delta0", self.delta0),
            ("deltaL", self.delta_l),
            ("kr12", self.kr12),
            ("cos2eta", self.cos2eta),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite",
                });
            }
        }
        if self.gamma1 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "gamma1",
                value: self.gamma1,
                reason: "decay rate must be positive",
            });
        }
        if self.gamma2 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "gamma2",
                value: self.gamma2,
                reason: "decay rate must be positive",
            });
        }
        if self.kr12 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "kr12",
                value: self.kr12,
                reason: "separation must be positive (coupling is singular at zero)",
            });
        }
        if !(0.0..=1.0).contains(&self.cos2eta) {
            return Err(Error::InvalidParameter {
                name: "cos2eta",
                value: self.cos2eta,
                reason: "must lie in [0, 1]",
            });
        }
        Ok(())
    }

    /// Δ = Δ₀ + Δ_L.
    pub fn total_detuning(&self) -> f64 {
        self.delta0 + self.delta_l
    }

    /// Generalized Rabi frequency Ω = √(Ω₀² + Δ_L²).
    pub fn generalized_rabi(&self) -> f64 {
        self.rabi0.hypot(self.delta_l)
    }

    /// Relative mismatch |Ω − Δ| / max(|Ω|, |Δ|) of the level-crossing condition.
    pub fn resonance_mismatch(&self) -> f64 {
        let omega = self.generalized_rabi();
        let delta = self.total_detuning();
        let scale = omega.abs().max(delta.abs());
        if scale == 0.0 {
            0.0
        } else {
            (omega - delta).abs() / scale
        }
    }

    /// Ω₀ that puts the system on the Ω = Δ crossing, if reachable.
    pub fn resonant_rabi0(&self) -> Option<f64> {
        let delta = self.total_detuning();
        if delta <= 0.0 || delta <= self.delta_l.abs() {
            return None;
        }
        Some((delta * delta - self.delta_l * self.delta_l).sqrt())
    }

    /// A resonant point (Ω = Δ = `omega`) with the given dressing `cos²θ`.
    ///
    /// Δ_L = Ω(2cos²θ − 1), Ω₀ = Ω·sin 2θ and Δ₀ = Ω − Δ_L, so the dressed
    /// quantities recomputed from the result reproduce `cos2theta`.
    pub fn at_resonance(gamma1: f64, gamma2: f64, omega: f64, cos2theta: f64) -> Self {
        let delta_l = omega * (2.0 * cos2theta - 1.0);
        let rabi0 = 2.0 * omega * (cos2theta * (1.0 - cos2theta)).max(0.0).sqrt();
        Self {
            gamma1,
            gamma2,
            rabi0,
            delta0: omega - delta_l,
            delta_l,
            ..Self::default()
        }
    }

    /// The coupling actually used in simulation: U₁₂ from the geometry, with any overrides applied.
    pub fn coupling(&self) -> Result<CollectiveCoupling> {
        let mut coupling = compute_u12(self)?;
        if let Some(omega12) = self.omega12_override {
            coupling.omega12 = omega12;
        }
        if let Some(gamma12) = self.gamma12_override {
            coupling.gamma12 = gamma12;
        }
        if self.omega12_override.is_some() || self.gamma12_override.is_some() {
            coupling.u12 = Complex64::new(coupling.omega12, -coupling.gamma12);
        }
        Ok(coupling)
    }
}

/// Collective coupling U₁₂ and its two physical parts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CollectiveCoupling {
    pub u12: Complex64,
    /// Coherent dipole-dipole strength Ω₁₂ = Re U₁₂.
    pub omega12: f64,
    /// Cross-damping γ₁₂ = −Im U₁₂.
    pub gamma12: f64,
}

/// Evaluates the retarded dipole-dipole coupling
///
/// U₁₂ = −(3/2)√(γ₁γ₂) { (1 − cos²η)/(kr) + (1 − 3cos²η)[i/(kr)² − 1/(kr)³] } e^{ikr}
///
/// Overrides in `params` are ignored here; see [`SystemParams::coupling`].
pub fn compute_u12(params: &SystemParams) -> Result<CollectiveCoupling> {
    params.validate()?;
    let kr = params.kr12;
    let c2 = params.cos2eta;
    let far = Complex64::new((1.0 - c2) / kr, 0.0);
    let near = Complex64::new(-1.0 / kr.powi(3), 1.0 / kr.powi(2)) * (1.0 - 3.0 * c2);
    let phase = Complex64::from_polar(1.0, kr);
    let u12 = (far + near) * phase * (-1.5 * (params.gamma1 * params.gamma2).sqrt());
    Ok(CollectiveCoupling {
        u12,
        omega12: u12.re,
        gamma12: -u12.im,
    })
}
