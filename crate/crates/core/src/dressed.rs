// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Dressed-atom description of the driven atom and the closed-form X-state
//! steady state at the Ω = Δ level crossing.
//!
//! Dressed states of atom 2 are |+⟩ = cosθ|e⟩ + sinθ|g⟩ and
//! |−⟩ = sinθ|e⟩ − cosθ|g⟩ with cos²θ = ½ + Δ_L/(2Ω) and θ ∈ [0, π/2].
//! The dressed product basis is |1⟩ = |e₁+⟩, |2⟩ = |e₁−⟩, |3⟩ = |g₁+⟩,
//! |4⟩ = |g₁−⟩.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{c, Basis, ComplexMatrix};
use crate::operators::dressing_rotation;
use crate::params::SystemParams;

/// Normalization of the dressed-atom dephasing rate γ₀ multiplying the
/// R_z dissipator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DephasingConvention {
    /// γ₀ = (γ₂/4)·sin²2θ, so that γ₊ + γ₋ + 2γ₀ = γ₂.
    #[default]
    Quarter,
    /// γ₀ = γ₂·sin²2θ: the coefficient the secular reduction of the full
    /// master equation produces for R_z = ½(|+⟩⟨+| − |−⟩⟨−|). Steady states of
    /// the full model converge to this one as Δ grows.
    FullModel,
}

impl std::str::FromStr for DephasingConvention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quarter" => Ok(Self::Quarter),
            "full-model" | "full_model" => Ok(Self::FullModel),
            other => Err(format!("unknown dephasing convention '{other}' (quarter | full-model)")),
        }
    }
}

impl std::fmt::Display for DephasingConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Quarter => "quarter",
            Self::FullModel => "full-model",
        })
    }
}

/// Derived dressed-atom quantities and secular rates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DressedParams {
    pub gamma1: f64,
    pub gamma2: f64,
    /// Ω = √(Ω₀² + Δ_L²).
    pub omega: f64,
    /// Δ = Δ₀ + Δ_L.
    pub delta: f64,
    pub cos2theta: f64,
    pub gamma0: f64,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    /// γ̄₁₂ = γ₁₂ cos²θ.
    pub gamma_bar12: f64,
    /// γ = γ₁ + γ₀ + γ₊ + γ₋.
    pub gamma_total: f64,
    pub convention: DephasingConvention,
}

impl DressedParams {
    /// Builds the rates directly from the dressing angle.
    pub fn from_angle(
        gamma1: f64,
        gamma2: f64,
        cos2theta: f64,
        gamma12: f64,
        omega: f64,
        delta: f64,
        convention: DephasingConvention,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&cos2theta) {
            return Err(Error::InvalidParameter {
                name: "cos2theta",
                value: cos2theta,
                reason: "must lie in [0, 1]",
            });
        }
        let sin2theta = 1.0 - cos2theta;
        let sin2_2theta = 4.0 * cos2theta * sin2theta;
        let gamma0 = match convention {
            DephasingConvention::Quarter => 0.25 * gamma2 * sin2_2theta,
            DephasingConvention::FullModel => gamma2 * sin2_2theta,
        };
        let gamma_plus = gamma2 * cos2theta * cos2theta;
        let gamma_minus = gamma2 * sin2theta * sin2theta;
        Ok(Self {
            gamma1,
            gamma2,
            omega,
            delta,
            cos2theta,
            gamma0,
            gamma_plus,
            gamma_minus,
            gamma_bar12: gamma12 * cos2theta,
            gamma_total: gamma1 + gamma0 + gamma_plus + gamma_minus,
            convention,
        })
    }

    pub fn with_convention(params: &SystemParams, gamma12: f64, convention: DephasingConvention) -> Result<Self> {
        params.validate()?;
        let omega = params.generalized_rabi();
        if omega == 0.0 {
            return Err(Error::UndefinedDressing);
        }
        let cos2theta = (0.5 + params.delta_l / (2.0 * omega)).clamp(0.0, 1.0);
        Self::from_angle(
            params.gamma1,
            params.gamma2,
            cos2theta,
            gamma12,
            omega,
            params.total_detuning(),
            convention,
        )
    }

    /// α = (γ₁ − γ₂)/(γ₁ + γ₂).
    pub fn alpha(&self) -> f64 {
        (self.gamma1 - self.gamma2) / (self.gamma1 + self.gamma2)
    }

    pub fn basis(&self) -> Basis {
        Basis::Dressed {
            cos2theta: self.cos2theta,
        }
    }

    /// Denominator D of the mutually coupled solution.
    pub fn denominator_mutual(&self) -> f64 {
        let (g1, g0, gp, gm, gb, g) = self.rates();
        let gb2 = gb * gb;
        (g - g0).powi(2) * (g1 * (gp + gm) - gb2) + (gp + gm) * (g0 * g1 * (g - g0) + 4.0 * gm * gb2)
    }

    /// Denominator D′ of the cascaded solution.
    pub fn denominator_cascade(&self) -> f64 {
        let (g1, g0, gp, gm, gb, g) = self.rates();
        (gp + gm) * (g * g1 * (g - g0) + 2.0 * gm * gb * gb)
    }

    fn rates(&self) -> (f64, f64, f64, f64, f64, f64) {
        (
            self.gamma1,
            self.gamma0,
            self.gamma_plus,
            self.gamma_minus,
            self.gamma_bar12,
            self.gamma_total,
        )
    }
}

/// Dressed quantities with the default γ₀ = (γ₂/4)·sin²2θ.
pub fn dressed_params(params: &SystemParams, gamma12: f64) -> Result<DressedParams> {
    DressedParams::with_convention(params, gamma12, DephasingConvention::Quarter)
}

/// Energies (E₁, E₂, E₃, E₄) of the dressed product states, ħ = 1.
pub fn dressed_energies(dp: &DressedParams) -> [f64; 4] {
    let (d, o) = (dp.delta, dp.omega);
    [0.5 * (d + o), 0.5 * (d - o), -0.5 * (d - o), -0.5 * (d + o)]
}

/// 4×4 unitary whose columns are the dressed product states written in the
/// bare basis. A bare-basis ρ maps to the dressed basis as U†ρU.
pub fn dressed_basis_rotation(cos2theta: f64) -> ComplexMatrix {
    ComplexMatrix::identity(2).kron(&dressing_rotation(cos2theta))
}

/// Rewrites a bare-basis operator in the dressed product basis.
pub fn to_dressed_basis(rho_bare: &ComplexMatrix, cos2theta: f64) -> ComplexMatrix {
    let u = dressed_basis_rotation(cos2theta);
    &(&u.dagger() * rho_bare) * &u
}

/// Rewrites a dressed-basis operator in the bare basis.
pub fn to_bare_basis(rho_dressed: &ComplexMatrix, cos2theta: f64) -> ComplexMatrix {
    let u = dressed_basis_rotation(cos2theta);
    &(&u * rho_dressed) * &u.dagger()
}

/// Which dissipative coupling links the undriven atom and the dressed atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// Both subsystems react to each other's photons.
    Mutual,
    /// The dressed atom drives atom 1 with no back-action.
    Cascade,
}

/// Steady state with a single coherence between |2⟩ and |3⟩, in the dressed
/// product basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XState {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho23: f64,
}

impl XState {
    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::diagonal(&[c(self.rho11), c(self.rho22), c(self.rho33), c(self.rho44)]);
        m.set(1, 2, c(self.rho23));
        m.set(2, 1, c(self.rho23));
        m
    }

    /// Reads the X-state entries of a dressed-basis ρ. Other entries are ignored.
    pub fn from_matrix(rho: &ComplexMatrix) -> Self {
        Self {
            rho11: rho.get(0, 0).re,
            rho22: rho.get(1, 1).re,
            rho33: rho.get(2, 2).re,
            rho44: rho.get(3, 3).re,
            rho23: rho.get(1, 2).re,
        }
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.rho11, self.rho22, self.rho33, self.rho44]
    }

    /// Largest absolute elementwise difference over the five entries.
    pub fn max_abs_diff(&self, other: &XState) -> f64 {
        let a = [self.rho11, self.rho22, self.rho33, self.rho44, self.rho23];
        let b = [other.rho11, other.rho22, other.rho33, other.rho44, other.rho23];
        a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    /// Checks populations in [0, 1], unit trace and positivity of the central block.
    pub fn check(&self, tol: f64) -> Result<()> {
        for (k, p) in self.populations().iter().enumerate() {
            if !(p.is_finite() && *p >= -tol && *p <= 1.0 + tol) {
                return Err(Error::NonPhysical(format!("rho{}{} = {p}", k + 1, k + 1)));
            }
        }
        let trace: f64 = self.populations().iter().sum();
        if (trace - 1.0).abs() > tol {
            return Err(Error::NonPhysical(format!("trace = {trace}")));
        }
        if self.rho23.abs() > (self.rho22.max(0.0) * self.rho33.max(0.0)).sqrt() + tol {
            return Err(Error::NonPhysical(format!(
                "|rho23| = {} exceeds sqrt(rho22 rho33)",
                self.rho23.abs()
            )));
        }
        Ok(())
    }
}

/// Closed-form steady state of the resonant secular master equation.
///
/// With γ̄ = γ̄₁₂ and γ the total rate:
///
/// ```text
/// ρ₁₁ = γ₋² γ̄² / D
/// ρ₂₂ = γ₋ (γ₁ + γ₊) γ̄² / D
/// ρ₂₃ = γ₁ γ₋ (γ − γ₀) γ̄ / D
/// ρ₄₄ = 1 − γ₋ [γγ₁(γ − γ₀) + 3γ₋γ̄²] / D                  (mutual)
/// ρ₄₄ = 1 − γ₋ [γγ₁(γ − γ₀) + (γ₁ + γ₊ + 2γ₋)γ̄²] / D′      (cascade)
/// ρ₃₃ = 1 − ρ₁₁ − ρ₂₂ − ρ₄₄
/// ```
///
/// The cascade ρ₄₄ follows from the dressed atom being unaffected by atom 1,
/// which pins ρ₁₁ + ρ₃₃ = γ₋/(γ₊ + γ₋).
pub fn analytic_steady_state(dp: &DressedParams, coupling: Coupling) -> Result<XState> {
    let (g1, g0, gp, gm, gb, g) = dp.rates();
    let gb2 = gb * gb;
    let denom = match coupling {
        Coupling::Mutual => dp.denominator_mutual(),
        Coupling::Cascade => dp.denominator_cascade(),
    };
    if denom.is_nan() || denom <= 0.0 || denom.is_infinite() {
        return Err(Error::NonPhysical(format!("denominator = {denom}")));
    }
    let rho11 = gm * gm * gb2 / denom;
    let rho22 = gm * (g1 + gp) * gb2 / denom;
    let rho23 = g1 * gm * (g - g0) * gb / denom;
    let rho44 = match coupling {
        Coupling::Mutual => 1.0 - gm * (g * g1 * (g - g0) + 3.0 * gm * gb2) / denom,
        Coupling::Cascade => 1.0 - gm * (g * g1 * (g - g0) + (g1 + gp + 2.0 * gm) * gb2) / denom,
    };
    let x = XState {
        rho11,
        rho22,
        rho33: 1.0 - rho11 - rho22 - rho44,
        rho44,
        rho23,
    };
    x.check(1e-12)?;
    Ok(x)
}

/// The analytic state as a density matrix tagged with its basis.
pub fn analytic_density_matrix(dp: &DressedParams, coupling: Coupling) -> Result<(ComplexMatrix, Basis)> {
    Ok((analytic_steady_state(dp, coupling)?.to_matrix(), dp.basis()))
}
