// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Hamiltonians and Liouvillian superoperators on the two-atom space.
//!
//! All superoperators use the column-stacking convention of [`crate::matrix`].
//! The full generator lives in the bare basis; secular generators live in the
//! dressed product basis.

use serde::{Deserialize, Serialize};

use crate::dressed::{Coupling, DephasingConvention, DressedParams};
use crate::error::{Error, Result};
use crate::matrix::{sandwich, spost, spre, Basis, ComplexMatrix, I};
use crate::operators::{DressedOperators, OperatorSet};
use crate::params::SystemParams;

/// Hilbert-space dimension of two qubits.
pub const DIM: usize = 4;

/// A time-independent generator `ρ̇ = G ρ` acting on column-stacked ρ.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub matrix: ComplexMatrix,
    pub basis: Basis,
}

impl Generator {
    pub fn new(matrix: ComplexMatrix, basis: Basis) -> Result<Self> {
        let n = matrix.rows();
        let d = (n as f64).sqrt().round() as usize;
        if !matrix.is_square() || d * d != n {
            return Err(Error::DimensionMismatch {
                expected: "square (d², d²) superoperator".into(),
                got: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        Ok(Self { matrix, basis })
    }

    /// Hilbert-space dimension d.
    pub fn hilbert_dim(&self) -> usize {
        (self.matrix.rows() as f64).sqrt().round() as usize
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        crate::matrix::apply_superop(&self.matrix, rho)
    }

    /// Largest |Σₖ G[k(d+1), j]|: zero when the generator preserves the trace.
    pub fn trace_defect(&self) -> f64 {
        let d = self.hilbert_dim();
        let n = d * d;
        (0..n)
            .map(|j| {
                (0..d)
                    .map(|k| self.matrix.get(k * (d + 1), j))
                    .sum::<crate::matrix::C64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }
}

/// H₀ = (Δ₀ + Δ_L) S₁ᶻ + Δ_L S₂ᶻ + ½Ω₀(S₂⁺ + S₂⁻), ħ = 1.
pub fn build_h0(params: &SystemParams) -> ComplexMatrix {
    let ops = OperatorSet::new();
    let drive = &ops.s2_plus + &ops.s2_minus;
    &ops.s1_z * (params.delta0 + params.delta_l) + &ops.s2_z * params.delta_l + drive * (0.5 * params.rabi0)
}

/// H_d = Ω₁₂ (S₁⁺S₂⁻ + S₂⁺S₁⁻).
pub fn build_hd(omega12: f64) -> ComplexMatrix {
    let ops = OperatorSet::new();
    let hop = &ops.s1_plus * &ops.s2_minus;
    (&hop + &hop.dagger()) * omega12
}

/// Symmetric 2×2 matrix of decay rates γᵢⱼ with γ₁₁ = γ₁, γ₂₂ = γ₂.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateMatrix {
    pub gamma11: f64,
    pub gamma22: f64,
    pub gamma12: f64,
}

impl RateMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => self.gamma11,
            (1, 1) => self.gamma22,
            _ => self.gamma12,
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let mean = 0.5 * (self.gamma11 + self.gamma22);
        let half_gap = (0.5 * (self.gamma11 - self.gamma22)).hypot(self.gamma12);
        mean - half_gap
    }
}

/// `[A, Bρ]`.
fn comm_a_brho(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    spre(&(a * b)) - sandwich(b, a)
}

/// `[ρA, B]`.
fn comm_rhoa_b(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    spost(&(a * b)) - sandwich(b, a)
}

/// `[A, ρB]`.
fn comm_a_rhob(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    sandwich(a, b) - spost(&(b * a))
}

/// `[Aρ, B]`.
fn comm_arho_b(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    sandwich(a, b) - spre(&(b * a))
}

/// `−i[H, ·]`.
pub fn hamiltonian_superop(h: &ComplexMatrix) -> ComplexMatrix {
    (spre(h) - spost(h)) * (-I)
}

/// `L(ρ) = −Σᵢⱼ γᵢⱼ ([Sᵢ⁺, Sⱼ⁻ρ] + [ρSᵢ⁺, Sⱼ⁻])`.
pub fn build_dissipator(rates: &RateMatrix) -> Result<ComplexMatrix> {
    for (name, value) in [("gamma1", rates.gamma11), ("gamma2", rates.gamma22)] {
        if value.is_nan() || value <= 0.0 {
            return Err(Error::InvalidParameter {
                name,
                value,
                reason: "decay rate must be positive",
            });
        }
    }
    let min_eig = rates.min_eigenvalue();
    let scale = rates.gamma11.max(rates.gamma22);
    if min_eig < -1e-14 * scale {
        return Err(Error::RateMatrixNotPsd {
            min_eigenvalue: min_eig,
        });
    }
    let ops = OperatorSet::new();
    let mut out = ComplexMatrix::zeros(DIM * DIM, DIM * DIM);
    for i in 0..2 {
        for j in 0..2 {
            let g = rates.get(i, j);
            if g == 0.0 {
                continue;
            }
            let term = comm_a_brho(ops.plus(i), ops.minus(j)) + comm_rhoa_b(ops.plus(i), ops.minus(j));
            out += &(term * (-g));
        }
    }
    Ok(out)
}

/// `ρ̇ = −i[H₀ + H_d, ρ] + L(ρ)` in the bare basis.
pub fn build_full_generator(params: &SystemParams) -> Result<Generator> {
    let coupling = params.coupling()?;
    let h = build_h0(params) + build_hd(coupling.omega12);
    let rates = RateMatrix {
        gamma11: params.gamma1,
        gamma22: params.gamma2,
        gamma12: coupling.gamma12,
    };
    let g = hamiltonian_superop(&h) + build_dissipator(&rates)?;
    Generator::new(g, Basis::Bare)
}

/// Which secular master equation to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SecularVariant {
    /// Ω ≠ Δ: only the damping of the undriven atom survives.
    OffResonance,
    /// Ω = Δ with mutual dissipative coupling.
    ResonantMutual,
    /// Ω = Δ with one-way (cascaded) coupling from the dressed atom.
    ResonantCascade,
}

impl SecularVariant {
    pub fn coupling(self) -> Option<Coupling> {
        match self {
            Self::OffResonance => None,
            Self::ResonantMutual => Some(Coupling::Mutual),
            Self::ResonantCascade => Some(Coupling::Cascade),
        }
    }
}

/// Options for [`build_secular_generator`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecularOptions {
    pub convention: DephasingConvention,
    /// Allowed relative mismatch |Ω − Δ|/max(Ω, Δ) for the resonant variants.
    pub resonance_rel_tol: f64,
}

impl Default for SecularOptions {
    fn default() -> Self {
        Self {
            convention: DephasingConvention::Quarter,
            resonance_rel_tol: 1e-9,
        }
    }
}

/// Secular generator in the dressed product basis for `params`.
///
/// Resonant variants are rejected unless Ω = Δ within
/// `opts.resonance_rel_tol`.
pub fn build_secular_generator(
    params: &SystemParams,
    variant: SecularVariant,
    opts: &SecularOptions,
) -> Result<Generator> {
    let coupling = params.coupling()?;
    let dp = DressedParams::with_convention(params, coupling.gamma12, opts.convention)?;
    if variant != SecularVariant::OffResonance {
        let mismatch = params.resonance_mismatch();
        if mismatch > opts.resonance_rel_tol {
            return Err(Error::OffResonance {
                omega: dp.omega,
                delta: dp.delta,
                mismatch,
            });
        }
    }
    secular_generator_from_dressed(&dp, variant)
}

/// Secular generator assembled directly from dressed rates, with no
/// resonance check.
pub fn secular_generator_from_dressed(dp: &DressedParams, variant: SecularVariant) -> Result<Generator> {
    let ops = OperatorSet::new();
    let r = DressedOperators::in_dressed_basis();
    let (s1p, s1m) = (&ops.s1_plus, &ops.s1_minus);

    // L₁ρ = γ₁(2S₁⁻ρS₁⁺ − S₁⁺S₁⁻ρ − ρS₁⁺S₁⁻)
    let n1 = s1p * s1m;
    let mut g = (sandwich(s1m, s1p) * 2.0 - spre(&n1) - spost(&n1)) * dp.gamma1;

    if let Some(coupling) = variant.coupling() {
        // L_d
        let dephasing = comm_a_rhob(&r.r_z, &r.r_z) + comm_arho_b(&r.r_z, &r.r_z);
        let down = comm_a_rhob(&r.r_minus, &r.r_plus) + comm_arho_b(&r.r_minus, &r.r_plus);
        let up = comm_a_rhob(&r.r_plus, &r.r_minus) + comm_arho_b(&r.r_plus, &r.r_minus);
        g += &(dephasing * dp.gamma0);
        g += &(down * dp.gamma_plus);
        g += &(up * dp.gamma_minus);

        // L_c
        let lc = match coupling {
            Coupling::Mutual => {
                comm_rhoa_b(s1p, &r.r_minus)
                    + comm_a_brho(s1p, &r.r_minus)
                    + comm_a_brho(&r.r_plus, s1m)
                    + comm_rhoa_b(&r.r_plus, s1m)
            }
            Coupling::Cascade => comm_a_brho(s1p, &r.r_minus) + comm_rhoa_b(&r.r_plus, s1m),
        };
        g += &(lc * dp.gamma_bar12);
    }
    Generator::new(g, dp.basis())
}

/// Single-atom amplitude damping `γ(2σ⁻ρσ⁺ − σ⁺σ⁻ρ − ρσ⁺σ⁻)` on a qubit.
pub fn single_atom_decay(gamma: f64) -> Generator {
    let sm = crate::operators::sigma_minus();
    let sp = crate::operators::sigma_plus();
    let n = &sp * &sm;
    let g = (sandwich(&sm, &sp) * 2.0 - spre(&n) - spost(&n)) * gamma;
    Generator {
        matrix: g,
        basis: Basis::Bare,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{apply_superop, c, ZERO};
    use std::f64::consts::PI;

    fn params(rabi0: f64, delta0: f64, delta_l: f64) -> SystemParams {
        SystemParams {
            rabi0,
            delta0,
            delta_l,
            ..SystemParams::default()
        }
    }

    #[test]
    fn h0_trivial_cases() {
        assert_eq!(build_h0(&params(0.0, 0.0, 0.0)), ComplexMatrix::zeros(4, 4));
        let h = build_h0(&params(0.0, 15.0, 0.0));
        let diag: Vec<f64> = (0..4).map(|k| h.get(k, k).re).collect();
        assert_eq!(diag, vec![7.5, 7.5, -7.5, -7.5]);
        assert!(h.hermiticity_defect() == 0.0);
    }

    #[test]
    fn h0_matches_dressed_energies() {
        // Δ = 0, Ω = 2: energies ½(Δ ± Ω), −½(Δ ∓ Ω) = {1, −1, 1, −1}.
        let ev = build_h0(&params(2.0, 0.0, 0.0)).hermitian_eigenvalues();
        let expect = [-1.0, -1.0, 1.0, 1.0];
        for (a, b) in ev.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn hd_couples_single_excitation_states() {
        assert_eq!(build_hd(0.0), ComplexMatrix::zeros(4, 4));
        let h = build_hd(1.0);
        let nonzero: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| h.get(i, j) != ZERO)
            .collect();
        assert_eq!(nonzero, vec![(1, 2), (2, 1)]);
        assert_eq!(h.get(1, 2), c(1.0));
        let ev = h.hermitian_eigenvalues();
        for (a, b) in ev.iter().zip([-1.0, 0.0, 0.0, 1.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    fn expanded_dissipator(rates: &RateMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
        let ops = OperatorSet::new();
        let mut out = ComplexMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                let (sp, sm) = (ops.plus(i), ops.minus(j));
                let term = &(&(sm * rho) * sp) * 2.0 - &(sp * sm) * rho - rho * &(sp * sm);
                out += &(term * rates.get(i, j));
            }
        }
        out
    }

    #[test]
    fn dissipator_matches_expanded_form() {
        let rates = RateMatrix {
            gamma11: 1.0,
            gamma22: 1.7,
            gamma12: 0.9,
        };
        let l = build_dissipator(&rates).unwrap();
        let rho = ComplexMatrix::from_fn(4, 4, |i, j| {
            crate::matrix::C64::new((i + 2 * j) as f64 * 0.1, (i as f64 - j as f64) * 0.05)
        });
        let diff = apply_superop(&l, &rho).max_abs_diff(&expanded_dissipator(&rates, &rho));
        assert!(diff < 1e-14, "diff = {diff}");
    }

    #[test]
    fn independent_decay_outflow_from_doubly_excited() {
        let l = build_dissipator(&RateMatrix {
            gamma11: 1.0,
            gamma22: 1.0,
            gamma12: 0.0,
        })
        .unwrap();
        let mut rho = ComplexMatrix::zeros(4, 4);
        rho.set(0, 0, c(1.0));
        let d = apply_superop(&l, &rho);
        assert!((d.get(0, 0).re + 4.0).abs() < 1e-15);
    }

    #[test]
    fn dissipator_rate_matrix_checks() {
        let ok = RateMatrix {
            gamma11: 1.0,
            gamma22: 1.0,
            gamma12: 2.0 / PI,
        };
        assert!((ok.min_eigenvalue() - (1.0 - 2.0 / PI)).abs() < 1e-15);
        assert!(build_dissipator(&ok).is_ok());
        let bad = RateMatrix { gamma12: 1.2, ..ok };
        assert!(matches!(build_dissipator(&bad), Err(Error::RateMatrixNotPsd { .. })));
        let neg = RateMatrix { gamma11: 0.0, ..ok };
        assert!(build_dissipator(&neg).is_err());
    }

    #[test]
    fn generators_preserve_trace() {
        let p = SystemParams {
            gamma2: 2.5,
            ..params(7.0, 15.0, 1.5)
        };
        assert!(build_full_generator(&p).unwrap().trace_defect() < 1e-12);
        let rp = SystemParams::at_resonance(1.0, 2.0, 20.0, 0.7);
        for v in [
            SecularVariant::OffResonance,
            SecularVariant::ResonantMutual,
            SecularVariant::ResonantCascade,
        ] {
            let g = build_secular_generator(&rp, v, &SecularOptions::default()).unwrap();
            assert!(g.trace_defect() < 1e-12, "{v:?}");
            assert_eq!(g.basis, Basis::Dressed { cos2theta: g_cos2(&rp) });
        }
    }

    fn g_cos2(p: &SystemParams) -> f64 {
        0.5 + p.delta_l / (2.0 * p.generalized_rabi())
    }

    #[test]
    fn resonant_variants_require_level_crossing() {
        let off = params(10.0, 15.0, 0.0);
        for v in [SecularVariant::ResonantMutual, SecularVariant::ResonantCascade] {
            assert!(matches!(
                build_secular_generator(&off, v, &SecularOptions::default()),
                Err(Error::OffResonance { .. })
            ));
        }
        assert!(build_secular_generator(&off, SecularVariant::OffResonance, &SecularOptions::default()).is_ok());
        assert!(build_secular_generator(
            &params(15.0, 15.0, 0.0),
            SecularVariant::ResonantMutual,
            &SecularOptions::default()
        )
        .is_ok());
    }

    #[test]
    fn generator_shape_is_checked() {
        assert!(Generator::new(ComplexMatrix::zeros(15, 15), Basis::Bare).is_err());
        assert!(Generator::new(ComplexMatrix::zeros(16, 8), Basis::Bare).is_err());
    }
}
