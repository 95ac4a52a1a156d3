// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit concurrence and the entangled eigenstates of the X-state block.

use serde::Serialize;

use crate::dressed::XState;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DensityDefects, I, ZERO};

/// Tolerance on the density-matrix invariants accepted by [`concurrence_general`].
pub const DENSITY_TOL: f64 = 1e-8;

/// σ_y ⊗ σ_y in any two-qubit product basis.
pub fn spin_flip() -> ComplexMatrix {
    let y = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => -I,
        (1, 0) => I,
        _ => ZERO,
    });
    y.kron(&y)
}

/// Concurrence of a two-qubit state written in a product basis.
pub fn concurrence_general(rho: &ComplexMatrix) -> Result<f64> {
    concurrence_with_tolerance(rho, DENSITY_TOL)
}

/// Concurrence C = max(0, λ₁ − λ₂ − λ₃ − λ₄), where λᵢ² are the eigenvalues of
/// ρρ̃ with ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y).
///
/// With ρ = XX† and X = V·diag(√pᵢ) from the eigen-decomposition, ρρ̃ shares
/// its non-zero spectrum with MM† for M = Xᵀ(σ_y⊗σ_y)X, so the λᵢ are the
/// singular values of M. This avoids square-rooting near-zero eigenvalues of
/// √ρρ̃√ρ, which costs half the digits on rank-deficient states.
pub fn concurrence_with_tolerance(rho: &ComplexMatrix, tol: f64) -> Result<f64> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::DimensionMismatch {
            expected: "4x4 two-qubit state".into(),
            got: format!("{}x{}", rho.rows(), rho.cols()),
        });
    }
    let defects = DensityDefects::of(rho);
    if !defects.within(tol, tol, tol) {
        return Err(Error::InvalidDensityMatrix(format!("{defects:?}")));
    }

    let (values, vectors) = rho.hermitian_eigen();
    let pmax = values.iter().copied().fold(0.0, f64::max);
    let floor = 16.0 * f64::EPSILON * pmax;
    let kept: Vec<usize> = (0..4).filter(|&k| values[k] > floor).collect();
    let x = ComplexMatrix::from_fn(4, kept.len(), |i, j| vectors.get(i, kept[j]) * values[kept[j]].sqrt());
    let m = &(&x.transpose() * &spin_flip()) * &x;

    let mut lambdas = m.singular_values();
    lambdas.resize(4, 0.0);
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Closed form for the X state with a single |2⟩–|3⟩ coherence:
/// C = 2·max(0, |ρ₂₃| − √(ρ₁₁ρ₄₄)).
pub fn concurrence_xstate(x: &XState) -> f64 {
    2.0 * (x.rho23.abs() - (x.rho11 * x.rho44).max(0.0).sqrt()).max(0.0)
}

/// Eigen-decomposition of the central block into
/// |s⟩ = cosφ|2⟩ + sinφ|3⟩ and |a⟩ = sinφ|2⟩ − cosφ|3⟩.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EntangledDecomposition {
    /// cos²φ = ½ + δ/(2G).
    pub cos2phi: f64,
    /// Weight of |s⟩, (ρ₂₂ + ρ₃₃ + G)/2.
    pub weight_s: f64,
    /// Weight of |a⟩, (ρ₂₂ + ρ₃₃ − G)/2.
    pub weight_a: f64,
    /// δ = ρ₂₂ − ρ₃₃.
    pub delta: f64,
    /// G = √(δ² + 4|ρ₂₃|²).
    pub big_g: f64,
    /// Sign of ρ₂₃, carried by sinφ.
    pub coherence_sign: f64,
}

impl EntangledDecomposition {
    pub fn cos_phi(&self) -> f64 {
        self.cos2phi.sqrt()
    }

    pub fn sin_phi(&self) -> f64 {
        self.coherence_sign * (1.0 - self.cos2phi).max(0.0).sqrt()
    }

    /// Rebuilds the 2×2 block `[[ρ₂₂, ρ₂₃], [ρ₂₃, ρ₃₃]]`.
    pub fn reconstruct_block(&self) -> [[f64; 2]; 2] {
        let (cp, sp) = (self.cos_phi(), self.sin_phi());
        let s = [cp, sp];
        let a = [sp, -cp];
        let mut block = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                block[i][j] = self.weight_s * s[i] * s[j] + self.weight_a * a[i] * a[j];
            }
        }
        block
    }
}

pub fn entangled_decomposition(x: &XState) -> Result<EntangledDecomposition> {
    let delta = x.rho22 - x.rho33;
    let big_g = (delta * delta + 4.0 * x.rho23 * x.rho23).sqrt();
    if big_g == 0.0 {
        return Err(Error::NoPreferredBasis);
    }
    let sum = x.rho22 + x.rho33;
    Ok(EntangledDecomposition {
        cos2phi: (0.5 + delta / (2.0 * big_g)).clamp(0.0, 1.0),
        weight_s: 0.5 * (sum + big_g),
        weight_a: 0.5 * (sum - big_g),
        delta,
        big_g,
        coherence_sign: if x.rho23 < 0.0 { -1.0 } else { 1.0 },
    })
}
