// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Atomic operators embedded in the two-qubit space.
//!
//! Single-qubit states are ordered `(e, g)`, so the lowering operator is
//! `|g⟩⟨e|` and `Sᶻ = diag(½, −½)`. Atom 1 is the left tensor factor.

use crate::matrix::{c, ComplexMatrix};

pub fn sigma_minus() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]])
}

pub fn sigma_plus() -> ComplexMatrix {
    sigma_minus().transpose()
}

pub fn sigma_z_half() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.5, 0.0], &[0.0, -0.5]])
}

/// Embeds a single-qubit operator on atom 1.
pub fn on_atom1(op: &ComplexMatrix) -> ComplexMatrix {
    op.kron(&ComplexMatrix::identity(2))
}

/// Embeds a single-qubit operator on atom 2.
pub fn on_atom2(op: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::identity(2).kron(op)
}

/// Bare-basis atomic operators.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub s1_plus: ComplexMatrix,
    pub s1_minus: ComplexMatrix,
    pub s1_z: ComplexMatrix,
    pub s2_plus: ComplexMatrix,
    pub s2_minus: ComplexMatrix,
    pub s2_z: ComplexMatrix,
    pub identity: ComplexMatrix,
}

impl OperatorSet {
    pub fn new() -> Self {
        Self {
            s1_plus: on_atom1(&sigma_plus()),
            s1_minus: on_atom1(&sigma_minus()),
            s1_z: on_atom1(&sigma_z_half()),
            s2_plus: on_atom2(&sigma_plus()),
            s2_minus: on_atom2(&sigma_minus()),
            s2_z: on_atom2(&sigma_z_half()),
            identity: ComplexMatrix::identity(4),
        }
    }

    pub fn minus(&self, atom: usize) -> &ComplexMatrix {
        match atom {
            0 => &self.s1_minus,
            1 => &self.s2_minus,
            _ => panic!("atom index {atom} out of range"),
        }
    }

    pub fn plus(&self, atom: usize) -> &ComplexMatrix {
        match atom {
            0 => &self.s1_plus,
            1 => &self.s2_plus,
            _ => panic!("atom index {atom} out of range"),
        }
    }
}

impl Default for OperatorSet {
    fn default() -> Self {
        Self::new()
    }
}

/// Dressed-atom operators R⁺ = |+⟩⟨−|, R⁻ = |−⟩⟨+|, R_z = ½(|+⟩⟨+| − |−⟩⟨−|),
/// embedded on atom 2.
#[derive(Clone, Debug)]
pub struct DressedOperators {
    pub r_plus: ComplexMatrix,
    pub r_minus: ComplexMatrix,
    pub r_z: ComplexMatrix,
}

impl DressedOperators {
    /// Representation in the dressed product basis `{|e₁+⟩, |e₁−⟩, |g₁+⟩, |g₁−⟩}`,
    /// where they have the same matrices as the bare spin operators.
    pub fn in_dressed_basis() -> Self {
        Self {
            r_plus: on_atom2(&sigma_plus()),
            r_minus: on_atom2(&sigma_minus()),
            r_z: on_atom2(&sigma_z_half()),
        }
    }

    /// Representation in the bare basis for dressing angle `cos²θ`.
    pub fn in_bare_basis(cos2theta: f64) -> Self {
        let u = crate::dressed::dressed_basis_rotation(cos2theta);
        let ud = u.dagger();
        let d = Self::in_dressed_basis();
        let to_bare = |m: &ComplexMatrix| &(&u * m) * &ud;
        Self {
            r_plus: to_bare(&d.r_plus),
            r_minus: to_bare(&d.r_minus),
            r_z: to_bare(&d.r_z),
        }
    }
}

/// Single-qubit rotation whose columns are |+⟩ = (cosθ, sinθ) and |−⟩ = (sinθ, −cosθ)
/// in the `(e, g)` basis, with θ ∈ [0, π/2].
pub fn dressing_rotation(cos2theta: f64) -> ComplexMatrix {
    let cos = cos2theta.clamp(0.0, 1.0).sqrt();
    let sin = (1.0 - cos2theta).clamp(0.0, 1.0).sqrt();
    ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => c(cos),
        (0, 1) | (1, 0) => c(sin),
        _ => c(-cos),
    })
}
