// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices and the superoperator conventions used throughout.
//!
//! Vectorization is column-stacking: `vec(ρ)[i + d·j] = ρ[i, j]`. With this
//! convention a sandwich `A ρ B` becomes `(Bᵀ ⊗ A) · vec(ρ)`, so
//!
//! * left multiplication `A ρ`  ↦ `I ⊗ A`
//! * right multiplication `ρ B` ↦ `Bᵀ ⊗ I`

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Which orthonormal basis a two-qubit state or generator is written in.
///
/// `Bare` is `{|e₁e₂⟩, |e₁g₂⟩, |g₁e₂⟩, |g₁g₂⟩}`. `Dressed` is the product
/// basis `{|e₁+⟩, |e₁−⟩, |g₁+⟩, |g₁−⟩}` built from the dressed states of the
/// driven atom at the given `cos²θ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Basis {
    Bare,
    Dressed { cos2theta: f64 },
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Bare => write!(f, "bare"),
            Basis::Dressed { cos2theta } => write!(f, "dressed(cos2theta={cos2theta})"),
        }
    }
}

/// Dense complex matrix with explicit dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                got: format!("{} entries", entries.len()),
            });
        }
        Ok(Self(DMatrix::from_row_slice(rows, cols, &entries)))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let cols = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, cols, |i, j| c(rows[i][j]))
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { ZERO })
    }

    pub fn from_nalgebra(m: DMatrix<C64>) -> Self {
        Self(m)
    }

    pub fn as_nalgebra(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_nalgebra(self) -> DMatrix<C64> {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.0[(i, j)] = value;
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(&self.0 * s)
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.0.shape(), other.0.shape(), "shape mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Largest entry of `A − A†`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * c(0.5))
    }

    /// Eigen-decomposition of the Hermitian part, eigenvalues ascending.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, ComplexMatrix) {
        let eig = self.hermitian_part().0.symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |i, j| {
            eig.eigenvectors[(i, order[j])]
        });
        (values, Self(vectors))
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.hermitian_eigen().0
    }

    pub fn singular_values(&self) -> Vec<f64> {
        self.0
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .collect()
    }

    /// Column-stacked vectorization.
    pub fn vectorize(&self) -> DVector<C64> {
        DVector::from_column_slice(self.0.as_slice())
    }

    /// Inverse of [`ComplexMatrix::vectorize`] for a `d × d` matrix.
    pub fn unvectorize(v: &DVector<C64>, d: usize) -> Result<Self> {
        if v.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", d * d),
                got: format!("length {}", v.len()),
            });
        }
        Ok(Self(DMatrix::from_column_slice(d, d, v.as_slice())))
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.0 * v
    }
}

impl From<DMatrix<C64>> for ComplexMatrix {
    fn from(m: DMatrix<C64>) -> Self {
        Self(m)
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Mul<ComplexMatrix> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 * rhs.0)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: f64) -> ComplexMatrix {
        ComplexMatrix(&self.0 * c(rhs))
    }
}

impl Mul<f64> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: f64) -> ComplexMatrix {
        ComplexMatrix(self.0 * c(rhs))
    }
}

impl Mul<C64> for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: C64) -> ComplexMatrix {
        ComplexMatrix(self.0 * rhs)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 + rhs.0)
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        self.0 += &rhs.0;
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0 - rhs.0)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-self.0)
    }
}

/// `A ρ` as a superoperator.
pub fn spre(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::identity(a.rows()).kron(a)
}

/// `ρ B` as a superoperator.
pub fn spost(b: &ComplexMatrix) -> ComplexMatrix {
    b.transpose().kron(&ComplexMatrix::identity(b.rows()))
}

/// `A ρ B` as a superoperator.
pub fn sandwich(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    b.transpose().kron(a)
}

/// Applies a superoperator to a `d × d` matrix.
pub fn apply_superop(g: &ComplexMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
    let d = rho.rows();
    ComplexMatrix::unvectorize(&g.apply(&rho.vectorize()), d).expect("superoperator dimension matches state")
}

/// Deviations of a matrix from the density-matrix invariants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityDefects {
    pub trace_error: f64,
    pub hermiticity_error: f64,
    pub min_eigenvalue: f64,
}

impl DensityDefects {
    pub fn of(rho: &ComplexMatrix) -> Self {
        Self {
            trace_error: (rho.trace() - ONE).norm(),
            hermiticity_error: rho.hermiticity_defect(),
            min_eigenvalue: rho.hermitian_eigenvalues().first().copied().unwrap_or(0.0),
        }
    }

    pub fn within(&self, trace_tol: f64, hermiticity_tol: f64, negativity_tol: f64) -> bool {
        self.trace_error <= trace_tol
            && self.hermiticity_error <= hermiticity_tol
            && self.min_eigenvalue >= -negativity_tol
    }
}
