// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Steady-state and time-evolution solvers for any trace-preserving generator.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liouvillian::Generator;
use crate::matrix::{Basis, ComplexMatrix, C64, ONE, ZERO};

/// Every numerical threshold used by the solvers, in one place.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Allowed trace defect of a generator, relative to max(1, ‖G‖_F).
    pub trace_preservation: f64,
    /// Largest acceptable condition estimate of the bordered system.
    pub max_condition: f64,
    /// Most negative eigenvalue tolerated in a returned state.
    pub negativity: f64,
    /// Largest acceptable ‖ρ − (ρ + ρ†)/2‖ before Hermitization.
    pub hermitization: f64,
    /// Relative |Ω − Δ| accepted as "on resonance".
    pub resonance_rel: f64,
    /// Relative local error target of the integrator.
    pub evolve_rtol: f64,
    /// Absolute local error target of the integrator.
    pub evolve_atol: f64,
    /// Smallest step the integrator may take before giving up.
    pub min_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            trace_preservation: 1e-10,
            max_condition: 1e12,
            negativity: 1e-8,
            hermitization: 1e-8,
            resonance_rel: 1e-9,
            evolve_rtol: 1e-11,
            evolve_atol: 1e-13,
            min_step: 1e-12,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteadyStateResult {
    pub rho: ComplexMatrix,
    /// ‖G·vec(ρ)‖₂ of the returned state.
    pub residual: f64,
    /// Size of the anti-Hermitian part removed after the solve.
    pub hermitization_correction: f64,
    /// σ_max/σ_min of the bordered system.
    pub condition: f64,
    pub basis: Basis,
}

/// Index of the population equation replaced by the trace constraint: the
/// population row with the smallest |G_kk|, lowest index on ties.
///
/// The population rows sum to zero for a trace-preserving generator, so any
/// one of them is redundant; the slowest-decaying level (usually the ground
/// state) carries the least information about its own outflow.
pub fn constraint_row(generator: &Generator) -> usize {
    let d = generator.hilbert_dim();
    (0..d)
        .map(|k| k * (d + 1))
        .min_by(|&a, &b| {
            let da = generator.matrix.get(a, a).norm();
            let db = generator.matrix.get(b, b).norm();
            da.total_cmp(&db).then(a.cmp(&b))
        })
        .unwrap_or(0)
}

/// Solves `G·vec(ρ) = 0` with `tr ρ = 1`.
pub fn steady_state(generator: &Generator, tol: &Tolerances) -> Result<SteadyStateResult> {
    let d = generator.hilbert_dim();
    let n = d * d;
    let g = generator.matrix.as_nalgebra();
    let g_norm = generator.matrix.frobenius_norm();

    let defect = generator.trace_defect();
    if defect > tol.trace_preservation * g_norm.max(1.0) {
        return Err(Error::NotTracePreserving { defect });
    }

    let row = constraint_row(generator);
    let mut bordered: DMatrix<C64> = g.clone();
    for j in 0..n {
        bordered[(row, j)] = ZERO;
    }
    for k in 0..d {
        bordered[(row, k * (d + 1))] = ONE;
    }

    let sv = bordered.clone().svd(false, false).singular_values;
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition.is_nan() || condition > tol.max_condition {
        return Err(Error::NearDegenerate { condition });
    }

    let mut rhs = DVector::from_element(n, ZERO);
    rhs[row] = ONE;
    let x = bordered.lu().solve(&rhs).ok_or(Error::NearDegenerate { condition })?;

    let raw = ComplexMatrix::unvectorize(&x, d)?;
    let herm = raw.hermitian_part();
    let correction = raw.max_abs_diff(&herm);
    if correction > tol.hermitization {
        return Err(Error::HermitizationTooLarge { correction });
    }
    let trace = herm.trace().re;
    let rho = herm * (1.0 / trace);

    let min_eig = rho.hermitian_eigenvalues()[0];
    if min_eig < -tol.negativity {
        return Err(Error::Negativity {
            min_eigenvalue: min_eig,
        });
    }

    let residual = generator.matrix.apply(&rho.vectorize()).norm();
    Ok(SteadyStateResult {
        rho,
        residual,
        hermitization_correction: correction,
        condition,
        basis: generator.basis,
    })
}

/// Number of singular values of G below `rel_tol·σ_max`: the dimension of
/// the stationary manifold.
pub fn null_space_dimension(generator: &Generator, rel_tol: f64) -> usize {
    let sv = generator.matrix.singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s <= rel_tol * smax).count()
}

// Dormand–Prince 5(4) tableau. The generator is autonomous, so the nodes are unused.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `ρ̇ = Gρ` from `rho0` to `t_final` with an adaptive
/// Dormand–Prince 5(4) scheme; steps never exceed `dt_max`.
pub fn evolve(
    generator: &Generator,
    rho0: &ComplexMatrix,
    t_final: f64,
    dt_max: f64,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let d = generator.hilbert_dim();
    if rho0.rows() != d || rho0.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: format!("{d}x{d} state"),
            got: format!("{}x{}", rho0.rows(), rho0.cols()),
        });
    }
    let g = generator.matrix.as_nalgebra();
    let mut y = rho0.vectorize();
    if t_final <= 0.0 {
        return ComplexMatrix::unvectorize(&y, d);
    }

    let mut t = 0.0;
    let mut next_dt = dt_max.min(t_final).min(1e-2);
    let mut k: Vec<DVector<C64>> = vec![DVector::from_element(d * d, ZERO); 7];
    k[0] = g * &y;
    while t < t_final {
        let remaining = t_final - t;
        if remaining <= 8.0 * f64::EPSILON * t_final {
            break;
        }
        if next_dt < tol.min_step {
            return Err(Error::StepUnderflow { t, dt: next_dt });
        }
        let dt = next_dt.min(remaining).min(dt_max);
        for s in 1..7 {
            let mut stage = y.clone();
            for (j, a) in A[s].iter().enumerate().take(s) {
                if *a != 0.0 {
                    stage.axpy(C64::new(dt * a, 0.0), &k[j], ONE);
                }
            }
            k[s] = g * &stage;
        }
        let mut y5 = y.clone();
        let mut err = DVector::from_element(d * d, ZERO);
        for s in 0..7 {
            if B5[s] != 0.0 {
                y5.axpy(C64::new(dt * B5[s], 0.0), &k[s], ONE);
            }
            err.axpy(C64::new(dt * (B5[s] - B4[s]), 0.0), &k[s], ONE);
        }
        let err_norm = err
            .iter()
            .zip(y.iter().zip(y5.iter()))
            .map(|(e, (a, b))| e.norm() / (tol.evolve_atol + tol.evolve_rtol * a.norm().max(b.norm())))
            .fold(0.0, f64::max);

        if err_norm <= 1.0 {
            t += dt;
            y = y5;
            // FSAL: the last stage is the derivative at the new point.
            k[0] = k[6].clone();
        }
        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        next_dt = dt * factor;
    }
    ComplexMatrix::unvectorize(&y, d)
}
