// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::params::SystemParams;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("decay-rate matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    RateMatrixNotPsd { min_eigenvalue: f64 },

    #[error("dressing angle undefined: generalized Rabi frequency is zero")]
    UndefinedDressing,

    #[error("resonant secular model requested off resonance: Omega = {omega}, Delta = {delta} (relative mismatch {mismatch:e})")]
    OffResonance { omega: f64, delta: f64, mismatch: f64 },

    #[error("no resonance reachable: Delta = {delta}, DeltaL = {delta_l} (need Delta > |DeltaL|)")]
    NoResonance { delta: f64, delta_l: f64 },

    #[error("analytic steady state is non-physical: {0}")]
    NonPhysical(String),

    #[error("matrix dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("generator does not annihilate the trace (defect {defect:e})")]
    NotTracePreserving { defect: f64 },

    #[error("steady-state manifold is near-degenerate (condition estimate {condition:e})")]
    NearDegenerate { condition: f64 },

    #[error("steady state has eigenvalue {min_eigenvalue:e} below the negativity tolerance")]
    Negativity { min_eigenvalue: f64 },

    #[error("hermitization correction {correction:e} exceeds tolerance")]
    HermitizationTooLarge { correction: f64 },

    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("entangled decomposition undefined: central block is degenerate (G = 0)")]
    NoPreferredBasis,

    #[error("integrator step size underflow at t = {t} (dt = {dt:e})")]
    StepUnderflow { t: f64, dt: f64 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("sweep row {index} failed at {params:?}: {source}")]
    RowFailed {
        index: usize,
        params: Box<SystemParams>,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
