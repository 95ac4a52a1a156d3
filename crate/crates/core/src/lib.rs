// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Steady-state entanglement of two non-identical two-level atoms coupled
//! only through their common radiation reservoir, with one atom laser-driven.
//!
//! The crate provides three descriptions of the same system:
//!
//! * the full master equation on the bare two-atom basis
//!   ([`liouvillian::build_full_generator`]),
//! * the dressed-state secular master equations at and away from the Ω = Δ
//!   level crossing ([`liouvillian::build_secular_generator`]),
//! * the closed-form X-state steady state ([`dressed::analytic_steady_state`]),
//!
//! plus concurrence ([`entanglement`]), generic solvers ([`solver`]), the
//! parameter sweeps used to map out the entanglement resonance ([`sweep`]) and
//! a cross-check suite tying the three together ([`mod@validate`]).

pub mod dressed;
pub mod entanglement;
pub mod error;
pub mod liouvillian;
pub mod matrix;
pub mod operators;
pub mod params;
pub mod solver;
pub mod sweep;
pub mod validate;

pub use dressed::{
    analytic_steady_state, dressed_basis_rotation, dressed_energies, dressed_params, Coupling, DephasingConvention,
    DressedParams, XState,
};
pub use entanglement::{concurrence_general, concurrence_xstate, entangled_decomposition, EntangledDecomposition};
pub use error::{Error, Result};
pub use liouvillian::{
    build_dissipator, build_full_generator, build_h0, build_hd, build_secular_generator, Generator, RateMatrix,
    SecularOptions, SecularVariant,
};
pub use matrix::{Basis, ComplexMatrix, C64};
pub use params::{compute_u12, CollectiveCoupling, SystemParams};
pub use solver::{evolve, steady_state, SteadyStateResult, Tolerances};
pub use sweep::{
    evaluate_point, run_detuned_peak_scan, run_fig1_sweep, run_fig2_sweep, run_sweep, write_csv, Axis, AxisSpec, Model,
    SweepResult, SweepSpec,
};
pub use validate::{validate, ValidationConfig, ValidationReport};
