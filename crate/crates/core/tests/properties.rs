// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dissent_core::dressed::{analytic_steady_state, Coupling, DephasingConvention, DressedParams};
use dissent_core::liouvillian::build_full_generator;
use dissent_core::matrix::DensityDefects;
use dissent_core::params::{compute_u12, SystemParams};
use dissent_core::validate::random_density_matrix;

fn coupled(gamma1: f64, gamma2: f64, kr12: f64, cos2eta: f64) -> SystemParams {
    SystemParams {
        gamma1,
        gamma2,
        kr12,
        cos2eta,
        ..SystemParams::default()
    }
}

proptest! {
    #[test]
    fn collective_damping_bounded_by_geometric_mean(
        g1 in 0.01f64..10.0,
        g2 in 0.01f64..10.0,
        kr in 0.05f64..40.0,
        c2 in 0.0f64..=1.0,
    ) {
        let u = compute_u12(&coupled(g1, g2, kr, c2)).unwrap();
        prop_assert!(u.gamma12.abs() <= (g1 * g2).sqrt() * (1.0 + 1e-12));
    }

    #[test]
    fn coupling_symmetric_in_atoms(g1 in 0.01f64..10.0, g2 in 0.01f64..10.0, kr in 0.05f64..40.0) {
        let a = compute_u12(&coupled(g1, g2, kr, 1.0 / 3.0)).unwrap();
        let b = compute_u12(&coupled(g2, g1, kr, 1.0 / 3.0)).unwrap();
        prop_assert!((a.gamma12 - b.gamma12).abs() <= 1e-14 * a.gamma12.abs().max(1.0));
        prop_assert!((a.omega12 - b.omega12).abs() <= 1e-14 * a.omega12.abs().max(1.0));
    }

    #[test]
    fn full_generator_preserves_trace_and_hermiticity(
        g2 in 0.1f64..5.0,
        rabi0 in 0.0f64..40.0,
        delta0 in -30.0f64..30.0,
        delta_l in -10.0f64..10.0,
        seed in any::<u64>(),
    ) {
        let p = SystemParams { gamma2: g2, rabi0, delta0, delta_l, ..SystemParams::default() };
        let gen = build_full_generator(&p).unwrap();
        let rho = random_density_matrix(&mut ChaCha8Rng::seed_from_u64(seed));
        let d = gen.apply(&rho);
        prop_assert!(d.trace().norm() < 1e-12);
        prop_assert!(d.hermiticity_defect() < 1e-12);
    }

    #[test]
    fn analytic_states_are_physical(
        g1 in 0.05f64..5.0,
        g2 in 0.05f64..5.0,
        c2 in 0.01f64..0.99,
        full_model in any::<bool>(),
        cascade in any::<bool>(),
    ) {
        let convention = if full_model { DephasingConvention::FullModel } else { DephasingConvention::Quarter };
        let coupling = if cascade { Coupling::Cascade } else { Coupling::Mutual };
        let gamma12 = std::f64::consts::FRAC_2_PI * (g1 * g2).sqrt();
        let dp = DressedParams::from_angle(g1, g2, c2, gamma12, 50.0, 50.0, convention).unwrap();
        let rho = analytic_steady_state(&dp, coupling).unwrap().to_matrix();
        let d = DensityDefects::of(&rho);
        prop_assert!(d.within(1e-12, 1e-12, 1e-12), "{d:?}");
    }
}
