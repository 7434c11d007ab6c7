mod common;

use mvbandit_core::experiments::{build_minimax_pair, minimax_pair_for_gap, DEFAULT_D6};
use mvbandit_core::{BanditInstance, DistributionSpec};
use proptest::prelude::*;

/// ξ of each arm recomputed from the raw parameters.
fn oracle_xi(inst: &BanditInstance) -> Vec<f64> {
    inst.arms()
        .iter()
        .map(|d| match *d {
            DistributionSpec::Gaussian { mean, variance } => {
                common::gaussian_xi(mean, variance, inst.rho())
            }
            DistributionSpec::Bernoulli { p } => common::bernoulli_xi(p, inst.rho()),
        })
        .collect()
}

#[test]
fn rho_zero_worked_example() {
    let (f, fp) = minimax_pair_for_gap(0.05, 0.0).unwrap();
    assert!((f.variance(0) - 0.1775).abs() < 1e-15);
    assert!((f.arms()[1].true_mean() - 0.35).abs() < 1e-15);
    assert!((fp.arms()[1].true_mean() - 0.15).abs() < 1e-15);
    assert!((0.35 * 0.65 - 0.1775 - 0.05f64).abs() < 1e-12);
    assert!(minimax_pair_for_gap(0.25, 0.0).is_err());
}

#[test]
fn pair_converges_as_gap_vanishes() {
    let (f, fp) = minimax_pair_for_gap(1e-9, 0.0).unwrap();
    let (a, b) = (oracle_xi(&f), oracle_xi(&fp));
    assert!((a[1] - b[1]).abs() < 1e-8);
}

#[test]
fn schedule_shrinks_gap() {
    let p = build_minimax_pair(1_000, 0.0, DEFAULT_D6).unwrap();
    assert!((p.delta - 0.03).abs() < 1e-12);
    assert_eq!(p.horizon, 1_000);
    assert!(build_minimax_pair(10, 0.0, DEFAULT_D6).is_err());
}

proptest! {
    #[test]
    fn gap_identity_and_switch(delta in 1e-6f64..0.1, rho in prop_oneof![Just(0.0), Just(0.5), 0.0f64..0.2, 1.0f64..6.0]) {
        let (f, fp) = match minimax_pair_for_gap(delta, rho) {
            Ok(p) => p,
            Err(e) => { prop_assert!(e.is_infeasible()); return Ok(()); }
        };
        for inst in [&f, &fp] {
            let xi = oracle_xi(inst);
            prop_assert!(((xi[1] - xi[0]).abs() - delta).abs() <= 1e-12);
            prop_assert!(inst.arms()[0] == f.arms()[0]);
        }
        prop_assert_ne!(f.star(), fp.star());
    }
}
