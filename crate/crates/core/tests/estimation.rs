use cumulant_calculus::estimation::{
    empirical_joint_cumulants, generate, h0_band, invariance_test, k_statistics, ks_statistic, simulate_statistic,
    standard_normal_draws, substream, two_sample_ks, CumulantDiagnostic, Family, GeneratorSpec, KsMethod, SampleMatrix,
    SideGenerator, LANE_PERMUTATION,
};
use cumulant_calculus::Error;
use proptest::prelude::*;

const GRID: [f64; 5] = [0.0, 22.5, 45.0, 67.5, 90.0];

fn radians() -> Vec<f64> {
    GRID.iter().map(|d| d.to_radians()).collect()
}

fn normal() -> SideGenerator {
    SideGenerator::new(Family::standard_normal(), Some(Family::Uniform { low: -1.0, high: 1.0 }))
}

fn exponential() -> SideGenerator {
    SideGenerator::new(Family::ExponentialCentered { rate: 1.0 }, None)
}

fn matrix(columns: Vec<Vec<f64>>) -> SampleMatrix {
    let labels = (1..=columns.len()).map(|j| format!("x{j}")).collect();
    SampleMatrix::new(labels, columns).unwrap()
}

#[test]
fn generator_moments() {
    let n = 200_000;
    let x = generate(&GeneratorSpec { family: Family::standard_normal(), seed: 5 }, n).unwrap();
    let mean = x.iter().sum::<f64>() / n as f64;
    assert!(mean.abs() < 4.0 / (n as f64).sqrt());

    let e = generate(&GeneratorSpec { family: Family::ExponentialCentered { rate: 1.0 }, seed: 5 }, n).unwrap();
    let k = k_statistics(&e).unwrap();
    assert!((k.k3 - 2.0).abs() < 0.15, "k3 = {}", k.k3);

    let r = generate(&GeneratorSpec { family: Family::Rademacher, seed: 5 }, n).unwrap();
    let k = k_statistics(&r).unwrap();
    assert!((k.k4 + 2.0).abs() < 0.05, "k4 = {}", k.k4);
    assert_eq!(generate(&GeneratorSpec { family: Family::Rademacher, seed: 5 }, 100).unwrap(), r[..100]);
}

#[test]
fn empirical_cumulants_of_normal_samples() {
    let n = 100_000;
    let x = standard_normal_draws(11, 0, n);
    let y = standard_normal_draws(11, 1, n);
    let z: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 0.6 * a + 0.8 * b).collect();
    let t = empirical_joint_cumulants(&matrix(vec![x.clone(), z]), 4).unwrap();
    let nf = n as f64;
    assert!((t.value(&[1, 1]).unwrap() - 0.6).abs() < 4.0 / nf.sqrt());
    assert!(t.value(&[3, 0]).unwrap().abs() < 4.0 * (6.0 / nf).sqrt());
    assert!(t.value(&[4, 0]).unwrap().abs() < 4.0 * (24.0 / nf).sqrt());
    assert!(t.value(&[2, 2]).unwrap().abs() < 0.1);
    let d = CumulantDiagnostic::from_column("x", &x).unwrap();
    assert!(d.consistent_with_normal(4.0));
}

#[test]
fn empirical_cumulants_of_a_constant_column() {
    let t = empirical_joint_cumulants(&matrix(vec![vec![3.0; 50]]), 4).unwrap();
    assert_eq!(*t.value(&[1]).unwrap(), 3.0);
    for k in 2..=4u8 {
        assert_eq!(*t.value(&[k]).unwrap(), 0.0);
    }
    assert!(matches!(empirical_joint_cumulants(&matrix(vec![vec![0.0; 50]]), 7), Err(Error::OutOfRange { .. })));
    assert!(empirical_joint_cumulants(&matrix(vec![vec![0.0; 5], vec![1.0; 5]]), 2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn empirical_cumulants_are_affine_equivariant(seed in 0u64..1000, c in -3.0f64..3.0, shift in -5.0f64..5.0) {
        let x = standard_normal_draws(seed, 3, 500);
        let y: Vec<f64> = x.iter().map(|v| c * v + shift).collect();
        let tx = empirical_joint_cumulants(&matrix(vec![x]), 5).unwrap();
        let ty = empirical_joint_cumulants(&matrix(vec![y]), 5).unwrap();
        let mean = tx.value(&[1]).unwrap();
        prop_assert!((ty.value(&[1]).unwrap() - (c * mean + shift)).abs() < 1e-9);
        for k in 2..=5u8 {
            let expected = c.powi(k as i32) * tx.value(&[k]).unwrap();
            prop_assert!((ty.value(&[k]).unwrap() - expected).abs() < 1e-8 * (1.0 + expected.abs()));
        }
    }

    #[test]
    fn ks_statistic_is_symmetric_and_bounded(
        x in prop::collection::vec(-10.0f64..10.0, 1..40),
        y in prop::collection::vec(-10.0f64..10.0, 1..40),
    ) {
        let d = ks_statistic(&x, &y);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(d, ks_statistic(&y, &x));
        prop_assert_eq!(ks_statistic(&x, &x), 0.0);
    }
}

#[test]
fn permutation_and_asymptotic_paths() {
    let x = standard_normal_draws(1, 0, 500);
    let y = standard_normal_draws(1, 1, 500);
    let r = two_sample_ks(&x, &y, &mut substream(1, 0, LANE_PERMUTATION)).unwrap();
    assert_eq!(r.method, KsMethod::Permutation);
    assert!(r.p_value > 0.001 && r.p_value <= 1.0);
    let again = two_sample_ks(&x, &y, &mut substream(1, 0, LANE_PERMUTATION)).unwrap();
    assert_eq!(r, again);
    let shifted: Vec<f64> = y.iter().map(|v| v + 1.0).collect();
    let r = two_sample_ks(&x, &shifted, &mut substream(1, 0, LANE_PERMUTATION)).unwrap();
    assert_eq!(r.p_value, 1.0 / 1000.0);

    let x = standard_normal_draws(2, 0, 10_000);
    let y = standard_normal_draws(2, 1, 10_000);
    let r = two_sample_ks(&x, &y, &mut substream(2, 0, LANE_PERMUTATION)).unwrap();
    assert_eq!(r.method, KsMethod::Asymptotic);
}

#[test]
fn simulated_statistic_special_cases() {
    let s = simulate_statistic(&normal(), &normal(), 0.0, 0.0, 1000, 3).unwrap();
    for ((t, s1), s2) in s.t.iter().zip(&s.s1).zip(&s.s2) {
        assert!(t.abs() <= 2.0);
        assert!(s1.is_finite() && s2.is_finite());
    }
    assert!(simulate_statistic(&normal(), &normal(), f64::NAN, 0.0, 10, 3).is_err());

    // r3 of a S1 + b S2 at a = b = 1/√2 is 2/√2 for centred unit exponentials
    let a = std::f64::consts::FRAC_1_SQRT_2;
    let n = 200_000;
    let edge = simulate_statistic(&exponential(), &exponential(), 1.0, 0.0, n, 8).unwrap();
    let mid = simulate_statistic(&exponential(), &exponential(), a, a, n, 8).unwrap();
    let k_edge = k_statistics(&edge.t).unwrap().k3;
    let k_mid = k_statistics(&mid.t).unwrap().k3;
    assert!((k_edge - 2.0).abs() < 0.2, "{k_edge}");
    assert!((k_mid - 2.0_f64.sqrt()).abs() < 0.2, "{k_mid}");
}

#[test]
fn invariance_smoke_and_determinism() {
    let r = invariance_test(&normal(), &normal(), 1.0, &radians(), 1_000, 42, 0.05).unwrap();
    assert_eq!(r.pairs.len(), 10);
    assert_eq!(r.h0_band, 2);
    assert!(r.pairs.iter().all(|p| p.method == KsMethod::Permutation));
    assert_eq!(r.diagnostics.len(), 2);
    let again = invariance_test(&normal(), &normal(), 1.0, &radians(), 1_000, 42, 0.05).unwrap();
    assert_eq!(r, again);
    let other = invariance_test(&normal(), &normal(), 1.0, &radians(), 1_000, 43, 0.05).unwrap();
    assert_ne!(r.pairs, other.pairs);
    assert!(r.pair(0, 4).is_some() && r.pair(4, 0).is_none());

    assert!(matches!(invariance_test(&normal(), &normal(), 1.0, &radians()[..2], 1_000, 1, 0.05), Err(Error::InvalidGrid(_))));
    assert!(matches!(invariance_test(&normal(), &normal(), 1.0, &radians(), 999, 1, 0.05), Err(Error::InsufficientSample(_))));
    assert!(invariance_test(&normal(), &normal(), -1.0, &radians(), 1_000, 1, 0.05).is_err());
    assert!(invariance_test(&normal(), &normal(), 1.0, &radians(), 1_000, 1, 1.5).is_err());
}

#[test]
fn plug_in_variance_converges() {
    for (n, tol) in [(1_000usize, 0.25), (10_000, 0.08), (100_000, 0.025)] {
        let s = simulate_statistic(&normal(), &normal(), 0.6, 0.8, n, 17).unwrap();
        // Var = 0.36 + 0.64 + 2·(1/3)
        let v = k_statistics(&s.t).unwrap().k2;
        assert!((v - (1.0 + 2.0 / 3.0)).abs() < tol, "n = {n}: {v}");
    }
}

#[test]
fn exponential_inputs_are_rejected() {
    let r = invariance_test(&exponential(), &exponential(), 1.0, &radians(), 100_000, 42, 0.05).unwrap();
    assert!(r.min_p_value() < 1e-3);
    assert!(r.pair(0, 2).unwrap().p_value < 1e-3);
    assert!(!r.within_band);
}

#[test]
fn null_rejection_rate() {
    let replicates = 100;
    let mut rejected = 0;
    let mut tests = 0;
    for seed in 0..replicates {
        let r = invariance_test(&normal(), &normal(), 1.0, &radians(), 10_000, 5_000 + seed, 0.05).unwrap();
        rejected += r.rejections;
        tests += r.pairs.len();
    }
    let rate = rejected as f64 / tests as f64;
    let bound = 0.05 + 3.0 * (0.05 * 0.95 / tests as f64).sqrt();
    assert!(rate <= bound, "rate {rate} exceeds {bound}");
    assert_eq!(h0_band(10, 0.05), 2);
}
