mod common;

use proptest::prelude::*;
use rand_distr::{Distribution, StandardNormal};
use varwave::estimator::{estimate, estimate_half, EstimatorConfig, Parity};
use varwave::kernel::{kernel_estimate, KernelConfig};

fn sample(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = common::rng(seed);
    (0..n)
        .map(|i| {
            let x = (i + 1) as f64 / n as f64;
            let sd = (1.0 + 3.0 * (std::f64::consts::PI * x).sin().powi(2)).sqrt();
            (10.0 * x).sin()
                + sd * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng)
        })
        .collect()
}

fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0f64, |m, v| m.max(v.abs())).max(1e-300);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
        / scale
}

fn configs() -> Vec<EstimatorConfig> {
    vec![
        EstimatorConfig::default(),
        EstimatorConfig {
            filter: "haar".into(),
            r: 0.3,
            ..Default::default()
        },
        EstimatorConfig {
            filter: "coiflet3".into(),
            j0: 4,
            ..Default::default()
        },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wavelet_estimate_ignores_mean_shift(seed in any::<u64>(), shift in -50.0f64..50.0, log_n in 7u32..12) {
        let y = sample(seed, 1 << log_n);
        let shifted: Vec<f64> = y.iter().map(|v| v + shift).collect();
        for cfg in configs() {
            let a = estimate(&y, &cfg).unwrap();
            let b = estimate(&shifted, &cfg).unwrap();
            prop_assert!(max_rel(&b.values, &a.values) <= 1e-12, "{:e}", max_rel(&b.values, &a.values));
        }
    }

    #[test]
    fn wavelet_estimate_scales_quadratically(seed in any::<u64>(), log_n in 7u32..12) {
        let y = sample(seed, 1 << log_n);
        for c in [0.5, 2.0, 10.0] {
            let scaled: Vec<f64> = y.iter().map(|v| c * v).collect();
            for cfg in configs() {
                for parity in [Parity::Even, Parity::Odd] {
                    let a = estimate_half(&y, parity, &cfg).unwrap();
                    let b = estimate_half(&scaled, parity, &cfg).unwrap();
                    let expected: Vec<f64> = a.values.iter().map(|v| c * c * v).collect();
                    prop_assert!(max_rel(&b.values, &expected) <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn kernel_estimate_is_shift_invariant_and_scale_equivariant(seed in any::<u64>(), shift in -20.0f64..20.0) {
        let y = sample(seed, 512);
        let cfg = KernelConfig::default();
        let base = kernel_estimate(&y, &cfg).unwrap();
        let shifted: Vec<f64> = y.iter().map(|v| v + shift).collect();
        prop_assert!(max_rel(&kernel_estimate(&shifted, &cfg).unwrap().values, &base.values) <= 1e-10);
        for c in [0.5, 2.0, 10.0] {
            let scaled: Vec<f64> = y.iter().map(|v| c * v).collect();
            let expected: Vec<f64> = base.values.iter().map(|v| c * c * v).collect();
            prop_assert!(max_rel(&kernel_estimate(&scaled, &cfg).unwrap().values, &expected) <= 1e-9);
        }
    }
}

#[test]
fn zero_input_gives_zero_estimate() {
    let y = vec![4.2; 1024];
    for cfg in configs() {
        assert!(estimate(&y, &cfg)
            .unwrap()
            .values
            .iter()
            .all(|v| v.abs() < 1e-12));
    }
}
