//! Quick invariant checks that need no external data; backs the `selftest`
//! command.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::estimator::{berger_shrink, block_var_d2, estimate, soft_threshold, EstimatorConfig};
use crate::kernel::nw_smooth;
use crate::models::{oracle_var_d2, oracle_var_d2_mc, NoiseModel};
use crate::wavelet::{build_filter, forward_dwt, inverse_dwt, row_energy_table, SUPPORTED_FILTERS};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn random_signal(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Runs every check; never panics on a failed check.
pub fn run() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_081_015);
    let mut out = Vec::new();

    for &name in SUPPORTED_FILTERS {
        let f = build_filter(name).expect("supported filter");
        let (mut recon, mut parseval) = (0f64, 0f64);
        for _ in 0..50 {
            let x = random_signal(&mut rng, 256);
            let p = forward_dwt(&x, &f, 2).expect("valid shape");
            let back = inverse_dwt(&p, &f);
            recon = recon.max(
                x.iter()
                    .zip(&back)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max),
            );
            let ex: f64 = x.iter().map(|v| v * v).sum();
            let ec: f64 = p.to_flat().iter().map(|v| v * v).sum();
            parseval = parseval.max((ex - ec).abs() / ex);
        }
        out.push(check(
            format!("{name}: perfect reconstruction"),
            recon <= 1e-9,
            format!("max error {recon:.2e}"),
        ));
        out.push(check(
            format!("{name}: Parseval"),
            parseval <= 1e-9,
            format!("max relative error {parseval:.2e}"),
        ));

        let rows = row_energy_table(&f, 64, 2).expect("valid shape");
        let mut w = DMatrix::<f64>::zeros(64, 64);
        for r in 0..64 {
            for &(c, v) in rows.row(r) {
                w[(r, c as usize)] = v;
            }
        }
        let err = (&w * w.transpose() - DMatrix::<f64>::identity(64, 64)).amax();
        out.push(check(
            format!("{name}: W W' = I"),
            err <= 1e-10,
            format!("max entry error {err:.2e}"),
        ));
    }

    let cfg = EstimatorConfig::default();
    let y = random_signal(&mut rng, 512);
    let base = estimate(&y, &cfg).expect("valid input");
    let shifted: Vec<f64> = y.iter().map(|v| v + 3.7).collect();
    let shift_err = estimate(&shifted, &cfg)
        .map(|e| {
            e.values
                .iter()
                .zip(&base.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .unwrap_or(f64::INFINITY);
    out.push(check(
        "estimator: mean-shift invariance",
        shift_err <= 1e-12,
        format!("max difference {shift_err:.2e}"),
    ));
    let mut scale_err = 0f64;
    for c in [0.5, 2.0, 10.0] {
        let scaled: Vec<f64> = y.iter().map(|v| c * v).collect();
        if let Ok(e) = estimate(&scaled, &cfg) {
            for (a, b) in e.values.iter().zip(&base.values) {
                let denom = (c * c * b).abs().max(1e-300);
                scale_err = scale_err.max((a - c * c * b).abs() / denom);
            }
        } else {
            scale_err = f64::INFINITY;
        }
    }
    out.push(check(
        "estimator: c² scale equivariance",
        scale_err <= 1e-9,
        format!("max relative error {scale_err:.2e}"),
    ));

    let soft_ok = soft_threshold(2.5, 1.0) == Ok(1.5) && soft_threshold(-0.5, 1.0) == Ok(0.0);
    out.push(check("soft threshold examples", soft_ok, ""));

    let js = berger_shrink(&[2.0; 8], &DMatrix::identity(8, 8))
        .map(|v| v.iter().all(|x| (x - 1.625).abs() < 1e-14))
        .unwrap_or(false);
    out.push(check("coarse shrinkage: identity covariance", js, ""));

    let dsq = [1.0, 3.0, 1.0, 3.0, 1.0, 3.0, 1.0, 3.0];
    let want = 2.0 * 8.0 / (4.0 * (2.0 - 1.0 / 16f64.ln()));
    let block_ok = block_var_d2(&dsq, 2.0 / 3.0, 16)
        .map(|t| t.values().iter().all(|v| (v - want).abs() < 1e-12))
        .unwrap_or(false);
    out.push(check(
        "block Var(D²) hand value",
        block_ok,
        format!("expected {want:.6}"),
    ));

    let f = |x: f64| (6.0 * x).sin();
    let v = |x: f64| 1.0 + x * x;
    let exact = oracle_var_d2(f, v, 64, NoiseModel::Gaussian, 9).unwrap_or(f64::NAN);
    let mc = oracle_var_d2_mc(f, v, 64, NoiseModel::Gaussian, 9, 200_000, &mut rng);
    let (oracle_ok, detail) = match mc {
        Ok(m) => (
            (m.variance - exact).abs() <= 3.0 * m.std_error,
            format!(
                "exact {exact:.4}, MC {:.4} ± {:.4}",
                m.variance, m.std_error
            ),
        ),
        Err(e) => (false, e.to_string()),
    };
    out.push(check(
        "Var(D²): closed form vs Monte Carlo",
        oracle_ok,
        detail,
    ));

    let flat = nw_smooth(&[2.0; 64], 0.1, &[0.1, 0.5, 0.99])
        .map(|v| v.iter().all(|x| (x - 2.0).abs() < 1e-12))
        .unwrap_or(false);
    out.push(check("kernel smoother reproduces constants", flat, ""));

    out
}
