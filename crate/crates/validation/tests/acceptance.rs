//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and
//! exits nonzero if any failed.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use varwave::estimator::{
    berger_shrink, block_var_d2, coarse_covariance, coefficient_sds, estimate, pair_differences,
    EstimatorConfig, OddBoundary, Parity, VarD2Table,
};
use varwave::harness::{
    report_rows, rows_to_csv, run_cell, run_cell_with, Execution, RiskReport, SimulationSpec,
};
use varwave::kernel::{nw_smooth, select_bandwidth, KernelConfig};
use varwave::models::{
    observations, oracle_var_d2, oracle_var_d2_mc, MeanFunction, NoiseModel, VarianceShape,
};
use varwave::wavelet::{
    build_filter, forward_dwt, inverse_dwt, row_energy_table, SUPPORTED_FILTERS,
};

const SEED: u64 = 20_070_101;
const REPS: usize = 500;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Memoized Monte Carlo cells. Cells at f = 0, r = 0.5 always run the kernel
/// baseline too; the wavelet numbers are unaffected because both estimators
/// see the same replications.
#[derive(Default)]
struct Cells(HashMap<(MeanFunction, VarianceShape, usize, usize, u64), RiskReport>);

impl Cells {
    fn get(
        &mut self,
        mean: MeanFunction,
        var: VarianceShape,
        n: usize,
        reps: usize,
        r: f64,
    ) -> &RiskReport {
        let key = (mean, var, n, reps, r.to_bits());
        self.0.entry(key).or_insert_with(|| {
            let mut spec = SimulationSpec::new(mean, var, n, reps, SEED);
            spec.estimator.r = r;
            if mean == MeanFunction::Zero && r == 0.5 && n == 4096 {
                spec.baseline = Some(KernelConfig::default());
            }
            run_cell(&spec).expect("simulation cell")
        })
    }

    fn mise(
        &mut self,
        mean: MeanFunction,
        var: VarianceShape,
        n: usize,
        reps: usize,
        r: f64,
    ) -> f64 {
        self.get(mean, var, n, reps, r).wavelet.mise_mean
    }
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    max / min
}

fn table1_cells(cells: &mut Cells) -> Outcome {
    let bands = [
        (VarianceShape::V1, 0.057, 0.115),
        (VarianceShape::V2, 0.037, 0.073),
        (VarianceShape::Bumps, 0.136, 0.273),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (var, lo, hi) in bands {
        let report = cells.get(MeanFunction::Zero, var, 4096, REPS, 0.5);
        let m = report.wavelet.mise_mean;
        let inside = (lo..=hi).contains(&m);
        ok &= inside;
        parts.push(format!(
            "{var} {m:.4}±{:.4} in [{lo}, {hi}]: {}",
            report.wavelet.mise_se,
            if inside { "yes" } else { "no" }
        ));
    }
    outcome(ok, parts.join("; "))
}

fn mean_insensitivity(cells: &mut Cells) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for &var in VarianceShape::ALL {
        let row: Vec<f64> = MeanFunction::ALL
            .iter()
            .map(|&m| cells.mise(m, var, 4096, REPS, 0.5))
            .collect();
        let ratio = spread(&row);
        ok &= ratio <= 1.40;
        parts.push(format!("{var} {ratio:.3}"));
    }
    outcome(
        ok,
        format!("max/min over means (limit 1.40): {}", parts.join(", ")),
    )
}

fn r_insensitivity(cells: &mut Cells) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for &var in VarianceShape::ALL {
        let row: Vec<f64> = [0.2, 0.5, 0.8]
            .iter()
            .map(|&r| cells.mise(MeanFunction::Zero, var, 4096, REPS, r))
            .collect();
        let ratio = spread(&row);
        ok &= ratio <= 1.35;
        parts.push(format!("{var} {ratio:.3}"));
    }
    outcome(
        ok,
        format!("max/min over r (limit 1.35): {}", parts.join(", ")),
    )
}

fn wavelet_beats_kernel(cells: &mut Cells) -> Outcome {
    let mut all_below = true;
    let mut clear_wins = 0;
    let mut parts = Vec::new();
    for &var in VarianceShape::ALL {
        let report = cells.get(MeanFunction::Zero, var, 4096, REPS, 0.5);
        let w = report.wavelet.mise_mean;
        let k = report.kernel.as_ref().expect("kernel baseline").mise_mean;
        all_below &= w < k;
        if k / w >= 1.05 {
            clear_wins += 1;
        }
        parts.push(format!(
            "{var} wavelet {w:.4} kernel {k:.4} ratio {:.3}",
            k / w
        ));
    }
    outcome(all_below && clear_wins >= 3, parts.join("; "))
}

fn rate_direction(cells: &mut Cells) -> Outcome {
    let row: Vec<f64> = [512, 2048, 8192]
        .iter()
        .map(|&n| cells.mise(MeanFunction::Zero, VarianceShape::V2, n, 200, 0.5))
        .collect();
    let ok = row[0] > row[1] && row[1] > row[2];
    outcome(
        ok,
        format!(
            "v2 MISE at n = 512, 2048, 8192: {:.4}, {:.4}, {:.4}",
            row[0], row[1], row[2]
        ),
    )
}

fn wavelet_suite() -> Outcome {
    let mut rng = rng(6);
    let (mut pr, mut parseval, mut ortho) = (0f64, 0f64, 0f64);
    for name in SUPPORTED_FILTERS {
        let filter = build_filter(name).unwrap();
        for trial in 0..300 {
            let n = 1usize << (3 + trial % 8);
            let x = uniform_vec(&mut rng, n, -10.0, 10.0);
            let pyr = forward_dwt(&x, &filter, (trial % 3) as u32).unwrap();
            let back = inverse_dwt(&pyr, &filter);
            pr = pr.max(
                back.iter()
                    .zip(&x)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max),
            );
            let ex: f64 = x.iter().map(|v| v * v).sum();
            let ec: f64 = pyr.to_flat().iter().map(|v| v * v).sum();
            parseval = parseval.max((ex - ec).abs() / ex);
        }
        for n in [32usize, 256] {
            let cols: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    let mut e = vec![0.0; n];
                    e[i] = 1.0;
                    forward_dwt(&e, &filter, 1).unwrap().to_flat()
                })
                .collect();
            for a in 0..n {
                for b in a..n {
                    let s: f64 = (0..n).map(|i| cols[i][a] * cols[i][b]).sum();
                    ortho = ortho.max((s - if a == b { 1.0 } else { 0.0 }).abs());
                }
            }
        }
    }
    outcome(
        pr <= 1e-9 && parseval <= 1e-9 && ortho <= 1e-10,
        format!("reconstruction {pr:.1e} (≤1e-9), Parseval {parseval:.1e} (≤1e-9), W·Wᵀ−I {ortho:.1e} (≤1e-10)"),
    )
}

fn equivariance() -> Outcome {
    let mut rng = rng(7);
    let (mut shift_err, mut scale_err) = (0f64, 0f64);
    let max_rel = |a: &[f64], b: &[f64]| {
        let s = b.iter().fold(0f64, |m, v| m.max(v.abs()));
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
            / s
    };
    for trial in 0..20 {
        let n = 1usize << (7 + trial % 6);
        let z: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let y = observations(|x| (9.0 * x).cos(), |x| 0.5 + 4.0 * x * x, &z).unwrap();
        let cfg = EstimatorConfig::default();
        let base = estimate(&y, &cfg).unwrap().values;
        let c0: f64 = rng.gen_range(-100.0..100.0);
        let shifted: Vec<f64> = y.iter().map(|v| v + c0).collect();
        shift_err = shift_err.max(max_rel(&estimate(&shifted, &cfg).unwrap().values, &base));
        for c in [0.5, 2.0, 10.0] {
            let scaled: Vec<f64> = y.iter().map(|v| c * v).collect();
            let want: Vec<f64> = base.iter().map(|v| c * c * v).collect();
            scale_err = scale_err.max(max_rel(&estimate(&scaled, &cfg).unwrap().values, &want));
        }
    }
    outcome(
        shift_err <= 1e-12 && scale_err <= 1e-9,
        format!("mean shift {shift_err:.1e} (≤1e-12), c² law {scale_err:.1e} (≤1e-9)"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng(8);
    let mut worst = [0f64; 5];
    // coefficient_sds and coarse_covariance against the dense transform matrix
    for name in ["haar", "daub4", "symmlet8", "coiflet3"] {
        let filter = build_filter(name).unwrap();
        let (m, j0, n) = (32usize, 2u32, 64usize);
        let values = uniform_vec(&mut rng, m, 0.1, 5.0);
        let table = VarD2Table::from_values(values.clone()).unwrap();
        let rows = row_energy_table(&filter, m, j0).unwrap();
        let w = dense_w(filter.lowpass(), m, j0);
        let sds = coefficient_sds(&table, &rows, n).unwrap().to_flat();
        for (idx, row) in w.iter().enumerate() {
            let s: f64 = row.iter().zip(&values).map(|(a, v)| a * a * v).sum();
            worst[0] = worst[0].max(rel_err(sds[idx], (2.0 / n as f64 * s).sqrt()));
        }
        let cov = coarse_covariance(&rows, &table, n).unwrap();
        for a in 0..1 << j0 {
            for b in 0..1 << j0 {
                let s: f64 = (0..m).map(|i| w[a][i] * values[i] * w[b][i]).sum();
                let oracle = 2.0 / n as f64 * s;
                worst[1] = worst[1].max((cov[(a, b)] - oracle).abs() / cov.amax());
            }
        }
    }
    // Berger shrinkage against an explicit inverse
    for trial in 0..60 {
        let m = 3 + trial % 10;
        let s = random_spd(&mut rng, m, 0.5);
        let d = uniform_vec(&mut rng, m, -2.0, 2.0);
        let ours = berger_shrink(&d, &DMatrix::from_fn(m, m, |i, j| s[i][j])).unwrap();
        let sinv_d = gauss_solve(&s, &d);
        let quad: f64 = d.iter().zip(&sinv_d).map(|(a, b)| a * b).sum();
        let quad2: f64 = sinv_d.iter().map(|v| v * v).sum();
        let f = quad.min((m - 2) as f64) / quad2;
        let scale = d.iter().fold(0f64, |a, v| a.max(v.abs()));
        for i in 0..m {
            worst[2] = worst[2].max((ours[i] - (d[i] - f * sinv_d[i])).abs() / scale);
        }
    }
    // kernel smoother and bandwidth selection against full double loops
    let cfg = KernelConfig {
        grid_size: 12,
        ..Default::default()
    };
    for trial in 0..20 {
        let m = [16usize, 32][trial % 2];
        let dsq = uniform_vec(&mut rng, m, 0.0, 4.0);
        let x: Vec<f64> = (1..=m).map(|i| i as f64 / m as f64).collect();
        let h = rng.gen_range(0.07..0.6);
        for (xi, v) in x.iter().zip(nw_smooth(&dsq, h, &x).unwrap()) {
            worst[3] = worst[3].max(rel_err(v, nw_at(&dsq, h, *xi, None).unwrap()));
        }
        let grid = cfg.bandwidth_grid(2 * m).unwrap();
        let mut best: Option<(f64, f64)> = None;
        for &hh in &grid {
            let score: Option<f64> = (0..m)
                .map(|i| nw_at(&dsq, hh, x[i], Some(i)).map(|fit| (dsq[i] - fit).powi(2)))
                .sum();
            if let Some(s) = score {
                if best.map_or(true, |(_, b)| s < b * (1.0 - 1e-12)) {
                    best = Some((hh, s));
                }
            }
        }
        worst[4] = worst[4].max(rel_err(
            select_bandwidth(&dsq, &cfg).unwrap(),
            best.unwrap().0,
        ));
    }
    let names = [
        "coefficient_sds",
        "coarse_covariance",
        "berger_shrink",
        "nw_smooth",
        "select_bandwidth",
    ];
    let detail: Vec<String> = names
        .iter()
        .zip(&worst)
        .map(|(n, w)| format!("{n} {w:.1e}"))
        .collect();
    outcome(
        worst.iter().all(|&w| w <= 1e-9),
        format!("max relative error (≤1e-9): {}", detail.join(", ")),
    )
}

fn block_bias() -> Outcome {
    let mut rng = rng(9);
    let n = 4096;
    let (mut total, mut count) = (0.0, 0usize);
    for _ in 0..100 {
        let z: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let y = observations(|_| 0.0, |_| 1.0, &z).unwrap();
        let d = pair_differences(&y, Parity::Even, OddBoundary::Wrap).unwrap();
        let dsq: Vec<f64> = d.iter().map(|v| v * v).collect();
        let t = block_var_d2(&dsq, 0.5, n).unwrap();
        for k in 0..t.blocks() {
            // true Var(D_i²) is 2 here
            total += t.block_value(k) / 2.0;
            count += 1;
        }
    }
    let ratio = total / count as f64;
    let zero = block_var_d2(&vec![1.7; n / 2], 0.5, n)
        .unwrap()
        .values()
        .iter()
        .all(|&v| v == 0.0);
    outcome(
        (1.02..=1.15).contains(&ratio) && zero,
        format!("grand mean ratio {ratio:.4} in [1.02, 1.15]; constant input gives zero: {zero}"),
    )
}

fn closed_form_vs_mc() -> Outcome {
    let mut rng = rng(10);
    let mut worst_z = 0f64;
    for _ in 0..20 {
        let n = 1usize << rng.gen_range(4..12);
        let i = rng.gen_range(1..=n / 2);
        let (a, b, fc) = (
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-40.0..40.0),
            rng.gen_range(0.0..30.0),
        );
        let (c, e) = (rng.gen_range(0.1..3.0), rng.gen_range(0.0..5.0));
        let f = move |x: f64| a + b * (fc * x).sin();
        let v = move |x: f64| c + e * x * x;
        let exact = oracle_var_d2(f, v, n, NoiseModel::Gaussian, i).unwrap();
        let mc = oracle_var_d2_mc(f, v, n, NoiseModel::Gaussian, i, 1_000_000, &mut rng).unwrap();
        worst_z = worst_z.max((mc.variance - exact).abs() / mc.std_error);
    }
    outcome(
        worst_z <= 3.0,
        format!("largest |MC − exact| / SE over 20 configurations: {worst_z:.2} (≤3)"),
    )
}

fn determinism() -> Outcome {
    let spec = SimulationSpec::from_json(
        r#"{"mean": "doppler", "var": "bumps", "n": 1024, "reps": 40, "seed": 4242,
            "estimator": {"r": 0.3}, "baseline": {}}"#,
    )
    .unwrap();
    let csv = |exec| rows_to_csv(&report_rows(&run_cell_with(&spec, exec).unwrap()));
    let serial = csv(Execution::Serial);
    let parallel = csv(Execution::Parallel);
    let again = csv(Execution::Parallel);
    outcome(
        serial.as_bytes() == parallel.as_bytes() && parallel == again,
        format!(
            "{} bytes; serial == parallel: {}",
            serial.len(),
            serial == parallel
        ),
    )
}

const TEST_NAME: &str = "all_criteria";

fn main() -> ExitCode {
    // Behave like a libtest binary for `--list` and name filters so that
    // `cargo test <filter>` elsewhere in the workspace skips this suite.
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("{TEST_NAME}: test");
        return ExitCode::SUCCESS;
    }
    let exact = args.iter().any(|a| a == "--exact");
    let filters: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    let selected = filters.is_empty()
        || filters.iter().any(|f| {
            if exact {
                f.as_str() == TEST_NAME
            } else {
                TEST_NAME.contains(f.as_str())
            }
        });
    if !selected {
        return ExitCode::SUCCESS;
    }

    let mut cells = Cells::default();
    let criteria: Vec<(&str, Box<dyn FnOnce(&mut Cells) -> Outcome>)> = vec![
        ("table 1 cells", Box::new(table1_cells)),
        ("mean-function insensitivity", Box::new(mean_insensitivity)),
        ("r insensitivity", Box::new(r_insensitivity)),
        ("wavelet beats kernel", Box::new(wavelet_beats_kernel)),
        ("rate direction", Box::new(rate_direction)),
        ("wavelet suite", Box::new(|_| wavelet_suite())),
        ("estimator equivariance", Box::new(|_| equivariance())),
        ("oracle equivalence", Box::new(|_| oracle_equivalence())),
        ("block-estimator bias", Box::new(|_| block_bias())),
        (
            "closed form vs Monte Carlo",
            Box::new(|_| closed_form_vs_mc()),
        ),
        ("determinism", Box::new(|_| determinism())),
    ];
    let mut failures = 0;
    for (idx, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run(&mut cells);
        if !result.passed {
            failures += 1;
        }
        println!(
            "criterion {:>2} {} {name} ({:.1}s): {}",
            idx + 1,
            if result.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            result.detail
        );
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
