use serde::Serialize;

use super::{
    berger_shrink, block_var_d2, coarse_covariance, coefficient_sds, pair_differences,
    threshold_pyramid, EstimatorConfig, Parity,
};
use crate::error::{Error, Result};
use crate::kernel::KernelConfig;
use crate::wavelet::{
    build_filter, forward_dwt, inverse_dwt, row_energy_table, CoefficientPyramid,
};

/// Which difference sequences an estimate was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Half {
    Even,
    Odd,
    Combined,
}

impl From<Parity> for Half {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Even => Half::Even,
            Parity::Odd => Half::Odd,
        }
    }
}

/// Estimator that produced a [`VarianceEstimate`], with its settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMethod {
    Wavelet(EstimatorConfig),
    Kernel {
        config: KernelConfig,
        /// Cross-validated bandwidth of each half, in the order used.
        bandwidths: Vec<f64>,
    },
}

/// Estimated variance function on the grid `x_i = 2i/n`, `i = 1..n/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceEstimate {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Denoised coefficients. Absent for kernel estimates and for combined
    /// estimates whose halves have different lengths.
    pub pyramid: Option<CoefficientPyramid>,
    pub half: Half,
    pub method: EstimateMethod,
}

impl VarianceEstimate {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub(crate) fn estimation_grid(n: usize) -> Vec<f64> {
    (1..=n / 2).map(|i| 2.0 * i as f64 / n as f64).collect()
}

fn check_sample(n: usize, j0: u32) -> Result<()> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    if j0 + 3 >= usize::BITS || n < 1usize << (j0 + 3) {
        return Err(Error::LevelTooLarge { j0, len: n });
    }
    Ok(())
}

/// Estimate from one of the two interleaved difference sequences.
pub fn estimate_half(
    y: &[f64],
    parity: Parity,
    config: &EstimatorConfig,
) -> Result<VarianceEstimate> {
    config.validate()?;
    let n = y.len();
    check_sample(n, config.j0)?;
    let filter = build_filter(&config.filter)?;

    let diffs = pair_differences(y, parity, config.odd_boundary)?;
    let m = diffs.len();
    // Effective sample size; equals n unless the odd half was truncated.
    let n_eff = 2 * m;
    let dsq: Vec<f64> = diffs.iter().map(|d| d * d).collect();
    let input_scale = (2.0 / n_eff as f64).sqrt();
    let scaled: Vec<f64> = dsq.iter().map(|v| input_scale * v).collect();

    let empirical = forward_dwt(&scaled, &filter, config.j0)?;
    let table = block_var_d2(&dsq, config.r, n_eff)?;
    let rows = row_energy_table(&filter, m, config.j0)?;
    let sds = coefficient_sds(&table, &rows, n_eff)?;
    let mut denoised = threshold_pyramid(&empirical, &sds, n_eff, config)?;

    let cov = coarse_covariance(&rows, &table, n_eff)?;
    let coarse = berger_shrink(empirical.scaling(), &cov)?;
    denoised.scaling_mut().copy_from_slice(&coarse);

    let output_scale = (n_eff as f64 / 2.0).sqrt();
    let mut values: Vec<f64> = inverse_dwt(&denoised, &filter)
        .into_iter()
        .map(|v| output_scale * v)
        .collect();
    if config.clamp_negative {
        values.iter_mut().for_each(|v| *v = v.max(0.0));
    }
    Ok(VarianceEstimate {
        grid: (1..=m).map(|i| 2.0 * i as f64 / n as f64).collect(),
        values,
        pyramid: Some(denoised),
        half: parity.into(),
        method: EstimateMethod::Wavelet(config.clone()),
    })
}

/// Average of the even- and odd-half estimates on the common grid.
pub fn estimate(y: &[f64], config: &EstimatorConfig) -> Result<VarianceEstimate> {
    let even = estimate_half(y, Parity::Even, config)?;
    let odd = estimate_half(y, Parity::Odd, config)?;
    Ok(combine_halves(even, odd))
}

/// Pointwise mean where both halves are defined; the even half elsewhere.
pub(crate) fn combine_halves(even: VarianceEstimate, odd: VarianceEstimate) -> VarianceEstimate {
    let values = even
        .values
        .iter()
        .enumerate()
        .map(|(i, &e)| match odd.values.get(i) {
            Some(&o) => 0.5 * (e + o),
            None => e,
        })
        .collect();
    let pyramid = match (&even.pyramid, &odd.pyramid) {
        (Some(a), Some(b)) if a.same_shape(b) => {
            let fb = b.to_flat();
            let flat: Vec<f64> = a
                .to_flat()
                .iter()
                .zip(&fb)
                .map(|(x, y)| 0.5 * (x + y))
                .collect();
            CoefficientPyramid::from_flat(&flat, a.j0()).ok()
        }
        _ => None,
    };
    VarianceEstimate {
        grid: even.grid,
        values,
        pyramid,
        half: Half::Combined,
        method: even.method,
    }
}

/// Value at the grid point nearest to `x_star`, ties going to the smaller index.
pub fn point_estimate(est: &VarianceEstimate, x_star: f64) -> Result<f64> {
    if !(x_star > 0.0 && x_star < 1.0) {
        return Err(Error::OutOfDomain(x_star));
    }
    let mut best = None::<(usize, f64)>;
    for (i, &x) in est.grid.iter().enumerate() {
        let dist = (x - x_star).abs();
        if best.is_none_or(|(_, b)| dist < b) {
            best = Some((i, dist));
        }
    }
    best.map(|(i, _)| est.values[i])
        .ok_or_else(|| Error::ShapeMismatch("estimate has an empty grid".into()))
}
