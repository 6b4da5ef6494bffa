//! Kernel comparison estimator: Nadaraya–Watson smoothing of the squared
//! differences with an Epanechnikov kernel and one global bandwidth chosen by
//! leave-one-out cross-validation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{
    estimation_grid, pair_differences, EstimateMethod, Half, OddBoundary, Parity, VarianceEstimate,
};

/// Bandwidth search settings. The kernel (Epanechnikov) and the criterion
/// (leave-one-out squared error) are fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelConfig {
    /// Number of geometric grid points.
    pub grid_size: usize,
    /// Smallest candidate as a multiple of `1/n`; must exceed 1.
    pub min_bandwidth_factor: f64,
    pub max_bandwidth: f64,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            grid_size: 30,
            min_bandwidth_factor: 2.0,
            max_bandwidth: 0.5,
        }
    }
}

impl KernelConfig {
    /// Geometric grid from `min_bandwidth_factor / n` to `max_bandwidth`.
    pub fn bandwidth_grid(&self, n: usize) -> Result<Vec<f64>> {
        let lo = self.min_bandwidth_factor / n as f64;
        let hi = self.max_bandwidth;
        if self.grid_size < 2 || !(self.min_bandwidth_factor > 1.0) || !(hi > lo) || !hi.is_finite()
        {
            return Err(Error::InvalidParameter(format!(
                "bandwidth grid of {} points over [{lo}, {hi}] is degenerate",
                self.grid_size
            )));
        }
        let ratio = (hi / lo).ln() / (self.grid_size - 1) as f64;
        let mut grid: Vec<f64> = (0..self.grid_size)
            .map(|i| lo * (ratio * i as f64).exp())
            .collect();
        grid[0] = lo;
        grid[self.grid_size - 1] = hi;
        Ok(grid)
    }
}

/// Bandwidths below this relative score difference count as tied. Distinct
/// bandwidths that cover the same neighbours give identical scores up to
/// round-off.
const TIE_TOLERANCE: f64 = 1e-12;

#[inline]
fn epanechnikov(t: f64) -> f64 {
    let v = 0.75 * (1.0 - t * t);
    if v > 0.0 {
        v
    } else {
        0.0
    }
}

/// Nadaraya–Watson estimate at the points `x` from observations `dsq` on the
/// design `u_i = 2i/n`, `n = 2 * dsq.len()`. Weights are renormalized at every
/// evaluation point.
pub fn nw_smooth(dsq: &[f64], h: f64, x: &[f64]) -> Result<Vec<f64>> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bandwidth {h} must be positive"
        )));
    }
    let m = dsq.len();
    if m == 0 {
        return Err(Error::EmptyWindow(h));
    }
    let step = 1.0 / m as f64;
    x.iter()
        .map(|&x0| {
            let lo = (((x0 - h) / step).ceil().max(1.0)) as usize;
            let hi = (((x0 + h) / step).floor().min(m as f64)) as usize;
            let (mut num, mut den) = (0.0, 0.0);
            for l in lo.max(1)..=hi {
                let w = epanechnikov((x0 - l as f64 * step) / h);
                num += w * dsq[l - 1];
                den += w;
            }
            if den > 0.0 {
                Ok(num / den)
            } else {
                Err(Error::EmptyWindow(h))
            }
        })
        .collect()
}

/// Leave-one-out score `Σ_i (dsq_i - m̂_{-i}(u_i))²` for one bandwidth, or
/// `None` when some point has no neighbour inside the window.
pub fn loo_score(dsq: &[f64], h: f64) -> Option<f64> {
    let m = dsq.len();
    let step = 1.0 / m as f64;
    let reach = ((h / step).floor() as usize).min(m);
    // Weights by integer offset; offset `reach` may sit exactly on the kernel edge.
    let stencil: Vec<f64> = (0..=reach)
        .map(|d| epanechnikov(d as f64 * step / h))
        .collect();
    if stencil.len() < 2 || stencil[1] == 0.0 {
        return None;
    }
    let mut score = 0.0;
    for i in 0..m {
        let left = reach.min(i);
        let right = reach.min(m - 1 - i);
        let (mut num, mut den) = (0.0, 0.0);
        for d in 1..=left {
            num += stencil[d] * dsq[i - d];
            den += stencil[d];
        }
        for d in 1..=right {
            num += stencil[d] * dsq[i + d];
            den += stencil[d];
        }
        if den <= 0.0 {
            return None;
        }
        let resid = dsq[i] - num / den;
        score += resid * resid;
    }
    Some(score)
}

/// LOO score for every grid bandwidth.
pub fn cv_scores(dsq: &[f64], grid: &[f64]) -> Vec<Option<f64>> {
    grid.iter().map(|&h| loo_score(dsq, h)).collect()
}

/// Grid bandwidth minimizing the leave-one-out score; ties (up to relative
/// round-off) go to the smaller bandwidth.
pub fn select_bandwidth(dsq: &[f64], config: &KernelConfig) -> Result<f64> {
    if dsq.len() < 16 {
        return Err(Error::BadSampleSize(dsq.len()));
    }
    let grid = config.bandwidth_grid(2 * dsq.len())?;
    let mut best: Option<(f64, f64)> = None;
    for (h, score) in grid.iter().zip(cv_scores(dsq, &grid)) {
        if let Some(s) = score {
            if best.is_none_or(|(_, b)| s < b * (1.0 - TIE_TOLERANCE)) {
                best = Some((*h, s));
            }
        }
    }
    best.map(|(h, _)| h).ok_or_else(|| {
        Error::InvalidParameter("no bandwidth in the grid admits a leave-one-out fit".into())
    })
}

/// Kernel estimate of the variance function on the grid `2i/n`, averaging the
/// even and odd difference halves as the wavelet estimator does.
pub fn kernel_estimate(y: &[f64], config: &KernelConfig) -> Result<VarianceEstimate> {
    let n = y.len();
    let grid = estimation_grid(n);
    let mut halves = Vec::with_capacity(2);
    let mut bandwidths = Vec::with_capacity(2);
    for parity in [Parity::Even, Parity::Odd] {
        let dsq: Vec<f64> = pair_differences(y, parity, OddBoundary::Wrap)?
            .iter()
            .map(|d| d * d)
            .collect();
        let h = select_bandwidth(&dsq, config)?;
        halves.push(nw_smooth(&dsq, h, &grid)?);
        bandwidths.push(h);
    }
    let values = halves[0]
        .iter()
        .zip(&halves[1])
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    Ok(VarianceEstimate {
        grid,
        values,
        pyramid: None,
        half: Half::Combined,
        method: EstimateMethod::Kernel {
            config: config.clone(),
            bandwidths,
        },
    })
}
