use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::metrics::{mean_and_se, mise};
use crate::error::{Error, Result};
use crate::estimator::{estimate, EstimatorConfig};
use crate::kernel::{kernel_estimate, KernelConfig};
use crate::models::{
    normalize_variance, substream, synthesize_with, MeanFunction, NoiseModel, VarianceShape,
};

/// One Monte Carlo cell: a (mean, variance, n) design, replication count,
/// master seed, and estimator settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSpec {
    pub mean: MeanFunction,
    pub var: VarianceShape,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    #[serde(default)]
    pub estimator: EstimatorConfig,
    /// Runs the kernel estimator on the same replications when present.
    #[serde(default)]
    pub baseline: Option<KernelConfig>,
    #[serde(default)]
    pub noise: NoiseModel,
}

impl SimulationSpec {
    pub fn new(mean: MeanFunction, var: VarianceShape, n: usize, reps: usize, seed: u64) -> Self {
        Self {
            mean,
            var,
            n,
            reps,
            seed,
            estimator: EstimatorConfig::default(),
            baseline: None,
            noise: NoiseModel::Gaussian,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidParameter("reps must be at least 1".into()));
        }
        if !self.n.is_power_of_two() || self.n < 64 {
            return Err(Error::InvalidParameter(format!(
                "n = {} must be a power of two and at least 64",
                self.n
            )));
        }
        self.estimator.validate()?;
        if let Some(k) = &self.baseline {
            k.bandwidth_grid(self.n)?;
        }
        Ok(())
    }

    /// Label that keys the random substreams. It names the data-generating
    /// design only, so cells differing just in estimator settings share data.
    pub fn cell_label(&self) -> String {
        format!(
            "{}/{}/n{}/{}",
            self.mean,
            self.var,
            self.n,
            self.noise.name()
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }
}

/// Replication-level risk summary for one estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiskSummary {
    pub mise_mean: f64,
    pub mise_se: f64,
    pub per_rep: Vec<f64>,
}

impl RiskSummary {
    fn from_per_rep(per_rep: Vec<f64>) -> Self {
        let (mise_mean, mise_se) = mean_and_se(&per_rep);
        Self {
            mise_mean,
            mise_se,
            per_rep,
        }
    }
}

/// Monte Carlo risk of the wavelet estimator (and optionally the kernel
/// baseline) for one cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiskReport {
    pub spec: SimulationSpec,
    pub wavelet: RiskSummary,
    pub kernel: Option<RiskSummary>,
    pub wallclock_secs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

fn replicate(
    spec: &SimulationSpec,
    label: &str,
    truth: &[f64],
    rep: usize,
) -> Result<(f64, Option<f64>)> {
    let variance = normalize_variance(spec.var);
    let mut rng = substream(spec.seed, label, rep as u64);
    let sample = synthesize_with(spec.mean, variance, spec.n, spec.noise, &mut rng)?;
    let wavelet = mise(&estimate(&sample.y, &spec.estimator)?, truth)?;
    let kernel = match &spec.baseline {
        Some(cfg) => Some(mise(&kernel_estimate(&sample.y, cfg)?, truth)?),
        None => None,
    };
    Ok((wavelet, kernel))
}

/// Runs a cell with parallel replications.
pub fn run_cell(spec: &SimulationSpec) -> Result<RiskReport> {
    run_cell_with(spec, Execution::Parallel)
}

/// Runs a cell. Replication `r` always draws from substream `(seed, label, r)`
/// and results are gathered in replication order, so serial and parallel
/// execution agree exactly.
pub fn run_cell_with(spec: &SimulationSpec, execution: Execution) -> Result<RiskReport> {
    spec.validate()?;
    let start = Instant::now();
    let label = spec.cell_label();
    let variance = normalize_variance(spec.var);
    let truth: Vec<f64> = (1..=spec.n / 2)
        .map(|i| variance.eval_unchecked(2.0 * i as f64 / spec.n as f64))
        .collect();
    let run = |rep: usize| {
        replicate(spec, &label, &truth, rep).map_err(|e| Error::Replication {
            rep,
            source: Box::new(e),
        })
    };
    let results: Vec<(f64, Option<f64>)> = match execution {
        Execution::Serial => (0..spec.reps).map(run).collect::<Result<_>>()?,
        Execution::Parallel => (0..spec.reps)
            .into_par_iter()
            .map(run)
            .collect::<Result<_>>()?,
    };
    let wavelet = RiskSummary::from_per_rep(results.iter().map(|r| r.0).collect());
    let kernel = spec
        .baseline
        .as_ref()
        .map(|_| RiskSummary::from_per_rep(results.iter().filter_map(|r| r.1).collect()));
    Ok(RiskReport {
        spec: spec.clone(),
        wavelet,
        kernel,
        wallclock_secs: start.elapsed().as_secs_f64(),
    })
}
