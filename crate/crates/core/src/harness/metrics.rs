use crate::error::{Error, Result};
use crate::estimator::{point_estimate, VarianceEstimate};

/// Grid average of squared errors, the discretized integrated squared error.
pub fn mise(est: &VarianceEstimate, truth: &[f64]) -> Result<f64> {
    squared_error(&est.values, truth)
}

pub(crate) fn squared_error(values: &[f64], truth: &[f64]) -> Result<f64> {
    if values.len() != truth.len() || values.is_empty() {
        return Err(Error::ShapeMismatch(format!(
            "estimate has {} grid values, truth has {}",
            values.len(),
            truth.len()
        )));
    }
    let ss: f64 = values
        .iter()
        .zip(truth)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(ss / values.len() as f64)
}

/// Squared error at the grid point nearest to `x_star`.
pub fn mse_at_point(est: &VarianceEstimate, truth_value: f64, x_star: f64) -> Result<f64> {
    let v = point_estimate(est, x_star)?;
    Ok((v - truth_value) * (v - truth_value))
}

/// Mean and Monte Carlo standard error `sd / sqrt(reps)`.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let r = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / r;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (r - 1.0);
    (mean, (var / r).sqrt())
}
