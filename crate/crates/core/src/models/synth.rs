use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MeanFunction, NoiseModel, VarianceFunction};
use crate::error::{Error, Result};

/// One simulated data set `y_i = f(i/n) + V(i/n)^{1/2} z_i`, `i = 1..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionSample {
    pub n: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub mean: MeanFunction,
    pub variance: VarianceFunction,
    pub noise: NoiseModel,
    pub seed: Option<u64>,
}

impl RegressionSample {
    /// True variance on the estimation grid `2i/n`, `i = 1..n/2`.
    pub fn variance_on_estimation_grid(&self) -> Vec<f64> {
        (1..=self.n / 2)
            .map(|i| self.variance.eval_unchecked(2.0 * i as f64 / self.n as f64))
            .collect()
    }
}

fn design(n: usize) -> Result<Vec<f64>> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok((1..=n).map(|i| i as f64 / n as f64).collect())
}

/// Observations `f(i/n) + v(i/n)^{1/2} z_i` for arbitrary mean and variance
/// callables.
pub fn observations(f: impl Fn(f64) -> f64, v: impl Fn(f64) -> f64, z: &[f64]) -> Result<Vec<f64>> {
    let n = z.len();
    design(n)?
        .iter()
        .zip(z)
        .map(|(&xi, &zi)| {
            let var = v(xi);
            if !(var >= 0.0) {
                return Err(Error::Internal(format!(
                    "variance {var} at {xi} is not positive"
                )));
            }
            Ok(f(xi) + var.sqrt() * zi)
        })
        .collect()
}

/// Builds a sample from explicit noise draws `z`.
pub fn synthesize_from_noise(
    mean: MeanFunction,
    variance: VarianceFunction,
    z: &[f64],
) -> Result<RegressionSample> {
    let y = observations(
        |x| mean.eval_unchecked(x),
        |x| variance.eval_unchecked(x),
        z,
    )?;
    let n = z.len();
    Ok(RegressionSample {
        n,
        x: design(n)?,
        y,
        mean,
        variance,
        noise: NoiseModel::Gaussian,
        seed: None,
    })
}

/// Draws a sample using the supplied generator.
pub fn synthesize_with<R: Rng + ?Sized>(
    mean: MeanFunction,
    variance: VarianceFunction,
    n: usize,
    noise: NoiseModel,
    rng: &mut R,
) -> Result<RegressionSample> {
    design(n)?;
    let z: Vec<f64> = (0..n).map(|_| noise.sample(rng)).collect();
    let mut sample = synthesize_from_noise(mean, variance, &z)?;
    sample.noise = noise;
    Ok(sample)
}

/// Draws a sample from a generator seeded with `seed`.
pub fn synthesize(
    mean: MeanFunction,
    variance: VarianceFunction,
    n: usize,
    noise: NoiseModel,
    seed: u64,
) -> Result<RegressionSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = synthesize_with(mean, variance, n, noise, &mut rng)?;
    sample.seed = Some(seed);
    Ok(sample)
}
