use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Standardized noise distribution for `z_i` (mean 0, variance 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseModel {
    #[default]
    Gaussian,
    /// `±1` with probability 1/2 each.
    Rademacher,
    /// Uniform on `[-√3, √3]`.
    Uniform,
}

impl NoiseModel {
    /// Third moment `E z³`.
    pub fn u3(self) -> f64 {
        0.0
    }

    /// Fourth moment `E z⁴`.
    pub fn u4(self) -> f64 {
        match self {
            NoiseModel::Gaussian => 3.0,
            NoiseModel::Rademacher => 1.0,
            NoiseModel::Uniform => 1.8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NoiseModel::Gaussian => "gaussian",
            NoiseModel::Rademacher => "rademacher",
            NoiseModel::Uniform => "uniform",
        }
    }

    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            NoiseModel::Gaussian => rng.sample(StandardNormal),
            NoiseModel::Rademacher => {
                if rng.gen::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            NoiseModel::Uniform => 3f64.sqrt() * (2.0 * rng.gen::<f64>() - 1.0),
        }
    }
}
