//! Test functions, data synthesis, and closed-form/Monte Carlo oracles for
//! the variance of squared differences.

mod functions;
mod knots;
mod noise;
mod oracle;
mod rng;
mod synth;

pub use functions::{
    discrete_l2_norm, eval_mean, eval_variance, normalize_variance, MeanFunction, Normalization,
    VarianceFunction, VarianceShape, NORMALIZATION_GRID,
};
pub use knots::{parse_knot_table, Knot};
pub use noise::NoiseModel;
pub use oracle::{oracle_var_d2, oracle_var_d2_mc, var_d2_from_moments, McVariance};
pub use rng::substream;
pub use synth::{
    observations, synthesize, synthesize_from_noise, synthesize_with, RegressionSample,
};
