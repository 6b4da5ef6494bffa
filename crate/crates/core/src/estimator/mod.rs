//! Wavelet thresholding estimator of the variance function.
//!
//! The pipeline squares first-order pairwise differences of the observations,
//! transforms them with a periodized DWT, soft-thresholds the detail
//! coefficients with coefficient-specific thresholds built from a blockwise
//! estimate of `Var(D_i²)`, shrinks the coarse coefficients with a
//! covariance-weighted James–Stein rule, and inverts. The even and odd
//! difference sequences are estimated separately and averaged.

mod berger;
mod block;
mod config;
mod differences;
mod pipeline;
mod threshold;

pub use berger::{berger_shrink, coarse_covariance};
pub use block::{block_var_d2, VarD2Table};
pub use config::{EstimatorConfig, OddBoundary, Truncation};
pub use differences::{pair_differences, Parity};
pub(crate) use pipeline::estimation_grid;
pub use pipeline::{
    estimate, estimate_half, point_estimate, EstimateMethod, Half, VarianceEstimate,
};
pub use threshold::{
    coefficient_sds, soft_threshold, threshold_pyramid, truncation_level, universal_factor,
};
