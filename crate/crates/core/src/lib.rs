//! Adaptive wavelet estimation of the variance function in heteroscedastic
//! nonparametric regression `y_i = f(i/n) + V(i/n)^{1/2} z_i`.
//!
//! The crate is organized bottom-up:
//!
//! * [`wavelet`]: periodized orthonormal DWT and transform-row tables.
//! * [`estimator`]: the squared-difference wavelet thresholding estimator.
//! * [`kernel`]: a cross-validated Nadaraya–Watson comparison estimator.
//! * [`models`]: test functions, data synthesis and `Var(D_i²)` oracles.
//! * [`harness`]: Monte Carlo risk cells and table reproduction.

pub mod error;
pub mod estimator;
pub mod harness;
pub mod kernel;
pub mod models;
pub mod selftest;
pub mod wavelet;

pub use error::{Error, Result};
pub use estimator::{estimate, estimate_half, EstimatorConfig, VarianceEstimate};
pub use kernel::{kernel_estimate, KernelConfig};
