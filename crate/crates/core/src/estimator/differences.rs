use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use super::OddBoundary;
use crate::error::{Error, Result};

/// Which interleaved difference sequence to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    /// `D_i = (y_{2i-1} - y_{2i}) / sqrt(2)`
    Even,
    /// `D'_i = (y_{2i} - y_{2i+1}) / sqrt(2)`
    Odd,
}

/// First-order pairwise differences of the observations.
///
/// The odd sequence is one short of `n/2`; under [`OddBoundary::Wrap`] the
/// last entry is `(y_n - y_1)/sqrt(2)`, under [`OddBoundary::Drop`] the
/// sequence is cut to the largest power of two below `n/2`.
pub fn pair_differences(y: &[f64], parity: Parity, boundary: OddBoundary) -> Result<Vec<f64>> {
    let n = y.len();
    if n < 8 || n % 2 != 0 {
        return Err(Error::BadSampleSize(n));
    }
    let half = n / 2;
    let d = match parity {
        Parity::Even => y
            .chunks_exact(2)
            .map(|p| (p[0] - p[1]) * FRAC_1_SQRT_2)
            .collect(),
        Parity::Odd => {
            let mut d: Vec<f64> = y[1..]
                .windows(2)
                .step_by(2)
                .map(|p| (p[0] - p[1]) * FRAC_1_SQRT_2)
                .collect();
            debug_assert_eq!(d.len(), half - 1);
            match boundary {
                OddBoundary::Wrap => d.push((y[n - 1] - y[0]) * FRAC_1_SQRT_2),
                OddBoundary::Drop => {
                    let keep = 1usize << (usize::BITS - 1 - (half - 1).leading_zeros());
                    d.truncate(keep);
                }
            }
            d
        }
    };
    Ok(d)
}
