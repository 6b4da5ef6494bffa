use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which detail levels are eligible for thresholding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    /// Threshold every detail level up to the finest.
    #[default]
    AllLevels,
    /// Keep levels `j <= J1` with `2^J1 <= 2^J / J^3`, zero the rest.
    Theoretical,
}

/// How the odd difference sequence handles the missing `y_{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OddBoundary {
    /// Wrap around to `y_1`, consistent with the periodized basis.
    #[default]
    Wrap,
    /// Drop the wrapped difference and truncate to a power-of-two length.
    Drop,
}

/// Tunables of the wavelet variance estimator. Logarithms are natural.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimatorConfig {
    pub filter: String,
    pub j0: u32,
    /// Block exponent: blocks have length `floor((n/2)^r)`.
    pub r: f64,
    pub truncation: Truncation,
    /// Multiplier on `sqrt(2 ln(n/2))`.
    pub threshold_scale: f64,
    pub odd_boundary: OddBoundary,
    /// Clamp negative grid values at zero after inversion.
    pub clamp_negative: bool,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            filter: "symmlet8".to_string(),
            j0: 3,
            r: 0.5,
            truncation: Truncation::AllLevels,
            threshold_scale: 1.0,
            odd_boundary: OddBoundary::Wrap,
            clamp_negative: false,
        }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0 && self.r < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "block exponent r = {} must lie in (0, 1)",
                self.r
            )));
        }
        if self.j0 < 2 {
            return Err(Error::InvalidParameter(format!(
                "j0 = {} leaves fewer than 4 coarse coefficients for shrinkage",
                self.j0
            )));
        }
        if !(self.threshold_scale > 0.0 && self.threshold_scale.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "threshold_scale = {} must be positive",
                self.threshold_scale
            )));
        }
        crate::wavelet::build_filter(&self.filter)?;
        Ok(())
    }
}
