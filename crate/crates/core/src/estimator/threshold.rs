use super::{EstimatorConfig, Truncation, VarD2Table};
use crate::error::{Error, Result};
use crate::wavelet::{CoefficientPyramid, RowEnergyTable};

/// `sgn(y) (|y| - t)_+`.
pub fn soft_threshold(y: f64, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "threshold {t} must be nonnegative"
        )));
    }
    Ok(soft(y, t))
}

#[inline]
pub(crate) fn soft(y: f64, t: f64) -> f64 {
    let m = y.abs() - t;
    if m > 0.0 {
        m.copysign(y)
    } else {
        0.0
    }
}

/// `scale · sqrt(2 ln(n/2))`.
pub fn universal_factor(n: usize, scale: f64) -> f64 {
    scale * (2.0 * (n as f64 / 2.0).ln()).sqrt()
}

/// Finest detail level that is thresholded rather than zeroed, or `None` when
/// every detail level is zeroed.
pub fn truncation_level(n: usize, truncation: Truncation, jmax: u32) -> Option<u32> {
    match truncation {
        Truncation::AllLevels => Some(jmax),
        Truncation::Theoretical => {
            let big_j = (n as f64).log2();
            let bound = (n as f64) / big_j.powi(3);
            let mut cut = None;
            for j in 0..=jmax {
                if 2f64.powi(j as i32) <= bound {
                    cut = Some(j);
                }
            }
            cut
        }
    }
}

/// Standard deviations `σ̂_{j,k} = sqrt((2/n) Σ_i W²_{(j,k),i} Var̂(D_i²))`,
/// laid out as a pyramid (scaling slots hold the coarse-coefficient sds).
pub fn coefficient_sds(
    table: &VarD2Table,
    rows: &RowEnergyTable,
    n: usize,
) -> Result<CoefficientPyramid> {
    if rows.n_signal() != table.values().len() {
        return Err(Error::ShapeMismatch(format!(
            "row table built for length {}, variance table has {} entries",
            rows.n_signal(),
            table.values().len()
        )));
    }
    let factor = 2.0 / n as f64;
    let flat: Vec<f64> = rows
        .weighted_energy(table.values())
        .into_iter()
        .map(|s| (factor * s).max(0.0).sqrt())
        .collect();
    CoefficientPyramid::from_flat(&flat, rows.j0())
}

/// Soft-thresholds detail coefficients at `λ_{j,k} = σ̂_{j,k} · scale · sqrt(2 ln(n/2))`
/// up to the truncation cut and zeroes the levels above it. Coarse scaling
/// coefficients are passed through unchanged.
pub fn threshold_pyramid(
    pyramid: &CoefficientPyramid,
    sds: &CoefficientPyramid,
    n: usize,
    config: &EstimatorConfig,
) -> Result<CoefficientPyramid> {
    if !pyramid.same_shape(sds) {
        return Err(Error::ShapeMismatch(
            "coefficient and standard-deviation pyramids differ in shape".into(),
        ));
    }
    let factor = universal_factor(n, config.threshold_scale);
    let cut = truncation_level(n, config.truncation, pyramid.jmax());
    let mut out = pyramid.clone();
    for j in pyramid.j0()..=pyramid.jmax() {
        let keep = cut.is_some_and(|c| j <= c);
        let sd = sds.detail(j);
        for (k, d) in out.detail_mut(j).iter_mut().enumerate() {
            *d = if keep { soft(*d, sd[k] * factor) } else { 0.0 };
        }
    }
    Ok(out)
}
