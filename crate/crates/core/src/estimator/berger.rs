use nalgebra::{DMatrix, DVector};

use super::VarD2Table;
use crate::error::{Error, Result};
use crate::wavelet::RowEnergyTable;

const MAX_CONDITION: f64 = 1e12;
const RIDGE: f64 = 1e-10;

/// Estimated covariance of the coarse scaling coefficients,
/// `Σ̂ = (2/n) W_{j0} diag(Var̂(D_i²)) W_{j0}'`.
pub fn coarse_covariance(
    rows: &RowEnergyTable,
    table: &VarD2Table,
    n: usize,
) -> Result<DMatrix<f64>> {
    let v = table.values();
    if rows.n_signal() != v.len() {
        return Err(Error::ShapeMismatch(format!(
            "row table built for length {}, variance table has {} entries",
            rows.n_signal(),
            v.len()
        )));
    }
    let m = rows.n_coarse();
    let factor = 2.0 / n as f64;
    // Coarse rows are dense over the signal; expand them once.
    let dense: Vec<Vec<f64>> = (0..m)
        .map(|a| {
            let mut row = vec![0.0; v.len()];
            for &(col, w) in rows.row(a) {
                row[col as usize] = w;
            }
            row
        })
        .collect();
    let mut cov = DMatrix::zeros(m, m);
    for a in 0..m {
        for b in a..m {
            let s: f64 = dense[a]
                .iter()
                .zip(&dense[b])
                .zip(v)
                .map(|((wa, wb), vi)| wa * wb * vi)
                .sum();
            cov[(a, b)] = factor * s;
            cov[(b, a)] = factor * s;
        }
    }
    Ok(cov)
}

/// Covariance-weighted James–Stein shrinkage of the coarse coefficients:
///
/// `ξ̂ = (I - min{d'Σ⁻¹d, m-2} Σ⁻¹ / (d'Σ⁻²d)) d`
///
/// evaluated through a single linear solve `a = Σ⁻¹ d`, so that
/// `ξ̂ = d - min{d·a, m-2} / (a·a) · a`.
pub fn berger_shrink(coarse: &[f64], cov: &DMatrix<f64>) -> Result<Vec<f64>> {
    let m = coarse.len();
    if m < 3 {
        return Err(Error::InvalidParameter(format!(
            "shrinkage needs at least 3 coarse coefficients, got {m}"
        )));
    }
    if cov.nrows() != m || cov.ncols() != m {
        return Err(Error::ShapeMismatch(format!(
            "covariance is {}x{}, expected {m}x{m}",
            cov.nrows(),
            cov.ncols()
        )));
    }
    let scale = cov.amax();
    if !scale.is_finite() {
        return Err(Error::InvalidParameter(
            "covariance has non-finite entries".into(),
        ));
    }
    for a in 0..m {
        for b in a + 1..m {
            if (cov[(a, b)] - cov[(b, a)]).abs() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
                return Err(Error::InvalidParameter(
                    "covariance matrix is not symmetric".into(),
                ));
            }
        }
    }
    if coarse.iter().all(|&d| d == 0.0) || scale == 0.0 {
        // No signal to shrink, or no noise to shrink against.
        return Ok(coarse.to_vec());
    }

    let d = DVector::from_column_slice(coarse);
    let sigma = regularize(cov);
    let a = match sigma.clone().cholesky() {
        Some(ch) => ch.solve(&d),
        None => sigma
            .lu()
            .solve(&d)
            .ok_or_else(|| Error::Internal("coarse covariance is singular".into()))?,
    };
    let quad = d.dot(&a);
    let norm2 = a.dot(&a);
    if !(norm2 > 0.0) || !quad.is_finite() {
        return Ok(coarse.to_vec());
    }
    let shrink = quad.min((m - 2) as f64) / norm2;
    Ok((d - a * shrink).iter().copied().collect())
}

/// Adds `ε·trace/m` to the diagonal when `cov` is singular or worse
/// conditioned than `1e12`.
fn regularize(cov: &DMatrix<f64>) -> DMatrix<f64> {
    let m = cov.nrows();
    let eig = cov.clone().symmetric_eigenvalues();
    let (lo, hi) = eig.iter().fold((f64::INFINITY, 0f64), |(lo, hi), &e| {
        (lo.min(e), hi.max(e.abs()))
    });
    if lo > 0.0 && hi / lo <= MAX_CONDITION {
        return cov.clone();
    }
    let ridge = RIDGE * cov.trace().abs() / m as f64;
    let mut out = cov.clone();
    for i in 0..m {
        out[(i, i)] += ridge;
    }
    out
}
