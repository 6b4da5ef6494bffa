use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{forward_dwt, WaveletFilter};
use crate::error::Result;

/// Rows of the periodized transform matrix `W`, stored sparsely.
///
/// Row indices follow the flattened pyramid order (see
/// [`CoefficientPyramid`](super::CoefficientPyramid)). Only entries that are
/// structurally nonzero are kept; rows at fine levels are short.
#[derive(Debug, Clone)]
pub struct RowEnergyTable {
    n_signal: usize,
    j0: u32,
    rows: Vec<Vec<(u32, f64)>>,
}

impl RowEnergyTable {
    /// Builds the table by transforming each canonical basis vector.
    pub fn build(filter: &WaveletFilter, n_signal: usize, j0: u32) -> Result<Self> {
        // Validate the shape once before the column sweep.
        forward_dwt(&vec![0.0; n_signal], filter, j0)?;
        let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n_signal];
        let mut basis = vec![0.0; n_signal];
        for col in 0..n_signal {
            basis[col] = 1.0;
            let coeffs = forward_dwt(&basis, filter, j0)?.to_flat();
            basis[col] = 0.0;
            for (row, &w) in coeffs.iter().enumerate() {
                if w != 0.0 {
                    rows[row].push((col as u32, w));
                }
            }
        }
        Ok(Self { n_signal, j0, rows })
    }

    pub fn n_signal(&self) -> usize {
        self.n_signal
    }

    pub fn j0(&self) -> u32 {
        self.j0
    }

    /// Number of coarse scaling rows, `2^j0`.
    pub fn n_coarse(&self) -> usize {
        1 << self.j0
    }

    /// Signed nonzero entries `(column, W[row, column])` of one row.
    pub fn row(&self, index: usize) -> &[(u32, f64)] {
        &self.rows[index]
    }

    /// Squared entries `W²[row, i]` of one row as a dense vector.
    pub fn energy_row(&self, index: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.n_signal];
        for &(col, w) in &self.rows[index] {
            out[col as usize] = w * w;
        }
        out
    }

    /// `Σ_i W²[row, i] · weights[i]` for every row, in flattened order.
    pub fn weighted_energy(&self, weights: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(col, w)| w * w * weights[col as usize])
                    .sum()
            })
            .collect()
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

type CacheKey = (&'static str, usize, u32);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<RowEnergyTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<RowEnergyTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached transform-row table for `(filter, n_signal, j0)`.
pub fn row_energy_table(
    filter: &WaveletFilter,
    n_signal: usize,
    j0: u32,
) -> Result<Arc<RowEnergyTable>> {
    let key = (filter.name(), n_signal, j0);
    if let Some(table) = cache().read().expect("row cache poisoned").get(&key) {
        return Ok(Arc::clone(table));
    }
    let table = Arc::new(RowEnergyTable::build(filter, n_signal, j0)?);
    let mut guard = cache().write().expect("row cache poisoned");
    Ok(Arc::clone(guard.entry(key).or_insert(table)))
}
