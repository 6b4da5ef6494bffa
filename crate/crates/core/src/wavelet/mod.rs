//! Orthonormal periodized discrete wavelet transform.
//!
//! Boundary handling is circular at every level. Coefficients are aligned so
//! that the Haar detail at `(j, k)` depends only on the samples of the `k`-th
//! dyadic block of length `n / 2^j`.

mod dwt;
mod filter;
mod rows;

pub use dwt::{forward_dwt, inverse_dwt, CoefficientPyramid};
pub use filter::{build_filter, WaveletFilter, SUPPORTED_FILTERS};
pub use rows::{row_energy_table, RowEnergyTable};

pub(crate) fn log2_exact(n: usize) -> Option<u32> {
    if n.is_power_of_two() {
        Some(n.trailing_zeros())
    } else {
        None
    }
}
