use crate::error::{Error, Result};

/// Blockwise estimate of `Var(D_i²)` on the `n/2` difference indices.
#[derive(Debug, Clone, PartialEq)]
pub struct VarD2Table {
    values: Vec<f64>,
    block_length: usize,
    blocks: usize,
}

impl VarD2Table {
    /// Per-index estimates, constant within each block.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Nominal block length `floor((n/2)^r)`; the last block may be longer.
    pub fn block_length(&self) -> usize {
        self.block_length
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    /// Estimate for block `k` (zero-based).
    pub fn block_value(&self, k: usize) -> f64 {
        self.values[k * self.block_length]
    }

    /// Wraps externally supplied per-index variances (used by tests and oracles).
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::InvalidParameter(
                "variance table entries must be nonnegative".into(),
            ));
        }
        let len = values.len();
        Ok(Self {
            values,
            block_length: 1,
            blocks: len,
        })
    }
}

/// Nominal block length `floor(m^r)`, guarded against `powf` round-off at
/// exact integer powers.
pub(crate) fn nominal_block_length(m: usize, r: f64) -> usize {
    let raw = (m as f64).powf(r);
    (raw + 1e-9 * raw.max(1.0)).floor() as usize
}

/// Positively biased block estimator of `Var(D_i²)`.
///
/// With `Δ_t = D²_{2t-1} - D²_{2t}`, block `B_k` gets
/// `Σ_{2t∈B_k} Δ_t² / (c_k (2 - 1/ln n))` where `c_k` counts the `Δ_t`
/// terms in the block. For a block of even length `(n/2)^r` this is
/// `2/((n/2)^r (2 - 1/ln n)) Σ Δ_t²`. The remainder after the last full block
/// is merged into it.
pub fn block_var_d2(dsq: &[f64], r: f64, n: usize) -> Result<VarD2Table> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "block exponent r = {r} must lie in (0, 1)"
        )));
    }
    let m = dsq.len();
    if n < 4 {
        return Err(Error::BadSampleSize(n));
    }
    let b = nominal_block_length(m, r);
    if b < 2 {
        return Err(Error::InvalidParameter(format!(
            "block length {b} = floor({m}^{r}) is below 2"
        )));
    }
    if m < 2 * b {
        return Err(Error::InvalidParameter(format!(
            "{m} differences cannot hold two blocks of length {b}"
        )));
    }
    let blocks = m / b;
    let inflation = 2.0 - 1.0 / (n as f64).ln();
    let block_of = |i: usize| (i / b).min(blocks - 1);

    let mut sums = vec![0.0; blocks];
    let mut counts = vec![0usize; blocks];
    for (t, pair) in dsq.chunks_exact(2).enumerate() {
        let delta = pair[0] - pair[1];
        // zero-based position of D²_{2t} is 2t + 1
        let k = block_of(2 * t + 1);
        sums[k] += delta * delta;
        counts[k] += 1;
    }
    let per_block: Vec<f64> = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &c)| {
            if c == 0 {
                0.0
            } else {
                s / (c as f64 * inflation)
            }
        })
        .collect();
    let values = (0..m).map(|i| per_block[block_of(i)]).collect();
    Ok(VarD2Table {
        values,
        block_length: b,
        blocks,
    })
}
