use super::{log2_exact, WaveletFilter};
use crate::error::{Error, Result};

/// Multi-level coefficient layout: `2^j0` coarse scaling coefficients followed
/// by detail levels `j0..=jmax`, level `j` holding `2^j` coefficients.
///
/// In the flattened order the detail coefficient `(j, k)` sits at position
/// `2^j + k` (zero-based `k`), and the scaling coefficient `k` at position `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientPyramid {
    j0: u32,
    scaling: Vec<f64>,
    details: Vec<Vec<f64>>,
}

impl CoefficientPyramid {
    /// Builds a pyramid from its parts, checking the level sizes.
    pub fn from_parts(j0: u32, scaling: Vec<f64>, details: Vec<Vec<f64>>) -> Result<Self> {
        if j0 >= usize::BITS - 1 || scaling.len() != 1usize << j0 {
            return Err(Error::ShapeMismatch(format!(
                "expected {} scaling coefficients at j0 = {j0}, found {}",
                1u64.checked_shl(j0).unwrap_or(0),
                scaling.len()
            )));
        }
        if details.is_empty() {
            return Err(Error::ShapeMismatch("pyramid has no detail levels".into()));
        }
        for (offset, level) in details.iter().enumerate() {
            let j = j0 as usize + offset;
            if j >= usize::BITS as usize - 1 || level.len() != 1usize << j {
                return Err(Error::ShapeMismatch(format!(
                    "detail level {j} has {} coefficients",
                    level.len()
                )));
            }
        }
        Ok(Self {
            j0,
            scaling,
            details,
        })
    }

    /// All-zero pyramid for a signal of length `n_signal`.
    pub fn zeros(n_signal: usize, j0: u32) -> Result<Self> {
        let levels = check_shape(n_signal, j0)?;
        let details = (j0..j0 + levels).map(|j| vec![0.0; 1 << j]).collect();
        Ok(Self {
            j0,
            scaling: vec![0.0; 1 << j0],
            details,
        })
    }

    /// Rebuilds a pyramid from the flattened coefficient vector.
    pub fn from_flat(flat: &[f64], j0: u32) -> Result<Self> {
        let levels = check_shape(flat.len(), j0)?;
        let scaling = flat[..1 << j0].to_vec();
        let details = (j0..j0 + levels)
            .map(|j| flat[1 << j..2 << j].to_vec())
            .collect();
        Ok(Self {
            j0,
            scaling,
            details,
        })
    }

    pub fn j0(&self) -> u32 {
        self.j0
    }

    /// Finest detail level, `log2(n_signal) - 1`.
    pub fn jmax(&self) -> u32 {
        self.j0 + self.details.len() as u32 - 1
    }

    pub fn n_signal(&self) -> usize {
        2 << self.jmax()
    }

    pub fn scaling(&self) -> &[f64] {
        &self.scaling
    }

    pub fn scaling_mut(&mut self) -> &mut [f64] {
        &mut self.scaling
    }

    /// Detail coefficients of level `j`.
    ///
    /// # Panics
    /// If `j` is outside `j0..=jmax`.
    pub fn detail(&self, j: u32) -> &[f64] {
        &self.details[(j - self.j0) as usize]
    }

    pub fn detail_mut(&mut self, j: u32) -> &mut [f64] {
        &mut self.details[(j - self.j0) as usize]
    }

    /// Iterates over `(j, coefficients)` from the coarsest detail level up.
    pub fn levels(&self) -> impl Iterator<Item = (u32, &[f64])> {
        self.details
            .iter()
            .enumerate()
            .map(move |(i, d)| (self.j0 + i as u32, d.as_slice()))
    }

    /// Coefficients in flattened order.
    pub fn to_flat(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n_signal());
        out.extend_from_slice(&self.scaling);
        for d in &self.details {
            out.extend_from_slice(d);
        }
        out
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.j0 == other.j0 && self.details.len() == other.details.len()
    }

    /// Elementwise map over every coefficient.
    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> Self {
        Self {
            j0: self.j0,
            scaling: self.scaling.iter().map(|&v| f(v)).collect(),
            details: self
                .details
                .iter()
                .map(|d| d.iter().map(|&v| f(v)).collect())
                .collect(),
        }
    }
}

/// Number of detail levels for a signal of length `n` with coarsest level `j0`.
fn check_shape(n: usize, j0: u32) -> Result<u32> {
    let big_j = log2_exact(n).ok_or(Error::NotPowerOfTwo(n))?;
    if big_j <= j0 {
        return Err(Error::LevelTooLarge { j0, len: n });
    }
    Ok(big_j - j0)
}

/// One analysis step on a periodic signal of even length.
fn analyze(input: &[f64], h: &[f64], g: &[f64], approx: &mut Vec<f64>, detail: &mut Vec<f64>) {
    let n = input.len();
    let half = n / 2;
    approx.clear();
    detail.clear();
    for k in 0..half {
        let (mut a, mut d) = (0.0, 0.0);
        let start = 2 * k;
        if start + h.len() <= n {
            for (m, (&hm, &gm)) in h.iter().zip(g).enumerate() {
                let x = input[start + m];
                a += hm * x;
                d += gm * x;
            }
        } else {
            for (m, (&hm, &gm)) in h.iter().zip(g).enumerate() {
                let x = input[(start + m) % n];
                a += hm * x;
                d += gm * x;
            }
        }
        approx.push(a);
        detail.push(d);
    }
}

/// One synthesis step; `out` receives a signal of length `2 * approx.len()`.
fn synthesize(approx: &[f64], detail: &[f64], h: &[f64], g: &[f64], out: &mut Vec<f64>) {
    let n = 2 * approx.len();
    out.clear();
    out.resize(n, 0.0);
    for (k, (&a, &d)) in approx.iter().zip(detail).enumerate() {
        let start = 2 * k;
        for (m, (&hm, &gm)) in h.iter().zip(g).enumerate() {
            out[(start + m) % n] += hm * a + gm * d;
        }
    }
}

/// Orthonormal periodic pyramid decomposition down to level `j0`.
pub fn forward_dwt(signal: &[f64], filter: &WaveletFilter, j0: u32) -> Result<CoefficientPyramid> {
    let levels = check_shape(signal.len(), j0)?;
    let h = filter.lowpass();
    let g = filter.highpass();
    let mut details = vec![Vec::new(); levels as usize];
    let mut current = signal.to_vec();
    let mut approx = Vec::with_capacity(signal.len() / 2);
    for slot in details.iter_mut().rev() {
        let mut d = Vec::with_capacity(current.len() / 2);
        analyze(&current, h, &g, &mut approx, &mut d);
        *slot = d;
        std::mem::swap(&mut current, &mut approx);
    }
    Ok(CoefficientPyramid {
        j0,
        scaling: current,
        details,
    })
}

/// Inverse of [`forward_dwt`].
pub fn inverse_dwt(pyramid: &CoefficientPyramid, filter: &WaveletFilter) -> Vec<f64> {
    let h = filter.lowpass();
    let g = filter.highpass();
    let mut current = pyramid.scaling.clone();
    let mut next = Vec::with_capacity(pyramid.n_signal());
    for d in &pyramid.details {
        synthesize(&current, d, h, &g, &mut next);
        std::mem::swap(&mut current, &mut next);
    }
    current
}
