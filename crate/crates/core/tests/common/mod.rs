//! Brute-force helpers shared by the integration tests. Nothing here calls
//! into the library's transform or estimator code.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..hi)).collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!(
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-12),
        "{what}: {a} vs {b}"
    );
}

/// Dense `n x n` periodic wavelet transform matrix in flat pyramid order
/// (scaling rows first, then detail levels coarse to fine), built from
/// explicit one-level filter matrices.
pub fn dense_w(h: &[f64], n: usize, j0: u32) -> Vec<Vec<f64>> {
    let l = h.len();
    let g: Vec<f64> = (0..l)
        .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } * h[l - 1 - k])
        .collect();
    // current approximation operator: rows map the signal to approximation coefficients
    let mut approx: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut detail_blocks: Vec<Vec<Vec<f64>>> = Vec::new();
    while approx.len() > 1 << j0 {
        let len = approx.len();
        let mut lo = vec![vec![0.0; n]; len / 2];
        let mut hi = vec![vec![0.0; n]; len / 2];
        for k in 0..len / 2 {
            for m in 0..l {
                let src = &approx[(2 * k + m) % len];
                for c in 0..n {
                    lo[k][c] += h[m] * src[c];
                    hi[k][c] += g[m] * src[c];
                }
            }
        }
        detail_blocks.push(hi);
        approx = lo;
    }
    detail_blocks.reverse();
    approx
        .into_iter()
        .chain(detail_blocks.into_iter().flatten())
        .collect()
}

/// Solves `a x = b` by Gauss-Jordan elimination with partial pivoting.
pub fn gauss_solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let m = b.len();
    let mut aug: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| row.iter().copied().chain(std::iter::once(bi)).collect())
        .collect();
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&x, &y| aug[x][col].abs().partial_cmp(&aug[y][col].abs()).unwrap())
            .unwrap();
        aug.swap(col, piv);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..m {
            if r != col {
                let f = aug[r][col];
                if f != 0.0 {
                    for c in 0..=m {
                        aug[r][c] -= f * aug[col][c];
                    }
                }
            }
        }
    }
    aug.iter().map(|row| row[m]).collect()
}

/// Random symmetric positive definite matrix `A Aᵀ + εI`.
pub fn random_spd(rng: &mut ChaCha8Rng, m: usize, eps: f64) -> Vec<Vec<f64>> {
    let a: Vec<Vec<f64>> = (0..m).map(|_| uniform_vec(rng, m, -1.0, 1.0)).collect();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let s: f64 = (0..m).map(|k| a[i][k] * a[j][k]).sum();
                    s + if i == j { eps } else { 0.0 }
                })
                .collect()
        })
        .collect()
}

pub fn epanechnikov(t: f64) -> f64 {
    if t.abs() < 1.0 {
        0.75 * (1.0 - t * t)
    } else {
        0.0
    }
}

/// Nadaraya-Watson at `x0` over the design `l/m`, skipping index `skip`.
pub fn nw_at(dsq: &[f64], h: f64, x0: f64, skip: Option<usize>) -> Option<f64> {
    let m = dsq.len();
    let (mut num, mut den) = (0.0, 0.0);
    for (l, &d) in dsq.iter().enumerate() {
        if Some(l) == skip {
            continue;
        }
        let w = epanechnikov((x0 - (l + 1) as f64 / m as f64) / h);
        num += w * d;
        den += w;
    }
    (den > 0.0).then(|| num / den)
}
