use rand::Rng;

use super::NoiseModel;
use crate::error::{Error, Result};

/// Mean of the pair `(V(x_{2i-1}) + V(x_{2i}))/2` and the mean difference
/// `δ_i = f(x_{2i-1}) - f(x_{2i})` for the 1-based pair index `i`.
fn pair_terms(
    f: &impl Fn(f64) -> f64,
    v: &impl Fn(f64) -> f64,
    n: usize,
    i: usize,
) -> Result<(f64, f64, f64, f64)> {
    if i == 0 || 2 * i > n {
        return Err(Error::InvalidParameter(format!(
            "pair index {i} outside 1..={}",
            n / 2
        )));
    }
    let x1 = (2 * i - 1) as f64 / n as f64;
    let x2 = (2 * i) as f64 / n as f64;
    let (v1, v2) = (v(x1), v(x2));
    let delta = f(x1) - f(x2);
    Ok((v1, v2, 0.5 * (v1 + v2), delta))
}

/// `Var(D_i²) = V_i²(u₄ - 1) + 2δ_i²V_i + 2√2 V_i^{3/2} δ_i u₃`, with `u₃, u₄`
/// the moments of the standardized pair noise `ε_i`.
pub fn var_d2_from_moments(delta: f64, v_bar: f64, u3: f64, u4: f64) -> f64 {
    v_bar * v_bar * (u4 - 1.0)
        + 2.0 * delta * delta * v_bar
        + 2.0 * 2f64.sqrt() * v_bar.powf(1.5) * delta * u3
}

/// Exact `Var(D_i²)` under Gaussian noise, where `ε_i` is exactly standard
/// normal: `2V_i² + 2δ_i²V_i`.
pub fn oracle_var_d2(
    f: impl Fn(f64) -> f64,
    v: impl Fn(f64) -> f64,
    n: usize,
    noise: NoiseModel,
    i: usize,
) -> Result<f64> {
    if noise != NoiseModel::Gaussian {
        return Err(Error::InvalidParameter(format!(
            "closed-form Var(D_i²) needs gaussian noise, got {}; use the Monte Carlo oracle",
            noise.name()
        )));
    }
    let (_, _, v_bar, delta) = pair_terms(&f, &v, n, i)?;
    Ok(var_d2_from_moments(delta, v_bar, 0.0, 3.0))
}

/// Monte Carlo estimate of `Var(D_i²)` with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McVariance {
    pub variance: f64,
    pub std_error: f64,
    pub reps: usize,
}

/// Empirical variance of `D_i²` over `reps` independent draws of the pair.
pub fn oracle_var_d2_mc<R: Rng + ?Sized>(
    f: impl Fn(f64) -> f64,
    v: impl Fn(f64) -> f64,
    n: usize,
    noise: NoiseModel,
    i: usize,
    reps: usize,
    rng: &mut R,
) -> Result<McVariance> {
    if reps < 10_000 {
        return Err(Error::InvalidParameter(format!(
            "{reps} draws is below the 10^4 minimum"
        )));
    }
    let (v1, v2, _, delta) = pair_terms(&f, &v, n, i)?;
    let (s1, s2) = (v1.sqrt(), v2.sqrt());
    let draws: Vec<f64> = (0..reps)
        .map(|_| {
            let d = (delta + s1 * noise.sample(rng) - s2 * noise.sample(rng))
                * std::f64::consts::FRAC_1_SQRT_2;
            d * d
        })
        .collect();
    let r = reps as f64;
    let mean = draws.iter().sum::<f64>() / r;
    let (mut m2, mut m4) = (0.0, 0.0);
    for &q in &draws {
        let c = (q - mean) * (q - mean);
        m2 += c;
        m4 += c * c;
    }
    let variance = m2 / (r - 1.0);
    let m4 = m4 / r;
    let var_of_var = ((m4 - (m2 / r).powi(2)) / r).max(0.0);
    Ok(McVariance {
        variance,
        std_error: var_of_var.sqrt(),
        reps,
    })
}
