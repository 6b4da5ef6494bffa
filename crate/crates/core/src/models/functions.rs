use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::knots::{parse_knot_table, Knot};
use crate::error::{Error, Result};

const DOPPLER_EPS: f64 = 0.05;
/// Points in the grid used for positivity repair and L2 normalization.
pub const NORMALIZATION_GRID: usize = 10_000;

fn bumps_knots() -> &'static [Knot] {
    static K: OnceLock<Vec<Knot>> = OnceLock::new();
    K.get_or_init(|| {
        parse_knot_table(include_str!("../../data/bumps.txt")).expect("bundled bumps table")
    })
}

fn blocks_knots() -> &'static [Knot] {
    static K: OnceLock<Vec<Knot>> = OnceLock::new();
    K.get_or_init(|| {
        parse_knot_table(include_str!("../../data/blocks.txt")).expect("bundled blocks table")
    })
}

fn bumps(x: f64) -> f64 {
    bumps_knots()
        .iter()
        .map(|k| k.h * (1.0 + ((x - k.t) / k.w).abs()).powi(-4))
        .sum()
}

fn blocks(x: f64) -> f64 {
    blocks_knots()
        .iter()
        .map(|k| k.h * (1.0 + (x - k.t).signum() * f64::from(x != k.t)) / 2.0)
        .sum()
}

fn doppler(x: f64) -> f64 {
    (x * (1.0 - x)).sqrt() * (2.0 * PI * (1.0 + DOPPLER_EPS) / (x + DOPPLER_EPS)).sin()
}

fn v1(x: f64) -> f64 {
    if x <= 0.1 {
        3.0 - 30.0 * x
    } else if x <= 0.25 {
        20.0 * x - 1.0
    } else if x <= 0.725 {
        4.0 + (1.0 - 4.0 * x) * 18.0 / 19.0
    } else if x <= 0.89 {
        2.2 + 10.0 * (x - 0.725)
    } else {
        3.85 - 85.0 * (x - 0.89) / 11.0
    }
}

fn v2(x: f64) -> f64 {
    let bump = |c: f64, a: f64| (-a * (x - c) * (x - c)).exp();
    1.0 + 4.0 * (bump(0.2, 550.0) + bump(0.8, 200.0) + bump(0.8, 950.0))
}

fn check_domain(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfDomain(x))
    }
}

macro_rules! named_enum {
    ($ty:ident { $($variant:ident => $name:literal),+ $(,)? }) => {
        impl $ty {
            pub const ALL: &'static [$ty] = &[$($ty::$variant),+];

            pub fn name(self) -> &'static str {
                match self { $($ty::$variant => $name),+ }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_lowercase().as_str() {
                    $($name => Ok($ty::$variant),)+
                    _ => Err(Error::UnknownFunction(s.to_string())),
                }
            }
        }
    };
}

/// Mean functions of the simulation study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeanFunction {
    Zero,
    Sin20,
    Bumps,
    Blocks,
    Doppler,
}

named_enum!(MeanFunction {
    Zero => "zero",
    Sin20 => "sin20",
    Bumps => "bumps",
    Blocks => "blocks",
    Doppler => "doppler",
});

impl MeanFunction {
    /// Evaluates `f(x)`; the Donoho–Johnstone functions are used unscaled.
    pub fn eval(self, x: f64) -> Result<f64> {
        check_domain(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(self, x: f64) -> f64 {
        match self {
            MeanFunction::Zero => 0.0,
            MeanFunction::Sin20 => (20.0 * x).sin(),
            MeanFunction::Bumps => bumps(x),
            MeanFunction::Blocks => blocks(x),
            MeanFunction::Doppler => doppler(x),
        }
    }
}

/// Shapes used as variance functions, before normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarianceShape {
    V1,
    V2,
    Bumps,
    Doppler,
}

named_enum!(VarianceShape {
    V1 => "v1",
    V2 => "v2",
    Bumps => "bumps",
    Doppler => "doppler",
});

impl VarianceShape {
    /// Raw shape value at `x`, before positivity repair and rescaling.
    pub fn eval_raw(self, x: f64) -> Result<f64> {
        check_domain(x)?;
        Ok(self.raw(x))
    }

    fn raw(self, x: f64) -> f64 {
        match self {
            VarianceShape::V1 => v1(x),
            VarianceShape::V2 => v2(x),
            VarianceShape::Bumps => bumps(x),
            VarianceShape::Doppler => doppler(x),
        }
    }

    /// Whether the raw shape touches or crosses zero and needs an offset.
    fn needs_offset(self) -> bool {
        matches!(self, VarianceShape::Bumps | VarianceShape::Doppler)
    }
}

/// Evaluates a named mean function.
pub fn eval_mean(name: &str, x: f64) -> Result<f64> {
    name.parse::<MeanFunction>()?.eval(x)
}

/// Evaluates a named variance shape before normalization.
pub fn eval_variance(name: &str, x: f64) -> Result<f64> {
    name.parse::<VarianceShape>()?.eval_raw(x)
}

/// The positive-affine rescaling `V(x) = scale · (raw(x) + offset)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalization {
    pub offset: f64,
    pub scale: f64,
    /// Common discrete L2 norm shared by every normalized variance function.
    pub target_norm: f64,
}

/// A normalized variance function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceFunction {
    pub shape: VarianceShape,
    pub normalization: Normalization,
}

impl VarianceFunction {
    pub fn eval(&self, x: f64) -> Result<f64> {
        check_domain(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let Normalization { offset, scale, .. } = self.normalization;
        scale * (self.shape.raw(x) + offset)
    }

    pub fn name(&self) -> &'static str {
        self.shape.name()
    }
}

fn normalization_grid() -> impl Iterator<Item = f64> {
    (0..NORMALIZATION_GRID).map(|k| k as f64 / (NORMALIZATION_GRID - 1) as f64)
}

/// Root mean square over the normalization grid.
pub fn discrete_l2_norm(f: impl Fn(f64) -> f64) -> f64 {
    let ss: f64 = normalization_grid().map(|x| f(x).powi(2)).sum();
    (ss / NORMALIZATION_GRID as f64).sqrt()
}

fn compute_normalization(shape: VarianceShape) -> Normalization {
    let target = discrete_l2_norm(v1);
    let offset = if shape.needs_offset() {
        let (mut min, mut sum) = (f64::INFINITY, 0.0);
        for x in normalization_grid() {
            let v = shape.raw(x);
            min = min.min(v);
            sum += v;
        }
        let mean = sum / NORMALIZATION_GRID as f64;
        // min + a = 0.1 (mean + a)
        (0.1 * mean - min) / 0.9
    } else {
        0.0
    };
    let scale = if shape == VarianceShape::V1 {
        1.0
    } else {
        target / discrete_l2_norm(|x| shape.raw(x) + offset)
    };
    Normalization {
        offset,
        scale,
        target_norm: target,
    }
}

/// Normalized variance function: Bumps and Doppler are first shifted so their
/// grid minimum is a tenth of their grid mean, then every shape is rescaled to
/// the discrete L2 norm of `V1`.
pub fn normalize_variance(shape: VarianceShape) -> VarianceFunction {
    static CACHE: OnceLock<Vec<Normalization>> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        VarianceShape::ALL
            .iter()
            .map(|&s| compute_normalization(s))
            .collect()
    });
    let idx = VarianceShape::ALL
        .iter()
        .position(|&s| s == shape)
        .expect("listed shape");
    VarianceFunction {
        shape,
        normalization: table[idx],
    }
}
