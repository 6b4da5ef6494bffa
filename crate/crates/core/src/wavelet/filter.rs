use crate::error::{Error, Result};

/// Names accepted by [`build_filter`].
pub const SUPPORTED_FILTERS: &[&str] = &["haar", "daub4", "daub8", "symmlet8", "coiflet3"];

// Standard published tables (Daubechies 1992), scaled so that the taps sum to sqrt(2).
// The Symmlet table was recomputed by spectral factorization at 60 digits.
const DAUB4: [f64; 4] = [
    0.48296291314453416,
    0.8365163037378079,
    0.2241438680420134,
    -0.12940952255126037,
];

const DAUB8: [f64; 8] = [
    0.2303778133088965,
    0.7148465705529157,
    0.6308807679298589,
    -0.027983769416859854,
    -0.18703481171909309,
    0.030841381835560764,
    0.0328830116668852,
    -0.010597401785069032,
];

const SYMMLET8: [f64; 16] = [
    0.0018899503327676891843,
    -0.00030292051472413308126,
    -0.014952258337062199118,
    0.0038087520138944894631,
    0.049137179673730286787,
    -0.027219029917103486322,
    -0.051945838107881800736,
    0.36444189483617893676,
    0.77718575169962802862,
    0.48135965125905339159,
    -0.061273359067811077843,
    -0.14329423835127266284,
    0.0076074873249766081919,
    0.031695087811525991431,
    -0.00054213233180001068935,
    -0.0033824159510050025955,
];

const COIFLET3: [f64; 18] = [
    -0.003793512864380802,
    0.007782596425672746,
    0.023452696142077168,
    -0.06577191128146936,
    -0.06112339000297255,
    0.40517690240911824,
    0.7937772226260872,
    0.42848347637737,
    -0.07179982161915484,
    -0.08230192710629983,
    0.03455502757329774,
    0.015880544863669452,
    -0.009007976136730624,
    -0.0025745176881367972,
    0.0011175187708306303,
    0.0004662169598204029,
    -7.0983302506379e-05,
    -3.459977319727278e-05,
];

/// An orthonormal conjugate-quadrature filter pair.
///
/// Only the lowpass taps are stored; the highpass filter is always derived as
/// `g[k] = (-1)^k h[L-1-k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFilter {
    name: &'static str,
    lowpass: Vec<f64>,
    vanishing_moments: u32,
    coiflet: bool,
}

impl WaveletFilter {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn lowpass(&self) -> &[f64] {
        &self.lowpass
    }

    pub fn len(&self) -> usize {
        self.lowpass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lowpass.is_empty()
    }

    /// Number of vanishing moments of the mother wavelet.
    pub fn vanishing_moments(&self) -> u32 {
        self.vanishing_moments
    }

    /// Whether the scaling function also has vanishing moments (Coiflet class).
    pub fn is_coiflet(&self) -> bool {
        self.coiflet
    }

    pub fn highpass(&self) -> Vec<f64> {
        let l = self.lowpass.len();
        (0..l)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * self.lowpass[l - 1 - k]
            })
            .collect()
    }
}

/// Looks up a filter by name.
pub fn build_filter(name: &str) -> Result<WaveletFilter> {
    let (name, taps, vanishing, coiflet): (&'static str, &[f64], u32, bool) =
        match name.to_ascii_lowercase().as_str() {
            "haar" => ("haar", &[std::f64::consts::FRAC_1_SQRT_2; 2], 1, false),
            "daub4" => ("daub4", &DAUB4, 2, false),
            "daub8" => ("daub8", &DAUB8, 4, false),
            "symmlet8" => ("symmlet8", &SYMMLET8, 8, false),
            "coiflet3" => ("coiflet3", &COIFLET3, 6, true),
            _ => {
                return Err(Error::UnknownFilter {
                    name: name.to_string(),
                    supported: SUPPORTED_FILTERS.join(", "),
                })
            }
        };
    Ok(WaveletFilter {
        name,
        lowpass: taps.to_vec(),
        vanishing_moments: vanishing,
        coiflet,
    })
}
