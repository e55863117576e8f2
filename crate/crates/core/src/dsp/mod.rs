//! Signal-processing primitives shared by the encoder and decoder.
//!
//! Everything here works on `f64` with a fixed left-to-right summation order,
//! so streaming and one-shot processing agree bit for bit.

mod filter;
mod lpc;
mod lsp;
mod prefilter;
mod window;

pub use filter::{
    bandwidth_expand, filter_all_pole, filter_all_zero, perceptual_weight, FilterState,
    WeightingConfig, WeightingState,
};
pub(crate) use filter::{all_pole_in_place, all_zero_in_place};
pub use lpc::{autocorrelate, levinson_durbin, AcfConditioning, LpcAnalysis, LpcCoefficients};
pub use lsp::{lpc_to_lsp, lsp_to_lpc, LspAngles, LSP_MIN_SEPARATION};
pub use prefilter::{dc_notch, highpass, Biquad, NotchConfig, NotchState};
pub use window::{hamming, Window};

/// Root mean square of a slice; zero for an empty slice.
pub fn rms(x: &[f64]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    (energy(x) / x.len() as f64).sqrt()
}

/// Sum of squares, accumulated left to right.
pub fn energy(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |acc, &v| acc + v * v)
}

/// Inner product, accumulated left to right.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (&x, &y)| acc + x * y)
}
