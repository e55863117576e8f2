//! Narrowband (8 kHz) CELP encoder and decoder.
//!
//! Each 20 ms frame carries one set of quantized LSPs and a global gain; the
//! four 40-sample sub-frames each carry a pitch period, a 3-tap pitch gain
//! index, a gain correction and the innovation sub-vector indices.

mod decoder;
mod encoder;
mod gain;
mod history;
mod params;
mod search;

pub use decoder::NbDecoder;
pub use encoder::{NbEncoder, SubframeTrace};
pub use gain::{innovation_gain, open_loop_gain, subframe_correction, INNOVATION_SCALE};
pub use history::{ExcitationHistory, HISTORY_LEN};
pub use params::{FrameParams, SubframeParams};
pub(crate) use search::{build_excitation, WeightedSynthesis};
pub use search::{
    adaptive_search, adaptive_vectors, convolve, fixed_search, impulse_response,
    weighted_error,
};

use crate::dsp::{LspAngles, LpcCoefficients, lsp_to_lpc};

/// LSP interpolation weight of the current frame for sub-frame `j`.
pub fn interpolation_weight(j: usize) -> f64 {
    (2 * j + 1) as f64 / 8.0
}

/// Predictor of sub-frame `j`, interpolated in the LSP domain.
pub fn subframe_lpc(prev: &LspAngles, cur: &LspAngles, j: usize) -> LpcCoefficients {
    lsp_to_lpc(&LspAngles::interpolate(prev, cur, interpolation_weight(j)))
}

/// Saturation bound on excitation samples, shared by encoder and decoder.
pub(crate) const EXCITATION_LIMIT: f64 = 1_048_576.0;
/// Saturation bound on synthesis filter output and memory.
pub(crate) const SYNTHESIS_LIMIT: f64 = 1_073_741_824.0;

/// `1/A(z)` with the output (and therefore the filter memory) saturated at
/// [`SYNTHESIS_LIMIT`], so that arbitrary parameter streams stay finite.
pub(crate) fn synthesize(buf: &mut [f64], a: &[f64], mem: &mut [f64]) {
    for x in buf.iter_mut() {
        let mut y = *x;
        for (ai, mi) in a.iter().zip(mem.iter()) {
            y -= ai * mi;
        }
        let y = y.clamp(-SYNTHESIS_LIMIT, SYNTHESIS_LIMIT);
        if !mem.is_empty() {
            mem.rotate_right(1);
            mem[0] = y;
        }
        *x = y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_weights() {
        let w: Vec<f64> = (0..4).map(interpolation_weight).collect();
        assert_eq!(w, vec![0.125, 0.375, 0.625, 0.875]);
    }

    #[test]
    fn synthesis_saturates() {
        let mut buf = vec![1e300, 1e300, 1e300];
        let mut mem = vec![0.0];
        synthesize(&mut buf, &[-1.0], &mut mem);
        assert!(buf.iter().all(|v| v.is_finite() && v.abs() <= SYNTHESIS_LIMIT));
    }
}
