use crate::codebooks::{
    dequantize_gain, dequantize_gain_corr, quantize_gain, quantize_gain_corr, GainCode,
};
use crate::dsp::rms;
use crate::{SUBFRAMES, SUBFRAME_SIZE};

/// Ternary codebook entries have about one non-zero value in three, so their
/// rms is about `1/sqrt(3)`; this factor brings them to unit rms.
pub const INNOVATION_SCALE: f64 = 1.732_050_807_568_877_2;

/// Amplitude applied to the innovation codebook entries of a sub-frame.
pub fn innovation_gain(global_index: usize, corr_index: usize) -> f64 {
    dequantize_gain(global_index) * dequantize_gain_corr(corr_index) * INNOVATION_SCALE
}

/// Correction index for a sub-frame whose target rms is that of `residual`,
/// relative to the reconstructed global gain. A zero global gain gives index 0.
pub fn subframe_correction(residual: &[f64], global_rms: f64) -> usize {
    if global_rms <= 0.0 {
        return 0;
    }
    quantize_gain_corr(rms(residual) / global_rms)
}

/// Open-loop gains of a frame: global index from the whole frame's rms and one
/// correction per sub-frame relative to the reconstructed global gain.
pub fn open_loop_gain(residual: &[f64]) -> GainCode {
    debug_assert_eq!(residual.len(), SUBFRAMES * SUBFRAME_SIZE);
    let global_index = quantize_gain(rms(residual));
    let global = dequantize_gain(global_index);
    let mut corr_index = [0; SUBFRAMES];
    for (j, c) in corr_index.iter_mut().enumerate() {
        *c = subframe_correction(&residual[j * SUBFRAME_SIZE..(j + 1) * SUBFRAME_SIZE], global);
    }
    GainCode {
        global_index,
        corr_index,
    }
}
