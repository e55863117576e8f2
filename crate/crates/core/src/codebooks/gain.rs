//! Log-domain excitation gain quantizers.

/// Levels of the per-frame global gain quantizer.
pub const GAIN_LEVELS: usize = 32;
/// Levels of the per-sub-frame correction quantizer.
pub const CORR_LEVELS: usize = 8;

const LOG_RMS_MAX: f64 = 15.0;
const GAIN_STEP: f64 = LOG_RMS_MAX / (GAIN_LEVELS - 1) as f64;
const CORR_MIN_DB: f64 = -12.0;
const CORR_MAX_DB: f64 = 9.6;
const CORR_STEP_DB: f64 = (CORR_MAX_DB - CORR_MIN_DB) / (CORR_LEVELS - 1) as f64;

/// Global gain index plus one correction index per sub-frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GainCode {
    pub global_index: usize,
    pub corr_index: [usize; 4],
}

/// Uniform quantization of `log2(1 + rms)` over `[0, 15]`, saturating.
pub fn quantize_gain(rms: f64) -> usize {
    if !(rms > 0.0) {
        return 0;
    }
    let v = (1.0 + rms).log2() / GAIN_STEP;
    (v.round().max(0.0) as usize).min(GAIN_LEVELS - 1)
}

/// Reconstructed rms of a global gain index; index 0 is exactly zero.
pub fn dequantize_gain(index: usize) -> f64 {
    (index as f64 * GAIN_STEP).exp2() - 1.0
}

/// Uniform quantization of a linear ratio in dB over `[-12, 9.6]`, saturating.
/// Non-positive ratios map to the lowest level.
pub fn quantize_gain_corr(ratio: f64) -> usize {
    if !(ratio > 0.0) {
        return 0;
    }
    let db = 20.0 * ratio.log10();
    let v = (db - CORR_MIN_DB) / CORR_STEP_DB;
    if !(v > 0.0) {
        return 0;
    }
    (v.round() as usize).min(CORR_LEVELS - 1)
}

/// Linear ratio of a correction index.
pub fn dequantize_gain_corr(index: usize) -> f64 {
    let db = CORR_MIN_DB + index as f64 * CORR_STEP_DB;
    10f64.powf(db / 20.0)
}
