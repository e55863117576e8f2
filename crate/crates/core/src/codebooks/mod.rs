//! Mode tables, quantizers and codebooks.

mod gain;
mod innovation;
mod lsp_quant;
mod mode;
mod pitch_gain;
mod rng;

pub use gain::{
    dequantize_gain, dequantize_gain_corr, quantize_gain, quantize_gain_corr, GainCode,
    CORR_LEVELS, GAIN_LEVELS,
};
pub use innovation::{build_innovation_codebook, InnovationCodebook, INNOVATION_SEED};
pub use lsp_quant::{dequantize_lsp, lsp_level, lsp_range, quantize_lsp, LSP_LEVELS};
pub use mode::{HighBandLayout, Mode, ModeTable, PITCH_MAX, PITCH_MIN};
pub use pitch_gain::{quantize_pitch_gains, PitchParams, PITCH_GAIN_TABLE};
pub use rng::XorShift64Star;
