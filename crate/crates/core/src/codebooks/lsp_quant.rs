//! Per-coefficient uniform scalar LSP quantizer.

use std::f64::consts::PI;

use crate::dsp::{LspAngles, LSP_MIN_SEPARATION};

/// Levels per coefficient (4 bits).
pub const LSP_LEVELS: usize = 16;

/// Quantizer range of coefficient `i` (0-based) for a predictor of `order`:
/// the uniform position widened by 0.25 rad each side, clipped to
/// `[0.02, pi - 0.02]`.
pub fn lsp_range(i: usize, order: usize) -> (f64, f64) {
    let spacing = PI / (order + 1) as f64;
    let lo = (i as f64 * spacing - 0.25).max(0.02);
    let hi = ((i + 1) as f64 * spacing + 0.25).min(PI - 0.02);
    (lo, hi)
}

/// Reconstruction level `j` of coefficient `i`.
pub fn lsp_level(i: usize, order: usize, j: usize) -> f64 {
    let (lo, hi) = lsp_range(i, order);
    lo + j as f64 * (hi - lo) / (LSP_LEVELS - 1) as f64
}

/// Nearest level per coefficient, saturating at the range ends.
pub fn quantize_lsp(lsp: &LspAngles) -> Vec<usize> {
    let order = lsp.order();
    lsp.as_slice()
        .iter()
        .enumerate()
        .map(|(i, &w)| {
            let (lo, hi) = lsp_range(i, order);
            let step = (hi - lo) / (LSP_LEVELS - 1) as f64;
            let v = ((w - lo) / step).round();
            if v > 0.0 {
                (v as usize).min(LSP_LEVELS - 1)
            } else {
                0
            }
        })
        .collect()
}

/// Levels for `indices`, re-sorted and spread to the minimum separation.
pub fn dequantize_lsp(indices: &[usize]) -> LspAngles {
    let order = indices.len();
    let raw = indices
        .iter()
        .enumerate()
        .map(|(i, &j)| lsp_level(i, order, j.min(LSP_LEVELS - 1)))
        .collect();
    LspAngles::from_unordered(raw, LSP_MIN_SEPARATION)
}
