use crate::codebooks::{Mode, CORR_LEVELS, GAIN_LEVELS, LSP_LEVELS};
use crate::nb::FrameParams;
use crate::{Error, Result, HB_LPC_ORDER, SUBFRAMES};

/// Quantized parameters of one 20 ms wideband frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WbFrameParams {
    /// Low band, coded exactly like a narrowband frame.
    pub nb: FrameParams,
    pub hb_lsp_indices: Vec<usize>,
    pub hb_global_gain_index: usize,
    pub hb_corr_index: [usize; SUBFRAMES],
    /// Innovation indices per sub-frame; present only in `WbHigh`.
    pub hb_innovation: Option<Vec<Vec<usize>>>,
}

impl WbFrameParams {
    /// All-zero parameters for a wideband `mode`.
    pub fn zeroed(mode: Mode) -> Self {
        let hb = mode.table().high_band;
        Self {
            nb: FrameParams::zeroed(mode.narrowband_layer().table()),
            hb_lsp_indices: vec![0; HB_LPC_ORDER],
            hb_global_gain_index: 0,
            hb_corr_index: [0; SUBFRAMES],
            hb_innovation: hb
                .and_then(|l| l.innovation)
                .map(|(len, _)| vec![vec![0; crate::SUBFRAME_SIZE / len]; SUBFRAMES]),
        }
    }

    /// Checks every index against the ranges of the wideband `mode`.
    pub fn validate(&self, mode: Mode) -> Result<()> {
        let bad = |what: &str| Err(Error::MalformedFrame(what.to_string()));
        let Some(layout) = mode.table().high_band else {
            return bad("not a wideband mode");
        };
        self.nb.validate(mode.narrowband_layer().table())?;
        if self.hb_lsp_indices.len() != HB_LPC_ORDER
            || self.hb_lsp_indices.iter().any(|&i| i >= LSP_LEVELS)
        {
            return bad("high-band LSP index out of range");
        }
        if self.hb_global_gain_index >= GAIN_LEVELS {
            return bad("high-band gain index out of range");
        }
        if self.hb_corr_index.iter().any(|&c| c >= CORR_LEVELS) {
            return bad("high-band correction index out of range");
        }
        match (layout.innovation, &self.hb_innovation) {
            (None, None) => Ok(()),
            (Some((len, bits)), Some(sfs)) => {
                let per = crate::SUBFRAME_SIZE / len;
                if sfs.len() != SUBFRAMES
                    || sfs.iter().any(|s| s.len() != per || s.iter().any(|&i| i >> bits != 0))
                {
                    return bad("high-band innovation index out of range");
                }
                Ok(())
            }
            _ => bad("high-band innovation presence does not match mode"),
        }
    }
}
