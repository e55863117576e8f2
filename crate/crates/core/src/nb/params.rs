use crate::codebooks::{
    PitchParams, ModeTable, CORR_LEVELS, GAIN_LEVELS, LSP_LEVELS, PITCH_GAIN_TABLE, PITCH_MAX,
    PITCH_MIN,
};
use crate::{Error, Result, LPC_ORDER, SUBFRAMES};

/// Quantized parameters of one sub-frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubframeParams {
    pub pitch: PitchParams,
    pub corr_index: usize,
    /// One codebook index per innovation sub-vector, in time order.
    pub innovation: Vec<usize>,
}

/// Quantized parameters of one 20 ms narrowband frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameParams {
    pub lsp_indices: Vec<usize>,
    pub global_gain_index: usize,
    pub subframes: Vec<SubframeParams>,
}

impl FrameParams {
    /// All-zero indices (lowest pitch period) for `table`.
    pub fn zeroed(table: &ModeTable) -> Self {
        Self {
            lsp_indices: vec![0; LPC_ORDER],
            global_gain_index: 0,
            subframes: (0..SUBFRAMES)
                .map(|_| SubframeParams {
                    pitch: PitchParams {
                        period: PITCH_MIN,
                        gain_index: 0,
                    },
                    corr_index: 0,
                    innovation: vec![0; table.subvectors_per_subframe()],
                })
                .collect(),
        }
    }

    /// Checks every index against the ranges of `table`.
    pub fn validate(&self, table: &ModeTable) -> Result<()> {
        let bad = |what: &str| Err(Error::MalformedFrame(what.to_string()));
        if self.lsp_indices.len() != LPC_ORDER || self.lsp_indices.iter().any(|&i| i >= LSP_LEVELS)
        {
            return bad("LSP index out of range");
        }
        if self.global_gain_index >= GAIN_LEVELS {
            return bad("global gain index out of range");
        }
        if self.subframes.len() != SUBFRAMES {
            return bad("wrong sub-frame count");
        }
        for sf in &self.subframes {
            if !(PITCH_MIN..=PITCH_MAX).contains(&sf.pitch.period) {
                return bad("pitch period out of range");
            }
            if sf.pitch.gain_index >= PITCH_GAIN_TABLE.len() {
                return bad("pitch gain index out of range");
            }
            if sf.corr_index >= CORR_LEVELS {
                return bad("gain correction index out of range");
            }
            if sf.innovation.len() != table.subvectors_per_subframe()
                || sf.innovation.iter().any(|&i| i >= table.codebook_size())
            {
                return bad("innovation index out of range");
            }
        }
        Ok(())
    }
}
