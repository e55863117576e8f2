use super::gain::innovation_gain;
use super::history::ExcitationHistory;
use super::params::FrameParams;
use super::search::{adaptive_vectors, build_excitation};
use super::{subframe_lpc, synthesize, EXCITATION_LIMIT};
use crate::codebooks::{
    build_innovation_codebook, dequantize_lsp, InnovationCodebook, Mode, ModeTable, PitchParams,
};
use crate::dsp::{lsp_to_lpc, LspAngles};
use crate::{Error, Result, LPC_ORDER, NB_FRAME_SIZE, SUBFRAMES, SUBFRAME_SIZE};

const CONCEAL_DECAY: f64 = 0.85;
const CONCEAL_MAX_GAIN: f64 = 0.9;
const OUTPUT_LIMIT: f64 = 32767.0;

/// Narrowband CELP decoder with packet-loss concealment.
#[derive(Debug, Clone)]
pub struct NbDecoder {
    mode: Mode,
    table: &'static ModeTable,
    codebook: InnovationCodebook,
    prev_qlsp: LspAngles,
    history: ExcitationHistory,
    synthesis_mem: Vec<f64>,
    last_good: Option<PitchParams>,
    consecutive_lost: u32,
    excitation: Vec<f64>,
}

impl NbDecoder {
    /// Decoder for a narrowband mode (`NbLow` or `NbHigh`).
    pub fn new(mode: Mode) -> Result<Self> {
        if mode.is_wideband() {
            return Err(Error::InvalidInput(format!(
                "{mode} is not a narrowband mode"
            )));
        }
        let table = mode.table();
        Ok(Self {
            mode,
            table,
            codebook: build_innovation_codebook(table),
            prev_qlsp: LspAngles::uniform(LPC_ORDER),
            history: ExcitationHistory::new(),
            synthesis_mem: vec![0.0; LPC_ORDER],
            last_good: None,
            consecutive_lost: 0,
            excitation: vec![0.0; NB_FRAME_SIZE],
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn reset(&mut self) {
        *self = Self::new(self.mode).expect("mode was validated");
    }

    /// Number of frames concealed since the last good frame.
    pub fn consecutive_lost(&self) -> u32 {
        self.consecutive_lost
    }

    /// Excitation of the most recently produced frame.
    pub fn last_excitation(&self) -> &[f64] {
        &self.excitation
    }

    /// Decodes one frame to 160 samples clamped to the 16-bit range.
    ///
    /// Invalid parameters are rejected with [`Error::MalformedFrame`] and leave
    /// the decoder untouched.
    pub fn decode_frame(&mut self, params: &FrameParams) -> Result<Vec<f64>> {
        self.decode_raw(params).map(clamp_output)
    }

    /// Produces 160 samples for a lost frame.
    ///
    /// The last good pitch period is repeated with a single tap whose gain is
    /// the last pitch gain sum capped at 0.9, further scaled by 0.85 per
    /// consecutive loss. Before any good frame the output is silence.
    pub fn conceal_frame(&mut self) -> Vec<f64> {
        clamp_output(self.conceal_raw())
    }

    pub(crate) fn decode_raw(&mut self, params: &FrameParams) -> Result<Vec<f64>> {
        params.validate(self.table)?;
        let qlsp = dequantize_lsp(&params.lsp_indices);
        let mut out = Vec::with_capacity(NB_FRAME_SIZE);
        for (j, sf) in params.subframes.iter().enumerate() {
            let a = subframe_lpc(&self.prev_qlsp, &qlsp, j);
            let gain = innovation_gain(params.global_gain_index, sf.corr_index);
            let e = build_excitation(
                &self.history,
                Some(sf.pitch),
                gain,
                &sf.innovation,
                &self.codebook,
                SUBFRAME_SIZE,
            );
            self.history.commit(&e);
            self.excitation[j * SUBFRAME_SIZE..(j + 1) * SUBFRAME_SIZE].copy_from_slice(&e);
            let mut y = e;
            synthesize(&mut y, a.as_slice(), &mut self.synthesis_mem);
            out.extend(y);
        }
        self.prev_qlsp = qlsp;
        self.last_good = params.subframes.last().map(|sf| sf.pitch);
        self.consecutive_lost = 0;
        Ok(out)
    }

    pub(crate) fn conceal_raw(&mut self) -> Vec<f64> {
        let Some(pitch) = self.last_good else {
            self.excitation.iter_mut().for_each(|v| *v = 0.0);
            return vec![0.0; NB_FRAME_SIZE];
        };
        self.consecutive_lost = self.consecutive_lost.saturating_add(1);
        let tap = pitch.gains().iter().sum::<f64>().clamp(0.0, CONCEAL_MAX_GAIN);
        let gain = tap * CONCEAL_DECAY.powi(self.consecutive_lost.min(1000) as i32);
        let [_, repeated, _] = adaptive_vectors(&self.history, pitch.period, NB_FRAME_SIZE);
        let e: Vec<f64> = repeated
            .iter()
            .map(|v| (gain * v).clamp(-EXCITATION_LIMIT, EXCITATION_LIMIT))
            .collect();
        for sf in e.chunks(SUBFRAME_SIZE) {
            self.history.commit(sf);
        }
        self.excitation.copy_from_slice(&e);
        let a = lsp_to_lpc(&self.prev_qlsp);
        let mut y = e;
        synthesize(&mut y, a.as_slice(), &mut self.synthesis_mem);
        debug_assert_eq!(y.len(), SUBFRAMES * SUBFRAME_SIZE);
        y
    }
}

fn clamp_output(mut y: Vec<f64>) -> Vec<f64> {
    for v in y.iter_mut() {
        *v = v.clamp(-OUTPUT_LIMIT - 1.0, OUTPUT_LIMIT);
    }
    y
}
