use super::params::WbFrameParams;
use super::qmf::QmfBank;
use crate::bitstream::{unpack_frame, unpack_high_band};
use crate::codebooks::{
    dequantize_gain, dequantize_gain_corr, dequantize_lsp, InnovationCodebook, Mode,
};
use crate::dsp::{rms, LspAngles};
use crate::nb::{
    build_excitation, innovation_gain, subframe_lpc, synthesize, ExcitationHistory, FrameParams,
    NbDecoder, EXCITATION_LIMIT,
};
use crate::{Error, Result, HB_LPC_ORDER, NB_FRAME_SIZE, SUBFRAMES, SUBFRAME_SIZE};

const OUTPUT_LIMIT: f64 = 32767.0;

/// One decoded wideband frame.
#[derive(Debug, Clone, PartialEq)]
pub struct WbOutput {
    /// 160 samples at 8 kHz from the narrowband layer, exactly what a
    /// narrowband decoder produces for the same low-band bytes.
    pub low_band: Vec<f64>,
    /// 320 samples at 16 kHz.
    pub wide: Vec<f64>,
    /// False when the high band was missing, malformed or lost and was
    /// replaced by silence.
    pub high_band_present: bool,
}

/// Wideband decoder.
#[derive(Debug, Clone)]
pub struct WbDecoder {
    mode: Mode,
    qmf: QmfBank,
    nb: NbDecoder,
    codebook: Option<InnovationCodebook>,
    prev_qlsp: LspAngles,
    synthesis_mem: Vec<f64>,
}

impl WbDecoder {
    /// Decoder for a wideband mode (`WbLow` or `WbHigh`).
    pub fn new(mode: Mode) -> Result<Self> {
        let Some(layout) = mode.table().high_band else {
            return Err(Error::InvalidInput(format!("{mode} is not a wideband mode")));
        };
        Ok(Self {
            mode,
            qmf: QmfBank::new(),
            nb: NbDecoder::new(mode.narrowband_layer())?,
            codebook: layout
                .innovation
                .map(|(len, bits)| InnovationCodebook::generate(len, bits)),
            prev_qlsp: LspAngles::uniform(HB_LPC_ORDER),
            synthesis_mem: vec![0.0; HB_LPC_ORDER],
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn reset(&mut self) {
        *self = Self::new(self.mode).expect("mode was validated");
    }

    /// Decodes a complete wideband frame. Invalid parameters are rejected and
    /// leave the decoder untouched.
    pub fn decode_frame(&mut self, params: &WbFrameParams) -> Result<WbOutput> {
        params.validate(self.mode)?;
        let low = self.nb.decode_frame(&params.nb)?;
        let high = self.decode_high_band(params);
        self.merge(low, high, true)
    }

    /// Decodes a frame whose high band is missing; the high band is silent.
    pub fn decode_narrowband(&mut self, params: &FrameParams) -> Result<WbOutput> {
        let low = self.nb.decode_frame(params)?;
        self.drop_high_band();
        self.merge(low, vec![0.0; NB_FRAME_SIZE], false)
    }

    /// Conceals a lost frame: the low band is concealed by the narrowband
    /// decoder, the high band is silent.
    pub fn conceal_frame(&mut self) -> WbOutput {
        let low = self.nb.conceal_frame();
        self.drop_high_band();
        self.merge(low, vec![0.0; NB_FRAME_SIZE], false)
            .expect("band lengths match")
    }

    /// Decodes one container frame payload.
    ///
    /// An empty payload is a lost frame. A payload holding only the
    /// narrowband section (or a damaged high-band section) decodes the low
    /// band with a silent high band. A payload shorter than the narrowband
    /// section is an error.
    pub fn decode_bytes(&mut self, bytes: &[u8]) -> Result<WbOutput> {
        if bytes.is_empty() {
            return Ok(self.conceal_frame());
        }
        let table = self.mode.table();
        let nb_bytes = table.nb_bytes();
        let nb = unpack_frame(bytes, self.mode.narrowband_layer())?;
        if bytes.len() == table.frame_bytes() {
            if let Ok(params) = unpack_high_band(&bytes[nb_bytes..], nb.clone(), self.mode) {
                return self.decode_frame(&params);
            }
        }
        self.decode_narrowband(&nb)
    }

    fn drop_high_band(&mut self) {
        self.synthesis_mem.iter_mut().for_each(|v| *v = 0.0);
    }

    fn decode_high_band(&mut self, params: &WbFrameParams) -> Vec<f64> {
        let qlsp = dequantize_lsp(&params.hb_lsp_indices);
        let global = dequantize_gain(params.hb_global_gain_index);
        let silent = ExcitationHistory::new();
        let folded = self.nb.last_excitation();
        let mut out = Vec::with_capacity(NB_FRAME_SIZE);
        for j in 0..SUBFRAMES {
            let corr = params.hb_corr_index[j];
            let mut e = match (&self.codebook, &params.hb_innovation) {
                (Some(cb), Some(idx)) => build_excitation(
                    &silent,
                    None,
                    innovation_gain(params.hb_global_gain_index, corr),
                    &idx[j],
                    cb,
                    SUBFRAME_SIZE,
                ),
                _ => fold(
                    &folded[j * SUBFRAME_SIZE..(j + 1) * SUBFRAME_SIZE],
                    global * dequantize_gain_corr(corr),
                ),
            };
            let a = subframe_lpc(&self.prev_qlsp, &qlsp, j);
            synthesize(&mut e, a.as_slice(), &mut self.synthesis_mem);
            out.extend(e);
        }
        self.prev_qlsp = qlsp;
        out
    }

    fn merge(&mut self, low: Vec<f64>, high: Vec<f64>, present: bool) -> Result<WbOutput> {
        let mut wide = self.qmf.synthesis(&low, &high)?;
        for v in wide.iter_mut() {
            *v = v.clamp(-OUTPUT_LIMIT - 1.0, OUTPUT_LIMIT);
        }
        Ok(WbOutput {
            low_band: low,
            wide,
            high_band_present: present,
        })
    }
}

/// Low-band excitation rescaled to rms `target`; silence stays silent.
pub fn fold(low_excitation: &[f64], target: f64) -> Vec<f64> {
    let r = rms(low_excitation);
    if !(r > 0.0) {
        return vec![0.0; low_excitation.len()];
    }
    let scale = target / r;
    low_excitation
        .iter()
        .map(|v| (v * scale).clamp(-EXCITATION_LIMIT, EXCITATION_LIMIT))
        .collect()
}
