use super::params::WbFrameParams;
use super::qmf::QmfBank;
use crate::codebooks::{
    dequantize_gain, dequantize_lsp, quantize_gain, quantize_lsp, InnovationCodebook, Mode,
};
use crate::dsp::{
    all_pole_in_place, all_zero_in_place, autocorrelate, bandwidth_expand, levinson_durbin,
    lpc_to_lsp, rms, AcfConditioning, LpcCoefficients, LspAngles, WeightingConfig, Window,
};
use crate::nb::{
    build_excitation, fixed_search, impulse_response, innovation_gain, subframe_correction,
    subframe_lpc, ExcitationHistory, NbEncoder, WeightedSynthesis,
};
use crate::{
    Error, Result, HB_LPC_ORDER, LOOKAHEAD, NB_FRAME_SIZE, NB_RATE, SUBFRAMES, SUBFRAME_SIZE,
    WB_FRAME_SIZE,
};

/// Wideband (16 kHz) encoder: the low band goes through the narrowband
/// encoder, the high band gets its own envelope, gains and (in `WbHigh`) a
/// fixed-codebook innovation with no adaptive codebook.
#[derive(Debug, Clone)]
pub struct WbEncoder {
    mode: Mode,
    qmf: QmfBank,
    nb: NbEncoder,
    high: HighBandEncoder,
}

#[derive(Debug, Clone)]
struct HighBandEncoder {
    codebook: Option<InnovationCodebook>,
    weighting: WeightingConfig,
    conditioning: AcfConditioning,
    pending: Vec<f64>,
    prev_lsp: LspAngles,
    prev_qlsp: LspAngles,
    residual_mem: Vec<f64>,
    weight_num_mem: Vec<f64>,
    weight_den_mem: Vec<f64>,
    abs: WeightedSynthesis,
}

impl WbEncoder {
    /// Encoder for a wideband mode (`WbLow` or `WbHigh`).
    pub fn new(mode: Mode) -> Result<Self> {
        let Some(layout) = mode.table().high_band else {
            return Err(Error::InvalidInput(format!("{mode} is not a wideband mode")));
        };
        Ok(Self {
            mode,
            qmf: QmfBank::new(),
            nb: NbEncoder::new(mode.narrowband_layer())?,
            high: HighBandEncoder {
                codebook: layout
                    .innovation
                    .map(|(len, bits)| InnovationCodebook::generate(len, bits)),
                weighting: WeightingConfig::default(),
                conditioning: AcfConditioning::standard(NB_RATE),
                pending: vec![0.0; LOOKAHEAD],
                prev_lsp: LspAngles::uniform(HB_LPC_ORDER),
                prev_qlsp: LspAngles::uniform(HB_LPC_ORDER),
                residual_mem: vec![0.0; HB_LPC_ORDER],
                weight_num_mem: vec![0.0; HB_LPC_ORDER],
                weight_den_mem: vec![0.0; HB_LPC_ORDER],
                abs: WeightedSynthesis::new(HB_LPC_ORDER),
            },
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn reset(&mut self) {
        *self = Self::new(self.mode).expect("mode was validated");
    }

    /// Encodes the next 320 samples.
    pub fn encode_frame(&mut self, input: &[f64]) -> Result<WbFrameParams> {
        if input.len() != WB_FRAME_SIZE {
            return Err(Error::InvalidInput(format!(
                "expected {WB_FRAME_SIZE} samples, got {}",
                input.len()
            )));
        }
        if input.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite input sample".into()));
        }
        let (low, high) = self.qmf.analysis(input)?;
        let nb = self.nb.encode_frame(&low)?;
        let hb = self.high.encode(&high)?;
        Ok(WbFrameParams {
            nb,
            hb_lsp_indices: hb.lsp_indices,
            hb_global_gain_index: hb.global,
            hb_corr_index: hb.corr,
            hb_innovation: hb.innovation,
        })
    }
}

struct HighBandParams {
    lsp_indices: Vec<usize>,
    global: usize,
    corr: [usize; SUBFRAMES],
    innovation: Option<Vec<Vec<usize>>>,
}

impl HighBandEncoder {
    fn encode(&mut self, input: &[f64]) -> Result<HighBandParams> {
        // Same look-ahead as the low band so both layers code the same
        // stretch of time.
        let mut buf = std::mem::take(&mut self.pending);
        buf.extend_from_slice(input);
        self.pending = input[NB_FRAME_SIZE - LOOKAHEAD..].to_vec();
        let coded = &buf[..NB_FRAME_SIZE];

        let acf = autocorrelate(&buf, Window::Hamming, HB_LPC_ORDER, &self.conditioning)?;
        let analysis = levinson_durbin(&acf, HB_LPC_ORDER)?;
        let lsp = lpc_to_lsp(&analysis.lpc).unwrap_or_else(|_| self.prev_lsp.clone());
        let lsp_indices = quantize_lsp(&lsp);
        let qlsp = dequantize_lsp(&lsp_indices);
        let quantized: Vec<LpcCoefficients> =
            (0..SUBFRAMES).map(|j| subframe_lpc(&self.prev_qlsp, &qlsp, j)).collect();

        let mut residual = coded.to_vec();
        for (j, a) in quantized.iter().enumerate() {
            let sub = &mut residual[j * SUBFRAME_SIZE..(j + 1) * SUBFRAME_SIZE];
            all_zero_in_place(sub, a.as_slice(), &mut self.residual_mem);
        }
        let global = quantize_gain(rms(&residual));
        let global_rms = dequantize_gain(global);
        let mut corr = [0; SUBFRAMES];
        for (j, c) in corr.iter_mut().enumerate() {
            *c = subframe_correction(&residual[j * SUBFRAME_SIZE..(j + 1) * SUBFRAME_SIZE], global_rms);
        }

        let innovation = match &self.codebook {
            None => None,
            Some(cb) => {
                let unquantized: Vec<LpcCoefficients> =
                    (0..SUBFRAMES).map(|j| subframe_lpc(&self.prev_lsp, &lsp, j)).collect();
                let silent = ExcitationHistory::new();
                let mut all = Vec::with_capacity(SUBFRAMES);
                for j in 0..SUBFRAMES {
                    let aq = &quantized[j];
                    let num = bandwidth_expand(&unquantized[j], self.weighting.gamma1());
                    let den = bandwidth_expand(&unquantized[j], self.weighting.gamma2());
                    let filters = [aq, &num, &den];
                    let mut target = coded[j * SUBFRAME_SIZE..(j + 1) * SUBFRAME_SIZE].to_vec();
                    all_zero_in_place(&mut target, num.as_slice(), &mut self.weight_num_mem);
                    all_pole_in_place(&mut target, den.as_slice(), &mut self.weight_den_mem);
                    let zir = self.abs.zero_input_response(SUBFRAME_SIZE, filters);
                    for (t, z) in target.iter_mut().zip(&zir) {
                        *t -= z;
                    }
                    let h = impulse_response(aq, &num, &den, SUBFRAME_SIZE);
                    let gain = innovation_gain(global, corr[j]);
                    let idx = fixed_search(&target, cb, gain, &h);
                    let e = build_excitation(&silent, None, gain, &idx, cb, SUBFRAME_SIZE);
                    self.abs.update(&e, filters);
                    all.push(idx);
                }
                Some(all)
            }
        };

        self.prev_lsp = lsp;
        self.prev_qlsp = qlsp;
        Ok(HighBandParams {
            lsp_indices,
            global,
            corr,
            innovation,
        })
    }
}
