use super::gain::{innovation_gain, subframe_correction};
use super::history::ExcitationHistory;
use super::params::{FrameParams, SubframeParams};
use super::search::{
    adaptive_excitation, adaptive_search, build_excitation, convolve, fixed_search,
    impulse_response, weighted_error, WeightedSynthesis,
};
use super::subframe_lpc;
use crate::codebooks::{
    build_innovation_codebook, dequantize_gain, dequantize_lsp, quantize_gain, quantize_lsp,
    InnovationCodebook, Mode, ModeTable, PITCH_MAX, PITCH_MIN,
};
use crate::dsp::{
    all_pole_in_place, all_zero_in_place, autocorrelate, bandwidth_expand, levinson_durbin,
    lpc_to_lsp, rms, AcfConditioning, LpcCoefficients, LspAngles, WeightingConfig, Window,
};
use crate::{Error, Result, LOOKAHEAD, LPC_ORDER, NB_FRAME_SIZE, NB_RATE, SUBFRAMES, SUBFRAME_SIZE};

/// Weighted-domain errors of one sub-frame at each search stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubframeTrace {
    /// Target energy with no excitation.
    pub zero_error: f64,
    /// After the adaptive-codebook contribution.
    pub adaptive_error: f64,
    /// After adding the innovation.
    pub final_error: f64,
}

/// Narrowband CELP encoder.
///
/// Each call to [`encode_frame`](Self::encode_frame) takes the next 160 input
/// samples. The LPC analysis window also covers 80 samples of look-ahead, so
/// the frame actually coded is the 160 samples ending 80 samples before the end
/// of the input seen so far. The encoder starts from silence.
#[derive(Debug, Clone)]
pub struct NbEncoder {
    mode: Mode,
    table: &'static ModeTable,
    codebook: InnovationCodebook,
    weighting: WeightingConfig,
    conditioning: AcfConditioning,
    pending: Vec<f64>,
    prev_lsp: LspAngles,
    prev_qlsp: LspAngles,
    history: ExcitationHistory,
    residual_mem: Vec<f64>,
    weight_num_mem: Vec<f64>,
    weight_den_mem: Vec<f64>,
    abs: WeightedSynthesis,
}

impl NbEncoder {
    /// Encoder for a narrowband mode (`NbLow` or `NbHigh`).
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
            weighting: WeightingConfig::default(),
            conditioning: AcfConditioning::standard(NB_RATE),
            pending: vec![0.0; LOOKAHEAD],
            prev_lsp: LspAngles::uniform(LPC_ORDER),
            prev_qlsp: LspAngles::uniform(LPC_ORDER),
            history: ExcitationHistory::new(),
            residual_mem: vec![0.0; LPC_ORDER],
            weight_num_mem: vec![0.0; LPC_ORDER],
            weight_den_mem: vec![0.0; LPC_ORDER],
            abs: WeightedSynthesis::new(LPC_ORDER),
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Returns the encoder to its initial state.
    pub fn reset(&mut self) {
        *self = Self::new(self.mode).expect("mode was validated");
    }

    /// Encodes the next 160 samples.
    pub fn encode_frame(&mut self, input: &[f64]) -> Result<FrameParams> {
        self.encode_frame_traced(input).map(|(p, _)| p)
    }

    /// Like [`encode_frame`](Self::encode_frame), also returning the
    /// per-sub-frame search errors.
    pub fn encode_frame_traced(&mut self, input: &[f64]) -> Result<(FrameParams, Vec<SubframeTrace>)> {
        if input.len() != NB_FRAME_SIZE {
            return Err(Error::InvalidInput(format!(
                "expected {NB_FRAME_SIZE} samples, got {}",
                input.len()
            )));
        }
        if input.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite input sample".into()));
        }

        let mut buf = std::mem::take(&mut self.pending);
        buf.extend_from_slice(input);
        self.pending = input[NB_FRAME_SIZE - LOOKAHEAD..].to_vec();
        let coded = &buf[..NB_FRAME_SIZE];

        let acf = autocorrelate(&buf, Window::Hamming, LPC_ORDER, &self.conditioning)?;
        let analysis = levinson_durbin(&acf, LPC_ORDER)?;
        let lsp = lpc_to_lsp(&analysis.lpc).unwrap_or_else(|_| self.prev_lsp.clone());
        let lsp_indices = quantize_lsp(&lsp);
        let qlsp = dequantize_lsp(&lsp_indices);

        let quantized: Vec<LpcCoefficients> =
            (0..SUBFRAMES).map(|j| subframe_lpc(&self.prev_qlsp, &qlsp, j)).collect();
        let unquantized: Vec<LpcCoefficients> =
            (0..SUBFRAMES).map(|j| subframe_lpc(&self.prev_lsp, &lsp, j)).collect();

        let mut residual = coded.to_vec();
        for (j, a) in quantized.iter().enumerate() {
            let sub = &mut residual[j * SUBFRAME_SIZE..(j + 1) * SUBFRAME_SIZE];
            all_zero_in_place(sub, a.as_slice(), &mut self.residual_mem);
        }
        let global_gain_index = quantize_gain(rms(&residual));
        let global = dequantize_gain(global_gain_index);

        let mut subframes = Vec::with_capacity(SUBFRAMES);
        let mut traces = Vec::with_capacity(SUBFRAMES);
        for j in 0..SUBFRAMES {
            let span = j * SUBFRAME_SIZE..(j + 1) * SUBFRAME_SIZE;
            let aq = &quantized[j];
            let num = bandwidth_expand(&unquantized[j], self.weighting.gamma1());
            let den = bandwidth_expand(&unquantized[j], self.weighting.gamma2());
            let filters = [aq, &num, &den];

            let mut target = coded[span.clone()].to_vec();
            all_zero_in_place(&mut target, num.as_slice(), &mut self.weight_num_mem);
            all_pole_in_place(&mut target, den.as_slice(), &mut self.weight_den_mem);
            let zir = self.abs.zero_input_response(SUBFRAME_SIZE, filters);
            for (t, z) in target.iter_mut().zip(&zir) {
                *t -= z;
            }
            let h = impulse_response(aq, &num, &den, SUBFRAME_SIZE);

            let pitch = adaptive_search(&target, &self.history, &h, PITCH_MIN..=PITCH_MAX);
            let adaptive = adaptive_excitation(&self.history, pitch, SUBFRAME_SIZE);
            let filtered_adaptive = convolve(&adaptive, &h, SUBFRAME_SIZE);

            let leftover: Vec<f64> = residual[span]
                .iter()
                .zip(&adaptive)
                .map(|(r, a)| r - a)
                .collect();
            let corr_index = subframe_correction(&leftover, global);
            let gain = innovation_gain(global_gain_index, corr_index);

            let innovation_target: Vec<f64> = target
                .iter()
                .zip(&filtered_adaptive)
                .map(|(t, y)| t - y)
                .collect();
            let innovation = fixed_search(&innovation_target, &self.codebook, gain, &h);
            let excitation = build_excitation(
                &self.history,
                Some(pitch),
                gain,
                &innovation,
                &self.codebook,
                SUBFRAME_SIZE,
            );

            let filtered = convolve(&excitation, &h, SUBFRAME_SIZE);
            traces.push(SubframeTrace {
                zero_error: weighted_error(&target, &[]),
                adaptive_error: weighted_error(&target, &[&filtered_adaptive]),
                final_error: weighted_error(&target, &[&filtered]),
            });

            self.history.commit(&excitation);
            self.abs.update(&excitation, filters);
            subframes.push(SubframeParams {
                pitch,
                corr_index,
                innovation,
            });
        }

        self.prev_lsp = lsp;
        self.prev_qlsp = qlsp;
        let params = FrameParams {
            lsp_indices,
            global_gain_index,
            subframes,
        };
        debug_assert!(params.validate(self.table).is_ok());
        Ok((params, traces))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tone(n0: usize, len: usize) -> Vec<f64> {
        (n0..n0 + len)
            .map(|n| 8000.0 * (2.0 * std::f64::consts::PI * 200.0 * n as f64 / 8000.0).sin())
            .collect()
    }

    #[test]
    fn rejects_bad_input() {
        assert!(NbEncoder::new(Mode::WbLow).is_err());
        let mut enc = NbEncoder::new(Mode::NbLow).unwrap();
        assert!(enc.encode_frame(&[0.0; 159]).is_err());
        let mut x = vec![0.0; 160];
        x[3] = f64::NAN;
        assert!(enc.encode_frame(&x).is_err());
    }

    #[test]
    fn silence_encodes_to_zero_gains() {
        let mut enc = NbEncoder::new(Mode::NbHigh).unwrap();
        for _ in 0..3 {
            let p = enc.encode_frame(&[0.0; 160]).unwrap();
            assert_eq!(p.global_gain_index, 0);
            for sf in &p.subframes {
                assert_eq!(sf.pitch.gain_index, 0);
                assert!(sf.innovation.iter().all(|&i| i == 0));
            }
        }
    }

    #[test]
    fn stages_never_increase_error() {
        let mut enc = NbEncoder::new(Mode::NbLow).unwrap();
        for f in 0..6 {
            let (_, traces) = enc.encode_frame_traced(&tone(f * 160, 160)).unwrap();
            for t in traces {
                assert!(t.adaptive_error <= t.zero_error * (1.0 + 1e-9) + 1e-9);
                assert!(t.final_error <= t.adaptive_error * (1.0 + 1e-9) + 1e-9);
            }
        }
    }

    #[test]
    fn deterministic_and_reset() {
        let mut a = NbEncoder::new(Mode::NbHigh).unwrap();
        let first: Vec<_> = (0..3).map(|f| a.encode_frame(&tone(f * 160, 160)).unwrap()).collect();
        a.reset();
        let again: Vec<_> = (0..3).map(|f| a.encode_frame(&tone(f * 160, 160)).unwrap()).collect();
        assert_eq!(first, again);
    }
}
