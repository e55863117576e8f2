//! WAV <-> container pipelines.

use mclp::bitstream::{pack_frame, pack_wb_frame, read_container, unpack_frame, write_container};
use mclp::dsp::{dc_notch, Biquad, NotchConfig, NotchState};
use mclp::{Mode, NbDecoder, NbEncoder, WbDecoder, WbEncoder};

use crate::error::{CliError, Result};
use crate::wav::{to_i16, Pcm};

/// Recommended input peak range; outside it the encoder warns.
pub const PEAK_RANGE: (i32, i32) = (5000, 20000);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeOptions {
    pub mode: Mode,
    pub notch: bool,
    pub highpass: bool,
}

impl EncodeOptions {
    /// Both pre-filters enabled.
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            notch: true,
            highpass: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncodeSummary {
    pub frames: usize,
    pub payload_bytes: usize,
    pub bits_per_second: f64,
    pub peak: i32,
}

impl EncodeSummary {
    pub fn peak_warning(&self) -> Option<String> {
        let (lo, hi) = PEAK_RANGE;
        (self.peak < lo || self.peak > hi).then(|| {
            format!("warning: input peak {} is outside the recommended range [{lo}, {hi}]", self.peak)
        })
    }
}

impl std::fmt::Display for EncodeSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} frames, {} payload bytes, {:.0} bps",
            self.frames, self.payload_bytes, self.bits_per_second
        )
    }
}

/// High-pass cutoff applied before encoding at `sample_rate`.
pub fn highpass_cutoff(sample_rate: u32) -> f64 {
    if sample_rate == mclp::WB_RATE {
        50.0
    } else {
        300.0
    }
}

/// DC notch then high-pass, each optional.
pub fn prefilter(samples: &[f64], sample_rate: u32, notch: bool, highpass: bool) -> Result<Vec<f64>> {
    let mut x = samples.to_vec();
    if notch {
        x = dc_notch(&x, &NotchConfig::default(), &mut NotchState::default());
    }
    if highpass {
        let mut hp = Biquad::highpass(highpass_cutoff(sample_rate), sample_rate)?;
        x = hp.process(&x);
    }
    Ok(x)
}

/// Encodes a whole signal; the tail is zero padded to a whole frame.
pub fn encode(pcm: &Pcm, opts: &EncodeOptions) -> Result<(Vec<u8>, EncodeSummary)> {
    let mode = opts.mode;
    if pcm.sample_rate != mode.sample_rate() {
        return Err(CliError::InputFormat(format!(
            "mode {mode} needs {} Hz input, got {} Hz",
            mode.sample_rate(),
            pcm.sample_rate
        )));
    }
    let raw: Vec<f64> = pcm.samples.iter().map(|&s| f64::from(s)).collect();
    let peak = pcm.samples.iter().map(|&s| i32::from(s).abs()).max().unwrap_or(0);
    let mut x = prefilter(&raw, pcm.sample_rate, opts.notch, opts.highpass)?;
    let n = mode.frame_size();
    x.resize(x.len().div_ceil(n) * n, 0.0);

    let frames: Vec<Vec<u8>> = if mode.is_wideband() {
        let mut enc = WbEncoder::new(mode)?;
        x.chunks(n)
            .map(|f| Ok(pack_wb_frame(&enc.encode_frame(f)?, mode)))
            .collect::<mclp::Result<_>>()?
    } else {
        let mut enc = NbEncoder::new(mode)?;
        x.chunks(n)
            .map(|f| Ok(pack_frame(&enc.encode_frame(f)?, mode)))
            .collect::<mclp::Result<_>>()?
    };
    let payload_bytes = frames.iter().map(Vec::len).sum();
    let container = write_container(mode, &frames)?;
    let summary = EncodeSummary {
        frames: frames.len(),
        payload_bytes,
        bits_per_second: bits_per_second(payload_bytes, frames.len()),
        peak,
    };
    Ok((container, summary))
}

/// Payload rate of `frames` 20 ms frames totalling `bytes`.
pub fn bits_per_second(bytes: usize, frames: usize) -> f64 {
    if frames == 0 {
        0.0
    } else {
        (bytes * 8) as f64 / (frames as f64 * 0.02)
    }
}

/// Decodes a container to PCM, concealing lost (empty) frames.
///
/// A wideband container whose frames were all cut to their narrowband
/// section decodes to 8 kHz; otherwise wideband streams decode to 16 kHz with
/// a silent high band wherever it is missing.
pub fn decode(container: &[u8]) -> Result<Pcm> {
    let (header, frames) = read_container(container)?;
    let mode = header.mode;
    let corrupt = |i: usize, e: mclp::Error| CliError::Corrupt(format!("frame {i}: {e}"));
    let mut out = Vec::with_capacity(frames.len() * mode.frame_size());

    if !mode.is_wideband() {
        let mut dec = NbDecoder::new(mode)?;
        let expect = mode.table().frame_bytes();
        for (i, f) in frames.iter().enumerate() {
            let y = if f.is_empty() {
                dec.conceal_frame()
            } else if f.len() != expect {
                return Err(corrupt(
                    i,
                    mclp::Error::MalformedFrame(format!("{} bytes, expected {expect}", f.len())),
                ));
            } else {
                let p = unpack_frame(f, mode).map_err(|e| corrupt(i, e))?;
                dec.decode_frame(&p).map_err(|e| corrupt(i, e))?
            };
            out.extend(y.into_iter().map(to_i16));
        }
        return Ok(Pcm {
            sample_rate: mode.sample_rate(),
            samples: out,
        });
    }

    let nb_bytes = mode.table().nb_bytes();
    let narrow_only = frames.iter().any(|f| !f.is_empty())
        && frames.iter().all(|f| f.is_empty() || f.len() == nb_bytes);
    let mut dec = WbDecoder::new(mode)?;
    for (i, f) in frames.iter().enumerate() {
        let y = dec.decode_bytes(f).map_err(|e| corrupt(i, e))?;
        let band = if narrow_only { y.low_band } else { y.wide };
        out.extend(band.into_iter().map(to_i16));
    }
    Ok(Pcm {
        sample_rate: if narrow_only { mclp::NB_RATE } else { mode.sample_rate() },
        samples: out,
    })
}

/// Rewrites every wideband frame to carry only its narrowband section.
pub fn truncate_to_narrowband(container: &[u8]) -> Result<Vec<u8>> {
    let (header, frames) = read_container(container)?;
    let nb = header.mode.table().nb_bytes();
    let cut: Vec<Vec<u8>> = frames.iter().map(|f| f[..f.len().min(nb)].to_vec()).collect();
    Ok(write_container(header.mode, &cut)?)
}
