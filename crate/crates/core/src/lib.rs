//! `mclp` is a CELP speech codec: narrowband analysis-by-synthesis coding with
//! a 3-tap adaptive codebook and sub-vector quantized ternary innovation, an
//! embedded two-band wideband layer, signal pre-conditioning filters and a
//! small length-prefixed container format.
//!
//! The crate is organised bottom-up:
//!
//! * [`dsp`]: windowing, autocorrelation, Levinson-Durbin, LPC/LSP conversion,
//!   the filters used by the codec and the input pre-conditioning filters.
//! * [`codebooks`]: mode tables and every quantizer/codebook.
//! * [`nb`]: the 8 kHz encoder and decoder (with packet-loss concealment).
//! * [`wb`]: the 16 kHz sub-band layer built on top of [`nb`].
//! * [`bitstream`]: bit packing of frame parameters and the file container.
//!
//! ```
//! use mclp::{Mode, NbDecoder, NbEncoder};
//!
//! let mut enc = NbEncoder::new(Mode::NbHigh).unwrap();
//! let mut dec = NbDecoder::new(Mode::NbHigh).unwrap();
//! let frame = vec![0.0; 160];
//! let params = enc.encode_frame(&frame).unwrap();
//! let bytes = mclp::bitstream::pack_frame(&params, Mode::NbHigh);
//! assert_eq!(bytes.len(), 46);
//! let decoded = dec.decode_frame(&params).unwrap();
//! assert!(decoded.iter().all(|&x| x == 0.0));
//! ```

pub mod bitstream;
pub mod codebooks;
pub mod dsp;
mod error;
pub mod nb;
pub mod wb;

pub use codebooks::{Mode, ModeTable};
pub use error::{Error, Result};
pub use nb::{FrameParams, NbDecoder, NbEncoder};
pub use wb::{WbDecoder, WbEncoder, WbFrameParams};

/// Narrowband sample rate.
pub const NB_RATE: u32 = 8000;
/// Wideband sample rate.
pub const WB_RATE: u32 = 16000;
/// Samples per 20 ms frame at 8 kHz.
pub const NB_FRAME_SIZE: usize = 160;
/// Samples per 20 ms frame at 16 kHz.
pub const WB_FRAME_SIZE: usize = 320;
/// Sub-frames per frame.
pub const SUBFRAMES: usize = 4;
/// Samples per sub-frame at 8 kHz.
pub const SUBFRAME_SIZE: usize = 40;
/// Encoder look-ahead in samples at 8 kHz (10 ms).
pub const LOOKAHEAD: usize = 80;
/// Short-term predictor order for the narrowband (and low) band.
pub const LPC_ORDER: usize = 10;
/// Short-term predictor order for the high band.
pub const HB_LPC_ORDER: usize = 8;
