//! Wideband (16 kHz) layer: a two-band QMF split, the narrowband codec on the
//! low band and a cheaper high-band coder whose bits follow the narrowband
//! section of each frame, so a frame cut after that section is still a valid
//! narrowband frame.

mod decoder;
mod encoder;
mod params;
mod qmf;

pub use decoder::{fold, WbDecoder, WbOutput};
pub use encoder::WbEncoder;
pub use params::WbFrameParams;
pub use qmf::{qmf_prototype, QmfBank, QMF_DELAY, QMF_TAPS};
