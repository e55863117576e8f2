//! Library side of the `mclp` command-line tool: WAV I/O, the encode/decode
//! pipelines, packet-loss simulation and container statistics.

pub mod codec;
mod error;
pub mod info;
pub mod loss;
pub mod wav;

pub use codec::{decode, encode, truncate_to_narrowband, EncodeOptions, EncodeSummary};
pub use error::{CliError, Result};
pub use info::InfoReport;
pub use loss::{simulate_loss, LossReport};
pub use wav::{read_wav, write_wav, Pcm};
