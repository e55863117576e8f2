//! File container: a 14-byte header followed by length-prefixed frames.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "MCLP"
//! 4       1     version (1)
//! 5       4     sample rate, u32 little-endian
//! 9       1     mode id
//! 10      4     frame count, u32 little-endian
//! 14      ...   frames: u16 little-endian byte length, then the bytes
//! ```
//!
//! A zero length marks a lost frame. A wideband frame may carry only its
//! narrowband section.

use crate::codebooks::Mode;
use crate::{Error, Result};

pub const MAGIC: [u8; 4] = *b"MCLP";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContainerHeader {
    pub version: u8,
    pub sample_rate: u32,
    pub mode: Mode,
    pub frame_count: u32,
}

impl ContainerHeader {
    pub fn new(mode: Mode, frame_count: u32) -> Self {
        Self {
            version: VERSION,
            sample_rate: mode.sample_rate(),
            mode,
            frame_count,
        }
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut b = [0u8; HEADER_LEN];
        b[..4].copy_from_slice(&MAGIC);
        b[4] = self.version;
        b[5..9].copy_from_slice(&self.sample_rate.to_le_bytes());
        b[9] = self.mode.id();
        b[10..14].copy_from_slice(&self.frame_count.to_le_bytes());
        b
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 4 || bytes[..4] != MAGIC {
            return Err(Error::NotAContainer);
        }
        if bytes.len() < HEADER_LEN {
            return Err(Error::TruncatedContainer {
                frame_index: 0,
                reason: "header".into(),
            });
        }
        if bytes[4] != VERSION {
            return Err(Error::UnsupportedVersion(bytes[4]));
        }
        let sample_rate = u32::from_le_bytes(bytes[5..9].try_into().expect("4 bytes"));
        let mode = Mode::from_id(bytes[9])?;
        if sample_rate != mode.sample_rate() {
            return Err(Error::InvalidInput(format!(
                "sample rate {sample_rate} does not match mode {mode}"
            )));
        }
        Ok(Self {
            version: VERSION,
            sample_rate,
            mode,
            frame_count: u32::from_le_bytes(bytes[10..14].try_into().expect("4 bytes")),
        })
    }
}

/// Serializes a container; the header's frame count is taken from `frames`.
pub fn write_container(mode: Mode, frames: &[Vec<u8>]) -> Result<Vec<u8>> {
    let count = u32::try_from(frames.len())
        .map_err(|_| Error::InvalidInput("too many frames".into()))?;
    let mut out = ContainerHeader::new(mode, count).to_bytes().to_vec();
    for (i, f) in frames.iter().enumerate() {
        let len = u16::try_from(f.len())
            .map_err(|_| Error::InvalidInput(format!("frame {i} longer than 65535 bytes")))?;
        out.extend_from_slice(&len.to_le_bytes());
        out.extend_from_slice(f);
    }
    Ok(out)
}

/// Parses a container into its header and frame payloads.
pub fn read_container(bytes: &[u8]) -> Result<(ContainerHeader, Vec<Vec<u8>>)> {
    let header = ContainerHeader::parse(bytes)?;
    let mut pos = HEADER_LEN;
    let mut frames = Vec::new();
    for i in 0..header.frame_count as usize {
        let truncated = |reason: &str| Error::TruncatedContainer {
            frame_index: i,
            reason: reason.into(),
        };
        let len_bytes = bytes.get(pos..pos + 2).ok_or_else(|| truncated("length prefix"))?;
        let len = usize::from(u16::from_le_bytes([len_bytes[0], len_bytes[1]]));
        pos += 2;
        let body = bytes.get(pos..pos + len).ok_or_else(|| truncated("frame body"))?;
        frames.push(body.to_vec());
        pos += len;
    }
    if pos != bytes.len() {
        return Err(Error::TruncatedContainer {
            frame_index: frames.len(),
            reason: format!("{} trailing bytes after the last frame", bytes.len() - pos),
        });
    }
    Ok((header, frames))
}
