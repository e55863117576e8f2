//! Container statistics and the per-packet VoIP overhead projection.

use mclp::bitstream::read_container;
use mclp::Mode;

use crate::codec::bits_per_second;
use crate::error::Result;

/// IPv4 (20) + UDP (8) + RTP (12) header bytes per packet.
pub const PACKET_OVERHEAD_BYTES: usize = 40;
/// Packets per second at one 20 ms frame per packet.
pub const PACKETS_PER_SECOND: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct InfoReport {
    pub sample_rate: u32,
    pub mode: Mode,
    pub frames: usize,
    pub lost_frames: usize,
    pub payload_bytes: usize,
}

impl InfoReport {
    pub fn from_container(bytes: &[u8]) -> Result<Self> {
        let (header, frames) = read_container(bytes)?;
        Ok(Self {
            sample_rate: header.sample_rate,
            mode: header.mode,
            frames: frames.len(),
            lost_frames: frames.iter().filter(|f| f.is_empty()).count(),
            payload_bytes: frames.iter().map(Vec::len).sum(),
        })
    }

    pub fn payload_bps(&self) -> f64 {
        bits_per_second(self.payload_bytes, self.frames)
    }

    pub fn overhead_bps(&self) -> usize {
        PACKET_OVERHEAD_BYTES * 8 * PACKETS_PER_SECOND
    }

    pub fn total_bps(&self) -> f64 {
        self.payload_bps() + self.overhead_bps() as f64
    }
}

impl std::fmt::Display for InfoReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "sample rate: {} Hz", self.sample_rate)?;
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "frames: {} ({} lost)", self.frames, self.lost_frames)?;
        writeln!(f, "payload: {:.0} bps", self.payload_bps())?;
        writeln!(
            f,
            "overhead: {} bps ({PACKET_OVERHEAD_BYTES} bytes per packet, one 20 ms frame per packet)",
            self.overhead_bps()
        )?;
        write!(f, "total: {:.0} bps", self.total_bps())
    }
}
