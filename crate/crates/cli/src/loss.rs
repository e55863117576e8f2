//! Seeded packet-loss simulation on containers.

use mclp::bitstream::{read_container, write_container};
use mclp::codebooks::XorShift64Star;

use crate::error::{CliError, Result};

/// Mixed into the user seed so the loss stream never coincides with the
/// codebook generator's stream.
const STREAM_KEY: u64 = 0x4C4F_5353_4D41_534B;

#[derive(Debug, Clone, PartialEq)]
pub struct LossReport {
    pub frames: usize,
    /// Indices of the frames marked lost by this run.
    pub lost: Vec<usize>,
}

impl LossReport {
    pub fn realized_rate(&self) -> f64 {
        if self.frames == 0 {
            0.0
        } else {
            self.lost.len() as f64 / self.frames as f64
        }
    }
}

impl std::fmt::Display for LossReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "lost {} of {} frames (realized rate {:.4})",
            self.lost.len(),
            self.frames,
            self.realized_rate()
        )?;
        let list: Vec<String> = self.lost.iter().map(usize::to_string).collect();
        write!(f, "lost frames: [{}]", list.join(", "))
    }
}

/// Independent per-frame loss decisions with probability `rate`.
pub fn loss_mask(frames: usize, rate: f64, seed: u64) -> Vec<bool> {
    let mut rng = XorShift64Star::new(seed ^ STREAM_KEY);
    (0..frames).map(|_| rng.next_unit() < rate).collect()
}

/// Replaces each frame by an empty (lost) entry with probability `rate`.
pub fn simulate_loss(container: &[u8], rate: f64, seed: u64) -> Result<(Vec<u8>, LossReport)> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(CliError::Usage(format!("loss rate {rate} is outside [0, 1]")));
    }
    let (header, mut frames) = read_container(container)?;
    let mask = loss_mask(frames.len(), rate, seed);
    let mut lost = Vec::new();
    for (i, (f, &drop)) in frames.iter_mut().zip(&mask).enumerate() {
        if drop {
            f.clear();
            lost.push(i);
        }
    }
    let out = write_container(header.mode, &frames)?;
    Ok((
        out,
        LossReport {
            frames: frames.len(),
            lost,
        },
    ))
}
