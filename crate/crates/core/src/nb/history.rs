/// Past excitation samples kept for adaptive-codebook lookup.
pub const HISTORY_LEN: usize = 192;

/// Rolling buffer of committed excitation `e[n]`, oldest first.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationHistory {
    buf: Vec<f64>,
}

impl Default for ExcitationHistory {
    fn default() -> Self {
        Self::new()
    }
}

impl ExcitationHistory {
    pub fn new() -> Self {
        Self {
            buf: vec![0.0; HISTORY_LEN],
        }
    }

    /// Sample `lag` steps before the next uncommitted sample (`lag >= 1`).
    pub fn past(&self, lag: usize) -> f64 {
        debug_assert!(lag >= 1 && lag <= HISTORY_LEN);
        self.buf[HISTORY_LEN - lag]
    }

    /// Appends a sub-frame of excitation, discarding the oldest samples.
    pub fn commit(&mut self, samples: &[f64]) {
        let n = samples.len().min(HISTORY_LEN);
        self.buf.copy_within(n.., 0);
        self.buf[HISTORY_LEN - n..].copy_from_slice(&samples[samples.len() - n..]);
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.buf
    }

    pub fn reset(&mut self) {
        self.buf.iter_mut().for_each(|v| *v = 0.0);
    }
}
