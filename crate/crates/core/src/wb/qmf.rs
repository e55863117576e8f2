//! Two-band quadrature mirror filterbank.

use std::f64::consts::PI;

use crate::dsp::hamming;
use crate::{Error, Result};

/// Prototype length.
pub const QMF_TAPS: usize = 64;
/// Analysis plus synthesis delay in full-rate samples.
pub const QMF_DELAY: usize = QMF_TAPS - 1;

/// Hamming-windowed sinc low-pass of [`QMF_TAPS`] taps with unit DC gain.
///
/// The cutoff is placed slightly above `pi/2` so that the power response at
/// `pi/2` is exactly one half; with that crossover the two bands are power
/// complementary and the bank reconstructs to well above 40 dB.
pub fn qmf_prototype() -> Vec<f64> {
    let win = hamming(QMF_TAPS);
    let design = |wc: f64| -> Vec<f64> {
        let c = (QMF_TAPS - 1) as f64 / 2.0;
        let h: Vec<f64> = (0..QMF_TAPS)
            .map(|n| {
                let t = n as f64 - c;
                (wc * t).sin() / (PI * t) * win[n]
            })
            .collect();
        let dc: f64 = h.iter().sum();
        h.into_iter().map(|v| v / dc).collect()
    };
    let half_power = |h: &[f64]| -> f64 {
        let (re, im) = h.iter().enumerate().fold((0.0, 0.0), |(re, im), (n, &v)| {
            let w = PI / 2.0 * n as f64;
            (re + v * w.cos(), im - v * w.sin())
        });
        re * re + im * im - 0.5
    };
    let (mut lo, mut hi) = (0.45 * PI, 0.55 * PI);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if half_power(&design(mid)) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    design(0.5 * (lo + hi))
}

/// Streaming analysis/synthesis filterbank.
///
/// The high band is taken with the prototype modulated by `(-1)^k`, so after
/// decimation its spectrum is mirrored (high frequencies land near DC).
#[derive(Debug, Clone, PartialEq)]
pub struct QmfBank {
    h: Vec<f64>,
    analysis_mem: Vec<f64>,
    synth_low_mem: Vec<f64>,
    synth_high_mem: Vec<f64>,
}

impl Default for QmfBank {
    fn default() -> Self {
        Self::new()
    }
}

impl QmfBank {
    pub fn new() -> Self {
        Self {
            h: qmf_prototype(),
            analysis_mem: vec![0.0; QMF_TAPS - 1],
            synth_low_mem: vec![0.0; QMF_TAPS - 1],
            synth_high_mem: vec![0.0; QMF_TAPS - 1],
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.h
    }

    pub fn reset(&mut self) {
        *self = Self::new();
    }

    /// Splits an even number of samples into low and (mirrored) high bands of
    /// half the length each.
    pub fn analysis(&mut self, frame: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        if frame.len() % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "QMF analysis needs an even length, got {}",
                frame.len()
            )));
        }
        let mem = self.analysis_mem.len();
        let mut x = std::mem::take(&mut self.analysis_mem);
        x.extend_from_slice(frame);
        let half = frame.len() / 2;
        let mut low = Vec::with_capacity(half);
        let mut high = Vec::with_capacity(half);
        for m in 0..half {
            let n = mem + 2 * m;
            let (mut l, mut hgh) = (0.0, 0.0);
            for (k, &c) in self.h.iter().enumerate() {
                let v = c * x[n - k];
                l += v;
                if k % 2 == 0 {
                    hgh += v;
                } else {
                    hgh -= v;
                }
            }
            low.push(l);
            high.push(hgh);
        }
        self.analysis_mem = x[x.len() - mem..].to_vec();
        Ok((low, high))
    }

    /// Merges two equal-length bands back to the full rate.
    pub fn synthesis(&mut self, low: &[f64], high: &[f64]) -> Result<Vec<f64>> {
        if low.len() != high.len() {
            return Err(Error::InvalidInput(format!(
                "QMF synthesis band lengths differ: {} vs {}",
                low.len(),
                high.len()
            )));
        }
        let up = |mem: &mut Vec<f64>, band: &[f64]| -> Vec<f64> {
            let keep = mem.len();
            let mut u = std::mem::take(mem);
            for &v in band {
                u.push(v);
                u.push(0.0);
            }
            *mem = u[u.len() - keep..].to_vec();
            u
        };
        let ul = up(&mut self.synth_low_mem, low);
        let uh = up(&mut self.synth_high_mem, high);
        let mem = QMF_TAPS - 1;
        let out = (0..2 * low.len())
            .map(|i| {
                let n = mem + i;
                let mut acc = 0.0;
                for (k, &c) in self.h.iter().enumerate() {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    acc += c * (ul[n - k] - sign * uh[n - k]);
                }
                2.0 * acc
            })
            .collect();
        Ok(out)
    }
}
