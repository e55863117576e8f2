//! Input conditioning: DC removal and low-frequency high-pass filtering.

use std::f64::consts::PI;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NotchConfig {
    alpha: f64,
}

impl NotchConfig {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidInput(format!("notch radius {alpha} not in (0, 1)")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Default for NotchConfig {
    fn default() -> Self {
        Self { alpha: 0.98 }
    }
}

/// Running DC estimate of the notch.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NotchState {
    pub mem: f64,
}

/// DC notch: `m[n] = alpha m[n-1] + (1 - alpha) x[n]`, `y[n] = x[n] - m[n]`.
///
/// The transfer function is `alpha (1 - z^-1) / (1 - alpha z^-1)`, with a
/// zero exactly at DC.
pub fn dc_notch(input: &[f64], cfg: &NotchConfig, state: &mut NotchState) -> Vec<f64> {
    let alpha = cfg.alpha;
    input
        .iter()
        .map(|&x| {
            state.mem = alpha * state.mem + (1.0 - alpha) * x;
            x - state.mem
        })
        .collect()
}

/// Second-order section in direct form I.
#[derive(Debug, Clone, PartialEq)]
pub struct Biquad {
    b: [f64; 3],
    a: [f64; 2],
    x_mem: [f64; 2],
    y_mem: [f64; 2],
}

impl Biquad {
    /// Butterworth-style (Q = 0.707) high-pass from the bilinear transform.
    pub fn highpass(cutoff_hz: f64, sample_rate: u32) -> Result<Self> {
        let fs = f64::from(sample_rate);
        if !(cutoff_hz > 0.0 && cutoff_hz < fs / 2.0) {
            return Err(Error::InvalidInput(format!(
                "high-pass cutoff {cutoff_hz} Hz outside (0, {}) Hz",
                fs / 2.0
            )));
        }
        let q = 0.707;
        let w0 = 2.0 * PI * cutoff_hz / fs;
        let (sin, cos) = w0.sin_cos();
        let alpha = sin / (2.0 * q);
        let a0 = 1.0 + alpha;
        Ok(Self {
            b: [
                (1.0 + cos) / 2.0 / a0,
                -(1.0 + cos) / a0,
                (1.0 + cos) / 2.0 / a0,
            ],
            a: [-2.0 * cos / a0, (1.0 - alpha) / a0],
            x_mem: [0.0; 2],
            y_mem: [0.0; 2],
        })
    }

    pub fn reset(&mut self) {
        self.x_mem = [0.0; 2];
        self.y_mem = [0.0; 2];
    }

    /// Complex gain magnitude at normalized angular frequency `w`.
    pub fn gain_at(&self, w: f64) -> f64 {
        let (c1, s1) = (w.cos(), w.sin());
        let (c2, s2) = ((2.0 * w).cos(), (2.0 * w).sin());
        let num_re = self.b[0] + self.b[1] * c1 + self.b[2] * c2;
        let num_im = -self.b[1] * s1 - self.b[2] * s2;
        let den_re = 1.0 + self.a[0] * c1 + self.a[1] * c2;
        let den_im = -self.a[0] * s1 - self.a[1] * s2;
        (num_re.hypot(num_im)) / (den_re.hypot(den_im))
    }

    pub fn process(&mut self, input: &[f64]) -> Vec<f64> {
        input
            .iter()
            .map(|&x| {
                let y = self.b[0] * x + self.b[1] * self.x_mem[0] + self.b[2] * self.x_mem[1]
                    - self.a[0] * self.y_mem[0]
                    - self.a[1] * self.y_mem[1];
                self.x_mem = [x, self.x_mem[0]];
                self.y_mem = [y, self.y_mem[0]];
                y
            })
            .collect()
    }
}

/// Runs `input` through a configured high-pass section.
pub fn highpass(input: &[f64], filter: &mut Biquad) -> Vec<f64> {
    filter.process(input)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn notch_blocks_constant_input() {
        let x = vec![1000.0; 2000];
        let y = dc_notch(&x, &NotchConfig::default(), &mut NotchState::default());
        assert!(y[1999].abs() < 10.0);
        // Oracle: the recursion gives 1000 * alpha^(n+1) exactly.
        for n in [0usize, 10, 100, 500] {
            let expect = 1000.0 * 0.98f64.powi(n as i32 + 1);
            assert!((y[n] - expect).abs() < 1e-9 * 1000.0, "n={n}");
        }
    }

    #[test]
    fn notch_decays_geometrically() {
        let y = dc_notch(&[500.0; 300], &NotchConfig::default(), &mut NotchState::default());
        for n in 1..300 {
            assert!((y[n] / y[n - 1] - 0.98).abs() < 1e-9);
        }
    }

    #[test]
    fn notch_zero_in_zero_out() {
        let y = dc_notch(&[0.0; 50], &NotchConfig::default(), &mut NotchState::default());
        assert!(y.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn notch_nyquist_gain() {
        // alpha (1 - z^-1)/(1 - alpha z^-1) at z = -1 is 2 alpha / (1 + alpha).
        let x: Vec<f64> = (0..4000).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let y = dc_notch(&x, &NotchConfig::default(), &mut NotchState::default());
        let expect = 2.0 * 0.98 / 1.98;
        assert!((y[3999].abs() - expect).abs() < 1e-9);
    }

    #[test]
    fn notch_rejects_bad_alpha() {
        assert!(NotchConfig::new(1.0).is_err());
        assert!(NotchConfig::new(0.0).is_err());
    }

    #[test]
    fn highpass_gains() {
        for (fc, fs) in [(300.0, 8000), (50.0, 16000)] {
            let f = Biquad::highpass(fc, fs).unwrap();
            assert!(f.gain_at(0.0) < 1e-12);
            let nyq_db = 20.0 * f.gain_at(PI).log10();
            assert!(nyq_db.abs() < 1.0);
            // Butterworth: -3 dB at the cutoff.
            let cut_db = 20.0 * f.gain_at(2.0 * PI * fc / f64::from(fs)).log10();
            assert!((cut_db + 3.0).abs() < 0.1, "{cut_db}");
        }
    }

    #[test]
    fn highpass_blocks_dc_and_passes_zero() {
        let mut f = Biquad::highpass(300.0, 8000).unwrap();
        let y = highpass(&[1000.0; 4000], &mut f);
        assert!(y[3999].abs() < 1e-6);
        f.reset();
        assert!(highpass(&[0.0; 100], &mut f).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn highpass_rejects_bad_cutoff() {
        assert!(Biquad::highpass(4000.0, 8000).is_err());
        assert!(Biquad::highpass(0.0, 8000).is_err());
    }

    /// Energy in DFT bins `0..=max_bin`, by direct summation.
    fn band_energy(x: &[f64], max_bin: usize) -> f64 {
        let n = x.len() as f64;
        (0..=max_bin)
            .map(|k| {
                let (mut re, mut im) = (0.0, 0.0);
                for (t, &v) in x.iter().enumerate() {
                    let ph = 2.0 * PI * k as f64 * t as f64 / n;
                    re += v * ph.cos();
                    im -= v * ph.sin();
                }
                re * re + im * im
            })
            .sum()
    }

    #[test]
    fn highpass_attenuates_low_band_of_white_noise() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x: Vec<f64> = (0..4096).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut f = Biquad::highpass(300.0, 8000).unwrap();
        let y = highpass(&x, &mut f);
        // 150 Hz at 8 kHz over 4096 points is bin 76.8.
        let max_bin = 76;
        let atten_db =
            10.0 * (band_energy(&x, max_bin) / band_energy(&y, max_bin)).log10();
        assert!(atten_db >= 12.0, "{atten_db}");
    }
}
