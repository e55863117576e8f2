use std::f64::consts::PI;

use super::window::Window;
use crate::{Error, Result};

/// Direct-form short-term predictor `A(z) = 1 + sum a[i] z^-(i+1)`.
///
/// The prediction residual is `x[n] + sum a[i] x[n-1-i]`; synthesis runs the
/// excitation through `1/A(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpcCoefficients {
    a: Vec<f64>,
}

impl LpcCoefficients {
    pub fn new(a: Vec<f64>) -> Self {
        Self { a }
    }

    /// `A(z) = 1`.
    pub fn zeros(order: usize) -> Self {
        Self { a: vec![0.0; order] }
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// `a1..ap`, without the leading 1.
    pub fn as_slice(&self) -> &[f64] {
        &self.a
    }

    /// Reflection coefficients by step-down recursion, or `None` when some
    /// stage has `|k| >= 1` (the synthesis filter is unstable).
    pub fn reflection_coefficients(&self) -> Option<Vec<f64>> {
        let p = self.a.len();
        let mut cur = self.a.clone();
        let mut ks = vec![0.0; p];
        for i in (0..p).rev() {
            let k = -cur[i];
            if !(k.abs() < 1.0) {
                return None;
            }
            ks[i] = k;
            let denom = 1.0 - k * k;
            let prev: Vec<f64> = (0..i).map(|j| (cur[j] + k * cur[i - 1 - j]) / denom).collect();
            cur.truncate(i);
            cur.copy_from_slice(&prev);
        }
        Some(ks)
    }

    pub fn is_stable(&self) -> bool {
        self.reflection_coefficients().is_some()
    }
}

/// Conditioning applied to the raw autocorrelation before Levinson-Durbin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcfConditioning {
    /// Multiplier on `acf[0]` (white-noise correction).
    pub white_noise: f64,
    /// Bandwidth of the Gaussian lag window in Hz; `0` disables it.
    pub lag_window_hz: f64,
    pub sample_rate: f64,
}

impl AcfConditioning {
    /// 1.0001 white-noise correction and a 60 Hz Gaussian lag window.
    pub fn standard(sample_rate: u32) -> Self {
        Self {
            white_noise: 1.0001,
            lag_window_hz: 60.0,
            sample_rate: f64::from(sample_rate),
        }
    }

    pub fn none() -> Self {
        Self {
            white_noise: 1.0,
            lag_window_hz: 0.0,
            sample_rate: 1.0,
        }
    }

    /// Gaussian lag-window weight for lag `k`.
    pub fn lag_weight(&self, k: usize) -> f64 {
        if self.lag_window_hz == 0.0 {
            return 1.0;
        }
        let x = 2.0 * PI * self.lag_window_hz * k as f64 / self.sample_rate;
        (-0.5 * x * x).exp()
    }
}

/// Windowed, conditioned autocorrelation for lags `0..=max_lag`.
pub fn autocorrelate(
    frame: &[f64],
    window: Window,
    max_lag: usize,
    conditioning: &AcfConditioning,
) -> Result<Vec<f64>> {
    if frame.is_empty() {
        return Err(Error::InvalidInput("empty frame".into()));
    }
    if frame.len() < max_lag + 1 {
        return Err(Error::InvalidInput(format!(
            "frame of {} samples is too short for lag {}",
            frame.len(),
            max_lag
        )));
    }
    let w = window.coefficients(frame.len());
    let x: Vec<f64> = frame.iter().zip(&w).map(|(&s, &c)| s * c).collect();
    let mut acf: Vec<f64> = (0..=max_lag)
        .map(|k| {
            x[k..]
                .iter()
                .zip(&x)
                .fold(0.0, |acc, (&a, &b)| acc + a * b)
        })
        .collect();
    acf[0] *= conditioning.white_noise;
    for (k, r) in acf.iter_mut().enumerate().skip(1) {
        *r *= conditioning.lag_weight(k);
    }
    Ok(acf)
}

/// Output of [`levinson_durbin`].
#[derive(Debug, Clone, PartialEq)]
pub struct LpcAnalysis {
    pub lpc: LpcCoefficients,
    /// PARCOR coefficients; stage `i` sets `a[i] = -k[i]`.
    pub reflections: Vec<f64>,
    pub prediction_error: f64,
    /// Set when a stage produced `|k| >= 1` and the recursion was cut short.
    pub degenerate: bool,
}

const MAX_REFLECTION: f64 = 0.9999;

/// Levinson-Durbin recursion on `acf[0..=order]`.
///
/// A zero `acf[0]` yields `A(z) = 1` with zero error. A stage with `|k| >= 1`
/// is clamped to `|k| = 0.9999`, terminates the recursion and sets
/// [`LpcAnalysis::degenerate`].
pub fn levinson_durbin(acf: &[f64], order: usize) -> Result<LpcAnalysis> {
    if acf.len() < order + 1 {
        return Err(Error::InvalidInput(format!(
            "need {} autocorrelation lags, got {}",
            order + 1,
            acf.len()
        )));
    }
    if acf.iter().any(|r| !r.is_finite()) {
        return Err(Error::InvalidInput("non-finite autocorrelation".into()));
    }
    let mut a = vec![0.0; order];
    let mut ks = vec![0.0; order];
    if acf[0] <= 0.0 {
        return Ok(LpcAnalysis {
            lpc: LpcCoefficients::new(a),
            reflections: ks,
            prediction_error: 0.0,
            degenerate: false,
        });
    }
    let mut err = acf[0];
    let mut degenerate = false;
    for i in 0..order {
        let mut acc = acf[i + 1];
        for j in 0..i {
            acc += a[j] * acf[i - j];
        }
        let mut k = acc / err;
        if !(k.abs() < 1.0) || !k.is_finite() {
            k = MAX_REFLECTION.copysign(k);
            degenerate = true;
        }
        let prev = a.clone();
        for j in 0..i {
            a[j] = prev[j] - k * prev[i - 1 - j];
        }
        a[i] = -k;
        ks[i] = k;
        err *= 1.0 - k * k;
        if degenerate {
            break;
        }
    }
    Ok(LpcAnalysis {
        lpc: LpcCoefficients::new(a),
        reflections: ks,
        prediction_error: err,
        degenerate,
    })
}
