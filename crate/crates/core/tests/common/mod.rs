#![allow(dead_code)]

use std::f64::consts::PI;

/// Stable 10th-order all-pole filter with five formant-like resonances at
/// 8 kHz, as `[1, a1, .., a10]`.
pub fn formant_filter() -> Vec<f64> {
    let mut a = vec![1.0];
    for (f, r) in [(500.0, 0.95), (1500.0, 0.93), (2500.0, 0.9), (3300.0, 0.88), (3800.0, 0.85)] {
        let w = 2.0 * PI * f / 8000.0;
        let sec = [1.0, -2.0 * r * w.cos(), r * r];
        let mut next = vec![0.0; a.len() + 2];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in sec.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        a = next;
    }
    a
}

/// Pulse train with `period` through [`formant_filter`], scaled to `peak`.
pub fn voiced(len: usize, period: usize, peak: f64) -> Vec<f64> {
    let a = formant_filter();
    let mut x = vec![0.0; len];
    for n in 0..len {
        let mut y = if n % period == 0 { 1.0 } else { 0.0 };
        for k in 1..a.len() {
            if n >= k {
                y -= a[k] * x[n - k];
            }
        }
        x[n] = y;
    }
    let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    x.iter().map(|v| v * peak / m).collect()
}

pub fn snr_db(reference: &[f64], test: &[f64]) -> f64 {
    let s: f64 = reference.iter().map(|v| v * v).sum();
    let e: f64 = reference.iter().zip(test).map(|(a, b)| (a - b) * (a - b)).sum();
    10.0 * (s / e).log10()
}

/// Speech-like test signal: 300 ms voiced syllables with a raised-cosine
/// envelope and drifting pitch, separated by 100 ms of silence.
pub fn syllables(len: usize, peak: f64) -> Vec<f64> {
    let a = formant_filter();
    let mut x = vec![0.0; len];
    let mut next_pulse = 0.0;
    for n in 0..len {
        let pos = n % 3200;
        let voiced = pos < 2400;
        let mut y = 0.0;
        if voiced && n as f64 >= next_pulse {
            let syllable = (n / 3200) as f64;
            let period = 55.0 + 10.0 * (syllable * 1.3).sin() + 8.0 * pos as f64 / 2400.0;
            next_pulse = n as f64 + period;
            y = 1.0 - (2.0 * PI * pos as f64 / 2400.0).cos();
        }
        for k in 1..a.len() {
            if n >= k {
                y -= a[k] * x[n - k];
            }
        }
        x[n] = y;
    }
    let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    x.iter().map(|v| v * peak / m).collect()
}
