//! Analysis-by-synthesis searches in the perceptually weighted domain.
//!
//! Both searches work on the impulse response `h` of the weighted synthesis
//! filter `A(z/g1) / (A_q(z) A(z/g2))` truncated to the sub-frame, with the
//! filter's zero-input response already removed from the target.

use std::ops::RangeInclusive;

use super::history::ExcitationHistory;
use super::{synthesize, EXCITATION_LIMIT};
use crate::codebooks::{InnovationCodebook, PitchParams, PITCH_GAIN_TABLE};
use crate::dsp::{all_pole_in_place, all_zero_in_place, dot, energy, LpcCoefficients};

/// First `out_len` samples of `v * h` (both starting at time zero).
pub fn convolve(v: &[f64], h: &[f64], out_len: usize) -> Vec<f64> {
    (0..out_len)
        .map(|n| {
            let hi = n.min(v.len().saturating_sub(1));
            (0..=hi)
                .filter(|&k| k < v.len() && n - k < h.len())
                .fold(0.0, |acc, k| acc + v[k] * h[n - k])
        })
        .collect()
}

fn backward_filter(target: &[f64], h: &[f64], len: usize) -> Vec<f64> {
    (0..len)
        .map(|k| {
            (k..target.len()).fold(0.0, |acc, n| acc + target[n] * h[n - k])
        })
        .collect()
}

/// Impulse response of `A(z/g1) / (A_q(z) A(z/g2))`.
pub fn impulse_response(
    synthesis: &LpcCoefficients,
    numerator: &LpcCoefficients,
    denominator: &LpcCoefficients,
    len: usize,
) -> Vec<f64> {
    let mut h = vec![0.0; len];
    if len > 0 {
        h[0] = 1.0;
    }
    all_pole_in_place(&mut h, synthesis.as_slice(), &mut vec![0.0; synthesis.order()]);
    all_zero_in_place(&mut h, numerator.as_slice(), &mut vec![0.0; numerator.order()]);
    all_pole_in_place(&mut h, denominator.as_slice(), &mut vec![0.0; denominator.order()]);
    h
}

/// Squared error between `target` and the sum of `contributions`.
pub fn weighted_error(target: &[f64], contributions: &[&[f64]]) -> f64 {
    (0..target.len()).fold(0.0, |acc, n| {
        let mut d = target[n];
        for c in contributions {
            d -= c[n];
        }
        acc + d * d
    })
}

/// The three adaptive-codebook vectors for `period`, at lags `T+1`, `T` and
/// `T-1` (matching gains `g0`, `g1`, `g2`).
///
/// Samples that would fall inside the current sub-frame are taken from the
/// committed history repeated with period `T`, so every read touches committed
/// samples only.
pub fn adaptive_vectors(history: &ExcitationHistory, period: usize, len: usize) -> [Vec<f64>; 3] {
    let mut ext = vec![0.0; len];
    for q in 0..len {
        ext[q] = if q < period {
            history.past(period - q)
        } else {
            ext[q - period]
        };
    }
    let tap = |lag: usize| -> Vec<f64> {
        (0..len)
            .map(|m| if m < lag { history.past(lag - m) } else { ext[m - lag] })
            .collect()
    };
    [tap(period + 1), tap(period), tap(period - 1)]
}

/// Adaptive-codebook excitation `g0 v0 + g1 v1 + g2 v2`.
pub(crate) fn adaptive_excitation(history: &ExcitationHistory, pitch: PitchParams, len: usize) -> Vec<f64> {
    let v = adaptive_vectors(history, pitch.period, len);
    let g = pitch.gains();
    (0..len)
        .map(|m| g[0] * v[0][m] + g[1] * v[1][m] + g[2] * v[2][m])
        .collect()
}

/// Full sub-frame excitation: adaptive part plus `gain` times the
/// concatenated innovation, saturated at the excitation limit. Encoder and
/// decoder both build the excitation through this function.
pub(crate) fn build_excitation(
    history: &ExcitationHistory,
    pitch: Option<PitchParams>,
    gain: f64,
    innovation: &[usize],
    codebook: &InnovationCodebook,
    len: usize,
) -> Vec<f64> {
    let mut e = match pitch {
        Some(p) => adaptive_excitation(history, p, len),
        None => vec![0.0; len],
    };
    let sv = codebook.subvector_len();
    for (pos, &idx) in innovation.iter().enumerate() {
        for (k, &c) in codebook.entry(idx).iter().enumerate() {
            e[pos * sv + k] += gain * f64::from(c);
        }
    }
    for v in e.iter_mut() {
        *v = v.clamp(-EXCITATION_LIMIT, EXCITATION_LIMIT);
    }
    e
}

/// Exhaustive joint search over pitch period and 3-tap gain entry.
///
/// Minimizes `|target - H (g0 v0 + g1 v1 + g2 v2)|^2`; correlations with the
/// target are taken against the backward-filtered target. Ties go to the
/// smallest period, then the smallest gain index.
pub fn adaptive_search(
    target: &[f64],
    history: &ExcitationHistory,
    h: &[f64],
    range: RangeInclusive<usize>,
) -> PitchParams {
    let len = target.len();
    let tt = energy(target);
    let tb = backward_filter(target, h, len);
    let mut best = PitchParams {
        period: *range.start(),
        gain_index: 0,
    };
    let mut best_err = f64::INFINITY;
    for period in range {
        let v = adaptive_vectors(history, period, len);
        let y: Vec<Vec<f64>> = v.iter().map(|vk| convolve(vk, h, len)).collect();
        let c = [dot(&tb, &v[0]), dot(&tb, &v[1]), dot(&tb, &v[2])];
        let mut r = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                r[i][j] = dot(&y[i], &y[j]);
                r[j][i] = r[i][j];
            }
        }
        for (gi, g) in PITCH_GAIN_TABLE.iter().enumerate() {
            let mut err = tt;
            for i in 0..3 {
                err -= 2.0 * g[i] * c[i];
                for j in 0..3 {
                    err += g[i] * g[j] * r[i][j];
                }
            }
            if err < best_err {
                best_err = err;
                best = PitchParams {
                    period,
                    gain_index: gi,
                };
            }
        }
    }
    best
}

/// Sequential sub-vector search with a fixed gain.
///
/// For each sub-vector position in time order, picks the entry minimizing the
/// error over the whole remaining sub-frame given the filtered contributions
/// of the entries already chosen. Ties go to the lowest index.
pub fn fixed_search(target: &[f64], codebook: &InnovationCodebook, gain: f64, h: &[f64]) -> Vec<usize> {
    let len = target.len();
    let sv = codebook.subvector_len();
    let mut residual = target.to_vec();
    let mut chosen = Vec::with_capacity(len / sv);
    let mut entry = vec![0.0; sv];
    for pos in 0..len / sv {
        let off = pos * sv;
        let tail = len - off;
        let back = backward_filter(&residual[off..], h, sv);
        let mut best = 0;
        let mut best_err = f64::INFINITY;
        let mut best_y = Vec::new();
        for j in 0..codebook.len() {
            for (e, &c) in entry.iter_mut().zip(codebook.entry(j)) {
                *e = f64::from(c);
            }
            let y = convolve(&entry, h, tail);
            let err = -2.0 * gain * dot(&entry, &back) + gain * gain * energy(&y);
            if err < best_err {
                best_err = err;
                best = j;
                best_y = y;
            }
        }
        for (r, y) in residual[off..].iter_mut().zip(&best_y) {
            *r -= gain * y;
        }
        chosen.push(best);
    }
    chosen
}

/// Delay lines of the weighted synthesis cascade
/// `1/A_q(z) -> A(z/g1) -> 1/A(z/g2)`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct WeightedSynthesis {
    synthesis: Vec<f64>,
    numerator: Vec<f64>,
    denominator: Vec<f64>,
}

impl WeightedSynthesis {
    pub(crate) fn new(order: usize) -> Self {
        Self {
            synthesis: vec![0.0; order],
            numerator: vec![0.0; order],
            denominator: vec![0.0; order],
        }
    }

    fn run(
        synthesis: &mut [f64],
        numerator: &mut [f64],
        denominator: &mut [f64],
        buf: &mut [f64],
        filters: [&LpcCoefficients; 3],
    ) {
        synthesize(buf, filters[0].as_slice(), synthesis);
        all_zero_in_place(buf, filters[1].as_slice(), numerator);
        all_pole_in_place(buf, filters[2].as_slice(), denominator);
    }

    /// Zero-input response over `len` samples; the state is not modified.
    pub(crate) fn zero_input_response(&self, len: usize, filters: [&LpcCoefficients; 3]) -> Vec<f64> {
        let mut scratch = self.clone();
        let mut buf = vec![0.0; len];
        Self::run(
            &mut scratch.synthesis,
            &mut scratch.numerator,
            &mut scratch.denominator,
            &mut buf,
            filters,
        );
        buf
    }

    /// Advances the state with the chosen excitation.
    pub(crate) fn update(&mut self, excitation: &[f64], filters: [&LpcCoefficients; 3]) {
        let mut buf = excitation.to_vec();
        Self::run(
            &mut self.synthesis,
            &mut self.numerator,
            &mut self.denominator,
            &mut buf,
            filters,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebooks::{build_innovation_codebook, quantize_pitch_gains, PITCH_MAX, PITCH_MIN};
    use crate::dsp::bandwidth_expand;
    use crate::Mode;

    fn filters() -> (LpcCoefficients, LpcCoefficients, LpcCoefficients) {
        let a = LpcCoefficients::new(vec![-0.9, 0.4, -0.1, 0.05, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let num = bandwidth_expand(&a, 0.9);
        let den = bandwidth_expand(&a, 0.6);
        (a, num, den)
    }

    #[test]
    fn convolution_matches_filtering() {
        let (a, num, den) = filters();
        let h = impulse_response(&a, &num, &den, 40);
        let v: Vec<f64> = (0..40).map(|n| ((n * 7) % 5) as f64 - 2.0).collect();
        let mut direct = v.clone();
        let ws = WeightedSynthesis::new(10);
        let mut s = ws.clone();
        WeightedSynthesis::run(&mut s.synthesis, &mut s.numerator, &mut s.denominator, &mut direct, [&a, &num, &den]);
        let conv = convolve(&v, &h, 40);
        for (x, y) in conv.iter().zip(&direct) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn periodic_history_finds_its_period() {
        let (a, num, den) = filters();
        let h = impulse_response(&a, &num, &den, 40);
        let pulse = |t: usize| if t % 50 == 0 { 1000.0 } else { 0.0 };
        let mut hist = ExcitationHistory::new();
        let past: Vec<f64> = (0..192).map(pulse).collect();
        hist.commit(&past);
        let next: Vec<f64> = (192..232).map(pulse).collect();
        let target = convolve(&next, &h, 40);
        let p = adaptive_search(&target, &hist, &h, PITCH_MIN..=PITCH_MAX);
        assert_eq!(p.period, 50);
        let y = convolve(&adaptive_excitation(&hist, p, 40), &h, 40);
        assert!(weighted_error(&target, &[&y]) < 0.05 * energy(&target));
    }

    #[test]
    fn zero_history_and_zero_target() {
        let (a, num, den) = filters();
        let h = impulse_response(&a, &num, &den, 40);
        let hist = ExcitationHistory::new();
        let target: Vec<f64> = (0..40).map(|n| (n as f64).sin()).collect();
        let p = adaptive_search(&target, &hist, &h, PITCH_MIN..=PITCH_MAX);
        assert_eq!(p.period, PITCH_MIN);
        assert_eq!(p.gain_index, quantize_pitch_gains([0.0; 3]));

        let mut hist = ExcitationHistory::new();
        hist.commit(&(0..192).map(|n| (n as f64 * 0.3).cos()).collect::<Vec<_>>());
        let p = adaptive_search(&[0.0; 40], &hist, &h, PITCH_MIN..=PITCH_MAX);
        assert_eq!(p.gain_index, 0);
    }

    #[test]
    fn shortest_lag_reads_only_history() {
        let mut hist = ExcitationHistory::new();
        hist.commit(&(1..=192).map(f64::from).collect::<Vec<_>>());
        let v = adaptive_vectors(&hist, PITCH_MIN, 40);
        // Lag 18 at m = 0 is 18 samples back; lag 16 at m = 16 wraps to the
        // periodic extension, i.e. 17 samples back.
        assert_eq!(v[0][0], 192.0 - 17.0);
        assert_eq!(v[2][0], 192.0 - 15.0);
        assert_eq!(v[2][16], v[1][17]);
        assert_eq!(v[1][17], v[1][0]);
        // Longest lag reads 145 samples back.
        let v = adaptive_vectors(&hist, PITCH_MAX, 40);
        assert_eq!(v[0][0], 192.0 - 144.0);
    }

    #[test]
    fn fixed_search_recovers_planted_entry() {
        let (a, num, den) = filters();
        let h = impulse_response(&a, &num, &den, 40);
        let cb = build_innovation_codebook(Mode::NbHigh.table());
        let gain = 300.0;
        let mut planted = vec![0.0; 40];
        for (k, &c) in cb.entry(7).iter().enumerate() {
            planted[k] = f64::from(c);
        }
        let target: Vec<f64> = convolve(&planted, &h, 40).iter().map(|v| gain * v).collect();
        let idx = fixed_search(&target, &cb, gain, &h);
        assert_eq!(idx.len(), 8);
        assert_eq!(idx[0], 7);
        assert!(idx[1..].iter().all(|&i| i == 0));
    }

    #[test]
    fn fixed_search_zero_target_picks_zero_entry() {
        let (a, num, den) = filters();
        let h = impulse_response(&a, &num, &den, 40);
        for m in [Mode::NbLow, Mode::NbHigh] {
            let cb = build_innovation_codebook(m.table());
            let idx = fixed_search(&[0.0; 40], &cb, 50.0, &h);
            assert_eq!(idx.len(), m.table().subvectors_per_subframe());
            assert!(idx.iter().all(|&i| i == 0));
        }
    }

    #[test]
    fn excitation_is_saturated() {
        let cb = build_innovation_codebook(Mode::NbLow.table());
        let e = build_excitation(&ExcitationHistory::new(), None, 1e12, &[5, 9], &cb, 40);
        assert!(e.iter().all(|v| v.abs() <= EXCITATION_LIMIT));
    }
}
