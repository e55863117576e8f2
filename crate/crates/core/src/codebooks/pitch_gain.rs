use super::mode::{PITCH_MAX, PITCH_MIN};

/// Integer pitch period and 3-tap gain codebook index of one sub-frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PitchParams {
    pub period: usize,
    pub gain_index: usize,
}

impl PitchParams {
    pub fn is_valid(&self) -> bool {
        (PITCH_MIN..=PITCH_MAX).contains(&self.period) && self.gain_index < PITCH_GAIN_TABLE.len()
    }

    pub fn gains(&self) -> [f64; 3] {
        PITCH_GAIN_TABLE[self.gain_index]
    }
}

/// `(g0, g1, g2)` for taps at lags `T+1`, `T`, `T-1`. Entry `4 i + j` pairs
/// the i-th centre gain of {0, .25, .5, .75, .9, 1.05, 1.2, 1.35} with the j-th
/// side pair of {(0, 0), (.1, .1), (.25, 0), (0, .25)}.
pub const PITCH_GAIN_TABLE: [[f64; 3]; 32] = [
    [0.0, 0.0, 0.0],
    [0.1, 0.0, 0.1],
    [0.25, 0.0, 0.0],
    [0.0, 0.0, 0.25],
    [0.0, 0.25, 0.0],
    [0.1, 0.25, 0.1],
    [0.25, 0.25, 0.0],
    [0.0, 0.25, 0.25],
    [0.0, 0.5, 0.0],
    [0.1, 0.5, 0.1],
    [0.25, 0.5, 0.0],
    [0.0, 0.5, 0.25],
    [0.0, 0.75, 0.0],
    [0.1, 0.75, 0.1],
    [0.25, 0.75, 0.0],
    [0.0, 0.75, 0.25],
    [0.0, 0.9, 0.0],
    [0.1, 0.9, 0.1],
    [0.25, 0.9, 0.0],
    [0.0, 0.9, 0.25],
    [0.0, 1.05, 0.0],
    [0.1, 1.05, 0.1],
    [0.25, 1.05, 0.0],
    [0.0, 1.05, 0.25],
    [0.0, 1.2, 0.0],
    [0.1, 1.2, 0.1],
    [0.25, 1.2, 0.0],
    [0.0, 1.2, 0.25],
    [0.0, 1.35, 0.0],
    [0.1, 1.35, 0.1],
    [0.25, 1.35, 0.0],
    [0.0, 1.35, 0.25],
];

/// Nearest table entry in squared Euclidean distance; ties go to the lowest
/// index.
pub fn quantize_pitch_gains(g: [f64; 3]) -> usize {
    let mut best = 0;
    let mut best_dist = f64::INFINITY;
    for (i, entry) in PITCH_GAIN_TABLE.iter().enumerate() {
        let d = entry
            .iter()
            .zip(&g)
            .fold(0.0, |acc, (e, x)| acc + (e - x) * (e - x));
        if d < best_dist {
            best_dist = d;
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const CENTRE: [f64; 8] = [0.0, 0.25, 0.5, 0.75, 0.9, 1.05, 1.2, 1.35];
    const SIDES: [(f64, f64); 4] = [(0.0, 0.0), (0.1, 0.1), (0.25, 0.0), (0.0, 0.25)];

    #[test]
    fn table_is_the_documented_cross_product() {
        for (i, c) in CENTRE.iter().enumerate() {
            for (j, (a, b)) in SIDES.iter().enumerate() {
                assert_eq!(PITCH_GAIN_TABLE[4 * i + j], [*a, *c, *b]);
            }
        }
    }

    fn exhaustive(g: [f64; 3]) -> usize {
        let dists: Vec<f64> = PITCH_GAIN_TABLE
            .iter()
            .map(|e| (0..3).map(|k| (e[k] - g[k]).powi(2)).sum())
            .collect();
        let min = dists.iter().cloned().fold(f64::INFINITY, f64::min);
        dists.iter().position(|&d| d == min).unwrap()
    }

    #[test]
    fn entries_map_to_themselves() {
        for (i, e) in PITCH_GAIN_TABLE.iter().enumerate() {
            assert_eq!(quantize_pitch_gains(*e), i);
        }
    }

    #[test]
    fn unit_single_tap() {
        let idx = quantize_pitch_gains([0.0, 1.0, 0.0]);
        assert_eq!(idx, exhaustive([0.0, 1.0, 0.0]));
        assert_eq!(PITCH_GAIN_TABLE[idx], [0.0, 1.05, 0.0]);
    }

    #[test]
    fn far_point_saturates() {
        let idx = quantize_pitch_gains([10.0, 10.0, 10.0]);
        assert_eq!(idx, exhaustive([10.0, 10.0, 10.0]));
        // Entries 30 and 31 tie; the lower index wins.
        assert_eq!(idx, 30);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn nearest_neighbour(a in -0.5f64..2.0, b in -0.5f64..2.0, c in -0.5f64..2.0) {
            prop_assert_eq!(quantize_pitch_gains([a, b, c]), exhaustive([a, b, c]));
        }
    }
}
