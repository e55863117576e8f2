use super::lpc::LpcCoefficients;
use crate::{Error, Result};

/// Delay line of a direct-form filter. Index 0 holds the most recent sample.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterState {
    memory: Vec<f64>,
}

impl FilterState {
    pub fn new(order: usize) -> Self {
        Self {
            memory: vec![0.0; order],
        }
    }

    pub fn order(&self) -> usize {
        self.memory.len()
    }

    pub fn reset(&mut self) {
        self.memory.iter_mut().for_each(|m| *m = 0.0);
    }

    pub fn memory(&self) -> &[f64] {
        &self.memory
    }
}

/// `A(z/gamma)`: `a[i] * gamma^(i+1)`.
pub fn bandwidth_expand(lpc: &LpcCoefficients, gamma: f64) -> LpcCoefficients {
    let mut g = 1.0;
    LpcCoefficients::new(
        lpc.as_slice()
            .iter()
            .map(|&a| {
                g *= gamma;
                a * g
            })
            .collect(),
    )
}

/// `1/A(z)` over `buf`, in place. `mem` holds past outputs.
pub(crate) fn all_pole_in_place(buf: &mut [f64], a: &[f64], mem: &mut [f64]) {
    debug_assert_eq!(a.len(), mem.len());
    for x in buf.iter_mut() {
        let mut y = *x;
        for (ai, mi) in a.iter().zip(mem.iter()) {
            y -= ai * mi;
        }
        if !mem.is_empty() {
            mem.rotate_right(1);
            mem[0] = y;
        }
        *x = y;
    }
}

/// `A(z)` over `buf`, in place. `mem` holds past inputs.
pub(crate) fn all_zero_in_place(buf: &mut [f64], a: &[f64], mem: &mut [f64]) {
    debug_assert_eq!(a.len(), mem.len());
    for x in buf.iter_mut() {
        let input = *x;
        let mut y = input;
        for (ai, mi) in a.iter().zip(mem.iter()) {
            y += ai * mi;
        }
        if !mem.is_empty() {
            mem.rotate_right(1);
            mem[0] = input;
        }
        *x = y;
    }
}

fn check_order(lpc: &LpcCoefficients, state: &FilterState) -> Result<()> {
    if lpc.order() != state.order() {
        return Err(Error::InvalidInput(format!(
            "filter state order {} does not match predictor order {}",
            state.order(),
            lpc.order()
        )));
    }
    Ok(())
}

fn run_checked(
    input: &[f64],
    lpc: &LpcCoefficients,
    state: &mut FilterState,
    f: fn(&mut [f64], &[f64], &mut [f64]),
) -> Result<Vec<f64>> {
    check_order(lpc, state)?;
    let mut out = input.to_vec();
    let mut mem = state.memory.clone();
    f(&mut out, lpc.as_slice(), &mut mem);
    if out.iter().any(|y| !y.is_finite()) {
        return Err(Error::NumericOverflow);
    }
    state.memory = mem;
    Ok(out)
}

/// Synthesis filter `1/A(z)`. The state is left untouched on error.
pub fn filter_all_pole(
    input: &[f64],
    lpc: &LpcCoefficients,
    state: &mut FilterState,
) -> Result<Vec<f64>> {
    run_checked(input, lpc, state, all_pole_in_place)
}

/// Analysis (residual) filter `A(z)`.
pub fn filter_all_zero(
    input: &[f64],
    lpc: &LpcCoefficients,
    state: &mut FilterState,
) -> Result<Vec<f64>> {
    run_checked(input, lpc, state, all_zero_in_place)
}

/// Expansion factors of the weighting filter `A(z/g1) / A(z/g2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightingConfig {
    gamma1: f64,
    gamma2: f64,
}

impl WeightingConfig {
    pub fn new(gamma1: f64, gamma2: f64) -> Result<Self> {
        if !(0.0 < gamma2 && gamma2 <= gamma1 && gamma1 <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "weighting factors must satisfy 0 < g2 <= g1 <= 1 (got {gamma1}, {gamma2})"
            )));
        }
        Ok(Self { gamma1, gamma2 })
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }
}

impl Default for WeightingConfig {
    fn default() -> Self {
        Self {
            gamma1: 0.9,
            gamma2: 0.6,
        }
    }
}

/// Numerator and denominator delay lines of the weighting filter.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightingState {
    pub numerator: FilterState,
    pub denominator: FilterState,
}

impl WeightingState {
    pub fn new(order: usize) -> Self {
        Self {
            numerator: FilterState::new(order),
            denominator: FilterState::new(order),
        }
    }

    pub fn reset(&mut self) {
        self.numerator.reset();
        self.denominator.reset();
    }
}

/// Perceptual weighting `W(z) = A(z/g1) / A(z/g2)`.
pub fn perceptual_weight(
    input: &[f64],
    lpc: &LpcCoefficients,
    cfg: &WeightingConfig,
    state: &mut WeightingState,
) -> Result<Vec<f64>> {
    let num = bandwidth_expand(lpc, cfg.gamma1);
    let den = bandwidth_expand(lpc, cfg.gamma2);
    check_order(&num, &state.numerator)?;
    check_order(&den, &state.denominator)?;
    let mut num_state = state.numerator.clone();
    let mut den_state = state.denominator.clone();
    let zeroed = filter_all_zero(input, &num, &mut num_state)?;
    let out = filter_all_pole(&zeroed, &den, &mut den_state)?;
    state.numerator = num_state;
    state.denominator = den_state;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn impulse(n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        x[0] = 1.0;
        x
    }

    fn noise(seed: u64, n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| rng.gen_range(-1000.0..1000.0)).collect()
    }

    fn ar2() -> LpcCoefficients {
        LpcCoefficients::new(vec![-0.75, 0.5])
    }

    #[test]
    fn bandwidth_expansion_examples() {
        let a = LpcCoefficients::new(vec![-0.9, 0.3]);
        assert_eq!(bandwidth_expand(&a, 1.0), a);
        assert!(bandwidth_expand(&a, 0.0).as_slice().iter().all(|&v| v == 0.0));
        let half = bandwidth_expand(&LpcCoefficients::new(vec![-0.9]), 0.5);
        assert_eq!(half.as_slice(), &[-0.45]);
    }

    #[test]
    fn flat_predictor_is_identity() {
        let x = noise(1, 50);
        let lpc = LpcCoefficients::zeros(10);
        assert_eq!(filter_all_pole(&x, &lpc, &mut FilterState::new(10)).unwrap(), x);
        assert_eq!(filter_all_zero(&x, &lpc, &mut FilterState::new(10)).unwrap(), x);
    }

    #[test]
    fn geometric_impulse_response() {
        let lpc = LpcCoefficients::new(vec![-0.5]);
        let y = filter_all_pole(&impulse(6), &lpc, &mut FilterState::new(1)).unwrap();
        for (n, v) in y.iter().enumerate() {
            assert_eq!(*v, 0.5f64.powi(n as i32));
        }
        let back = filter_all_zero(&y, &lpc, &mut FilterState::new(1)).unwrap();
        assert_eq!(back, impulse(6));
    }

    #[test]
    fn all_zero_then_all_pole_is_identity() {
        let x = noise(2, 400);
        let lpc = ar2();
        let r = filter_all_zero(&x, &lpc, &mut FilterState::new(2)).unwrap();
        let y = filter_all_pole(&r, &lpc, &mut FilterState::new(2)).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn chunked_equals_one_shot() {
        let x = noise(3, 333);
        let lpc = LpcCoefficients::new(vec![-1.2, 0.8, -0.1]);
        let one = filter_all_pole(&x, &lpc, &mut FilterState::new(3)).unwrap();
        let mut st = FilterState::new(3);
        let mut chunked = Vec::new();
        for c in x.chunks(7) {
            chunked.extend(filter_all_pole(c, &lpc, &mut st).unwrap());
        }
        assert_eq!(one, chunked);
        let one = filter_all_zero(&x, &lpc, &mut FilterState::new(3)).unwrap();
        let mut st = FilterState::new(3);
        let mut chunked = Vec::new();
        for c in x.chunks(11) {
            chunked.extend(filter_all_zero(c, &lpc, &mut st).unwrap());
        }
        assert_eq!(one, chunked);
    }

    #[test]
    fn unstable_filter_reports_overflow() {
        let lpc = LpcCoefficients::new(vec![-2.0]);
        let mut st = FilterState::new(1);
        let x = vec![1e307; 8];
        assert_eq!(filter_all_pole(&x, &lpc, &mut st), Err(Error::NumericOverflow));
        assert_eq!(st, FilterState::new(1));
    }

    #[test]
    fn order_mismatch_rejected() {
        assert!(filter_all_pole(&[1.0], &ar2(), &mut FilterState::new(3)).is_err());
    }

    #[test]
    fn weighting_with_equal_gammas_is_identity() {
        let x = noise(4, 200);
        let cfg = WeightingConfig::new(0.8, 0.8).unwrap();
        let y = perceptual_weight(&x, &ar2(), &cfg, &mut WeightingState::new(2)).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() < 1e-9);
        }
        let flat = perceptual_weight(
            &x,
            &LpcCoefficients::zeros(2),
            &WeightingConfig::default(),
            &mut WeightingState::new(2),
        )
        .unwrap();
        assert_eq!(flat, x);
    }

    #[test]
    fn weighting_matches_explicit_two_stage_filter() {
        // AR(2) signal driven by noise.
        let e = noise(5, 320);
        let x = filter_all_pole(&e, &ar2(), &mut FilterState::new(2)).unwrap();
        let y = perceptual_weight(
            &x,
            &ar2(),
            &WeightingConfig::default(),
            &mut WeightingState::new(2),
        )
        .unwrap();
        // Oracle: difference equation written out with the expanded taps.
        let (n1, n2) = (-0.75 * 0.9, 0.5 * 0.81);
        let (d1, d2) = (-0.75 * 0.6, 0.5 * 0.36);
        let mut z = vec![0.0; x.len()];
        let mut w = vec![0.0; x.len()];
        for n in 0..x.len() {
            let xm1 = if n >= 1 { x[n - 1] } else { 0.0 };
            let xm2 = if n >= 2 { x[n - 2] } else { 0.0 };
            z[n] = x[n] + n1 * xm1 + n2 * xm2;
            let wm1 = if n >= 1 { w[n - 1] } else { 0.0 };
            let wm2 = if n >= 2 { w[n - 2] } else { 0.0 };
            w[n] = z[n] - d1 * wm1 - d2 * wm2;
        }
        for (a, b) in y.iter().zip(&w) {
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
        }
    }

    #[test]
    fn weighting_config_validated() {
        assert!(WeightingConfig::new(0.6, 0.9).is_err());
        assert!(WeightingConfig::new(1.1, 0.5).is_err());
        assert!(WeightingConfig::new(0.9, 0.0).is_err());
        assert!(WeightingConfig::new(1.0, 1.0).is_ok());
    }

    proptest! {
        #[test]
        fn filters_are_linear(seed in any::<u64>(), a in -5.0f64..5.0, b in -5.0f64..5.0) {
            let x = noise(seed, 64);
            let y = noise(seed.wrapping_add(1), 64);
            let lpc = LpcCoefficients::new(vec![-1.2, 0.8, -0.1]);
            let mix: Vec<f64> = x.iter().zip(&y).map(|(p, q)| a * p + b * q).collect();
            let fm = filter_all_pole(&mix, &lpc, &mut FilterState::new(3)).unwrap();
            let fx = filter_all_pole(&x, &lpc, &mut FilterState::new(3)).unwrap();
            let fy = filter_all_pole(&y, &lpc, &mut FilterState::new(3)).unwrap();
            let scale = fm.iter().chain(&fx).chain(&fy).fold(1.0f64, |m, v| m.max(v.abs()));
            for i in 0..64 {
                prop_assert!((fm[i] - (a * fx[i] + b * fy[i])).abs() <= 1e-6 * scale * (1.0 + a.abs() + b.abs()));
            }
            let zm = filter_all_zero(&mix, &lpc, &mut FilterState::new(3)).unwrap();
            let zx = filter_all_zero(&x, &lpc, &mut FilterState::new(3)).unwrap();
            let zy = filter_all_zero(&y, &lpc, &mut FilterState::new(3)).unwrap();
            for i in 0..64 {
                prop_assert!((zm[i] - (a * zx[i] + b * zy[i])).abs() <= 1e-6 * scale * (1.0 + a.abs() + b.abs()));
            }
        }

        #[test]
        fn arbitrary_chunking_is_bit_exact(seed in any::<u64>(), cuts in proptest::collection::vec(1usize..40, 1..10)) {
            let x = noise(seed, 200);
            let lpc = ar2();
            let cfg = WeightingConfig::default();
            let one = perceptual_weight(&x, &lpc, &cfg, &mut WeightingState::new(2)).unwrap();
            let mut st = WeightingState::new(2);
            let mut out = Vec::new();
            let mut pos = 0;
            for c in cuts.iter().cycle() {
                if pos >= x.len() { break; }
                let end = (pos + c).min(x.len());
                out.extend(perceptual_weight(&x[pos..end], &lpc, &cfg, &mut st).unwrap());
                pos = end;
            }
            prop_assert_eq!(one, out);
        }
    }
}
