use std::f64::consts::PI;

use super::lpc::LpcCoefficients;
use crate::{Error, Result};

/// Minimum spacing kept between adjacent quantized or interpolated LSPs.
pub const LSP_MIN_SEPARATION: f64 = 0.008;

const GRID_POINTS: usize = 512;
const ROOT_TOLERANCE: f64 = 1e-8;
/// Grid densities tried in turn before giving up on a root search.
const GRID_REFINEMENTS: [usize; 3] = [1, 8, 64];

/// Line spectral pair angles in radians, strictly ascending in `(0, pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LspAngles(Vec<f64>);

impl LspAngles {
    /// Validates ordering and range.
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        let in_range = angles.iter().all(|&w| w > 0.0 && w < PI);
        let ascending = angles.windows(2).all(|p| p[0] < p[1]);
        if !in_range || !ascending || angles.len() % 2 != 0 {
            return Err(Error::InvalidInput(
                "LSP angles must be an even count, strictly ascending in (0, pi)".into(),
            ));
        }
        Ok(Self(angles))
    }

    /// The LSPs of `A(z) = 1`: `i pi / (order + 1)`.
    pub fn uniform(order: usize) -> Self {
        Self(
            (1..=order)
                .map(|i| i as f64 * PI / (order + 1) as f64)
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// `(1 - w) * prev + w * cur`, element-wise. Ordering and separation are
    /// preserved because both inputs have them.
    pub fn interpolate(prev: &LspAngles, cur: &LspAngles, w: f64) -> LspAngles {
        LspAngles(
            prev.0
                .iter()
                .zip(&cur.0)
                .map(|(&p, &c)| (1.0 - w) * p + w * c)
                .collect(),
        )
    }

    /// Sorts `angles` and pushes them apart so that neighbours (and the
    /// interval ends) are at least `min_sep` apart.
    pub fn from_unordered(mut angles: Vec<f64>, min_sep: f64) -> LspAngles {
        angles.sort_by(f64::total_cmp);
        let n = angles.len();
        let mut floor = min_sep;
        for w in angles.iter_mut() {
            if *w < floor {
                *w = floor;
            }
            floor = *w + min_sep;
        }
        let mut ceil = PI - min_sep;
        for w in angles.iter_mut().rev() {
            if *w > ceil {
                *w = ceil;
            }
            ceil = *w - min_sep;
        }
        debug_assert!(n == 0 || angles[0] >= min_sep * 0.5);
        LspAngles(angles)
    }
}

/// Symmetric polynomials `P(z)/(1 + z^-1)` and `Q(z)/(1 - z^-1)`.
fn split_polynomials(a: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let p = a.len();
    let coef = |k: usize| -> f64 {
        if k == 0 {
            1.0
        } else if k <= p {
            a[k - 1]
        } else {
            0.0
        }
    };
    let mut sum = vec![0.0; p + 1];
    let mut diff = vec![0.0; p + 1];
    for k in 0..=p {
        let fwd = coef(k);
        let rev = coef(p + 1 - k);
        let prev_sum = if k > 0 { sum[k - 1] } else { 0.0 };
        let prev_diff = if k > 0 { diff[k - 1] } else { 0.0 };
        sum[k] = fwd + rev - prev_sum;
        diff[k] = fwd - rev + prev_diff;
    }
    (sum, diff)
}

/// Chebyshev-series coefficients `d` such that the zero-phase response of the
/// symmetric polynomial `c` is `sum d[m] T_m(cos w)`.
fn chebyshev_series(c: &[f64]) -> Vec<f64> {
    let half = (c.len() - 1) / 2;
    let mut d = vec![0.0; half + 1];
    d[0] = c[half];
    for m in 1..=half {
        d[m] = 2.0 * c[half - m];
    }
    d
}

/// Clenshaw evaluation of `sum d[m] T_m(x)`.
fn clenshaw(d: &[f64], x: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &dk in d[1..].iter().rev() {
        let b0 = dk + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    d[0] + x * b1 - b2
}

fn find_roots(d: &[f64], grid: usize) -> Vec<f64> {
    let eval = |w: f64| clenshaw(d, w.cos());
    let step = PI / grid as f64;
    let mut roots = Vec::new();
    let mut lo = 0.0;
    let mut f_lo = eval(lo);
    for j in 1..=grid {
        let hi = j as f64 * step;
        let f_hi = eval(hi);
        if f_hi == 0.0 && j < grid {
            roots.push(hi);
        } else if f_lo * f_hi < 0.0 {
            let (mut a, mut b, mut fa) = (lo, hi, f_lo);
            while b - a > ROOT_TOLERANCE {
                let mid = 0.5 * (a + b);
                let fm = eval(mid);
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if fa * fm < 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a + b));
        }
        lo = hi;
        f_lo = f_hi;
    }
    roots
}

/// Converts a stable even-order predictor to its line spectral pairs.
///
/// Roots of the two symmetric polynomials are bracketed on a 512-point grid
/// over `[0, pi]` and bisected to 1e-8 rad. If a bracket holds two roots the
/// grid is refined before reporting [`Error::FailedConversion`].
pub fn lpc_to_lsp(lpc: &LpcCoefficients) -> Result<LspAngles> {
    let order = lpc.order();
    if order == 0 || order % 2 != 0 {
        return Err(Error::InvalidInput("LSP conversion needs an even order".into()));
    }
    if lpc.as_slice().iter().any(|a| !a.is_finite()) {
        return Err(Error::InvalidInput("non-finite LPC coefficient".into()));
    }
    let (sum, diff) = split_polynomials(lpc.as_slice());
    let (ds, dd) = (chebyshev_series(&sum), chebyshev_series(&diff));
    let mut found = 0;
    for refine in GRID_REFINEMENTS {
        let grid = GRID_POINTS * refine;
        let mut roots = find_roots(&ds, grid);
        let diff_roots = find_roots(&dd, grid);
        found = roots.len() + diff_roots.len();
        if roots.len() != order / 2 || diff_roots.len() != order / 2 {
            continue;
        }
        roots.extend(diff_roots);
        roots.sort_by(f64::total_cmp);
        if let Ok(lsp) = LspAngles::new(roots) {
            return Ok(lsp);
        }
    }
    Err(Error::FailedConversion {
        found,
        expected: order,
    })
}

fn multiply_quadratics(angles: impl Iterator<Item = f64>, len: usize) -> Vec<f64> {
    let mut poly = vec![0.0; len];
    poly[0] = 1.0;
    let mut deg = 0;
    for w in angles {
        let c = -2.0 * w.cos();
        for k in (0..=deg + 2).rev() {
            let mut v = poly[k];
            if k >= 1 {
                v += c * poly[k - 1];
            }
            if k >= 2 {
                v += poly[k - 2];
            }
            poly[k] = v;
        }
        deg += 2;
    }
    poly
}

/// Rebuilds `A(z)` from line spectral pairs.
pub fn lsp_to_lpc(lsp: &LspAngles) -> LpcCoefficients {
    let p = lsp.order();
    let odd = multiply_quadratics(lsp.0.iter().copied().step_by(2), p + 2);
    let even = multiply_quadratics(lsp.0.iter().copied().skip(1).step_by(2), p + 2);
    // P = P'(1 + z^-1), Q = Q'(1 - z^-1), A = (P + Q) / 2.
    let a = (1..=p)
        .map(|k| {
            let pk = odd[k] + odd[k - 1];
            let qk = even[k] - even[k - 1];
            0.5 * (pk + qk)
        })
        .collect();
    LpcCoefficients::new(a)
}
