use std::f64::consts::PI;

/// Analysis window applied before autocorrelation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    Rectangular,
    Hamming,
}

impl Window {
    /// Window coefficients for a block of `len` samples.
    pub fn coefficients(self, len: usize) -> Vec<f64> {
        match self {
            Window::Rectangular => vec![1.0; len],
            Window::Hamming => hamming(len),
        }
    }
}

/// Symmetric Hamming window, `0.54 - 0.46 cos(2 pi n / (len - 1))`.
pub fn hamming(len: usize) -> Vec<f64> {
    match len {
        0 => Vec::new(),
        1 => vec![1.0],
        _ => {
            let denom = (len - 1) as f64;
            (0..len)
                .map(|n| 0.54 - 0.46 * (2.0 * PI * n as f64 / denom).cos())
                .collect()
        }
    }
}
