//! Square 2-D FFTs on row-major `n×n` grids (row = second index).

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Planned forward and inverse transforms of one size.
pub struct Fft2 {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    pub fn new(n: usize) -> Self {
        let mut p = FftPlanner::new();
        Self { n, fwd: p.plan_fft_forward(n), inv: p.plan_fft_inverse(n) }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn run(&self, data: &mut [Complex64], f: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        assert_eq!(data.len(), n * n, "grid must be {n}×{n}");
        f.process(data);
        let mut col = vec![Complex64::default(); n];
        for u in 0..n {
            for v in 0..n {
                col[v] = data[v * n + u];
            }
            f.process(&mut col);
            for v in 0..n {
                data[v * n + u] = col[v];
            }
        }
    }

    /// `X[ω] = Σ_x x[x]·e^{−2πi⟨ω,x⟩/n}` (unnormalized).
    pub fn forward(&self, data: &mut [Complex64]) {
        self.run(data, &self.fwd);
    }

    /// Inverse including the `1/n²` factor.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.run(data, &self.inv);
        let s = 1.0 / (self.n * self.n) as f64;
        data.iter_mut().for_each(|z| *z *= s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let n = 12;
        let f = Fft2::new(n);
        let orig: Vec<Complex64> = (0..n * n).map(|i| Complex64::new((i as f64 * 0.37).sin(), 0.0)).collect();
        let mut d = orig.clone();
        f.forward(&mut d);
        f.inverse(&mut d);
        assert!(d.iter().zip(&orig).all(|(a, b)| (a - b).norm() < 1e-12));
    }

    #[test]
    fn delta_has_flat_spectrum() {
        let n = 8;
        let mut d = vec![Complex64::default(); n * n];
        d[0] = Complex64::new(1.0, 0.0);
        Fft2::new(n).forward(&mut d);
        assert!(d.iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-14));
    }
}
