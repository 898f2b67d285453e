//! Scaling function and wavelets of a bank, from the truncated infinite product.

use num_complex::Complex64;

use crate::bank::FilterBankSpec;
use crate::error::{FilterError, FilterResult};
use crate::fft::Fft2;
use crate::grid::Phase;

/// Spectra over one period of `2^L·Λ*` and spatial samples on `2^{−L}Λ`,
/// both `size×size`, centred (origin at `(size/2, size/2)`).
#[derive(Debug, Clone)]
pub struct BasisRender {
    pub size: usize,
    pub levels: u32,
    pub phi_hat: Vec<Complex64>,
    pub psi_hat: Vec<Vec<Complex64>>,
    pub phi: Vec<f64>,
    pub psi: Vec<Vec<f64>>,
}

impl BasisRender {
    /// Spatial position (coordinates of `Λ`) of centred sample `(c, r)`.
    pub fn position(&self, c: usize, r: usize) -> [f64; 2] {
        let s = (1u64 << self.levels) as f64;
        [(c as f64 - (self.size / 2) as f64) / s, (r as f64 - (self.size / 2) as f64) / s]
    }

    /// Fraction of the energy of `f` farther than `radius` (real units) from the origin.
    pub fn tail_fraction(&self, f: &[f64], radius: f64) -> f64 {
        let (mut total, mut tail) = (0.0, 0.0);
        for r in 0..self.size {
            for c in 0..self.size {
                let [a, b] = self.position(c, r);
                let x = [a, (a + 2.0 * b) / 3f64.sqrt()];
                let e = f[r * self.size + c].powi(2);
                total += e;
                if x[0].hypot(x[1]) > radius {
                    tail += e;
                }
            }
        }
        tail / total
    }
}

/// Normalized `m_k` at the dual frequency `q·(u, v)/size`, nearest filter-grid sample.
fn sample(fb: &FilterBankSpec, k: usize, u: i64, v: i64, q: u64, size: usize, phase: &Phase) -> Complex64 {
    let n = fb.grid_n as i64;
    let scale = |x: i64| ((x as f64) * q as f64 * n as f64 / size as f64).round() as i64;
    fb.normalized(k, scale(u), scale(v), phase)
}

/// `φ̂(ξ) = Π_{p=1..L} m_0(ξ/2^p)`, `ψ̂^k(ξ) = m_k(ξ/2)·Π_{p=2..L} m_0(ξ/2^p)`,
/// sampled with `ξ = 2^L·(u, v)/size`, and their inverse DFTs.
pub fn render_basis_functions(fb: &FilterBankSpec, levels: u32, out_n: usize) -> FilterResult<BasisRender> {
    if levels == 0 || levels > 12 {
        return Err(FilterError::ValueError(format!("levels must lie in 1..=12, got {levels}")));
    }
    if out_n < 4 {
        return Err(FilterError::ValueError(format!("out_n must be at least 4, got {out_n}")));
    }
    let size = out_n;
    let phase = Phase::new(fb.grid_n);
    let lowpass_tail = |u: i64, v: i64, from: u32| -> Complex64 {
        (from..=levels).fold(Complex64::new(1.0, 0.0), |acc, p| {
            acc * sample(fb, 0, u, v, 1 << (levels - p), size, &phase)
        })
    };
    let coords = |i: usize| ((i % size) as i64 - (size / 2) as i64, (i / size) as i64 - (size / 2) as i64);
    let phi_hat: Vec<Complex64> = (0..size * size)
        .map(|i| {
            let (u, v) = coords(i);
            lowpass_tail(u, v, 1)
        })
        .collect();
    let psi_hat: Vec<Vec<Complex64>> = (1..fb.len())
        .map(|k| {
            (0..size * size)
                .map(|i| {
                    let (u, v) = coords(i);
                    sample(fb, k, u, v, 1 << (levels - 1), size, &phase) * lowpass_tail(u, v, 2)
                })
                .collect()
        })
        .collect();
    let fft = Fft2::new(size);
    let spatial = |hat: &[Complex64]| -> Vec<f64> {
        // move the centred spectrum to DFT order, invert, and centre the result
        let h = size / 2;
        let mut d = vec![Complex64::default(); size * size];
        for r in 0..size {
            for c in 0..size {
                d[((r + h) % size) * size + (c + h) % size] = hat[r * size + c];
            }
        }
        fft.inverse(&mut d);
        let mut out = vec![0.0; size * size];
        for r in 0..size {
            for c in 0..size {
                out[((r + h) % size) * size + (c + h) % size] = d[r * size + c].re * (size * size) as f64;
            }
        }
        out
    };
    let phi = spatial(&phi_hat);
    let psi = psi_hat.iter().map(|h| spatial(h)).collect();
    Ok(BasisRender { size, levels, phi_hat, psi_hat, phi, psi })
}
