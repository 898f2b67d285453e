//! Orthogonal separable (tensor-product) wavelets with periodic extension.

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use transform_engine::ImageGrid;

use crate::error::{BenchError, BenchResult};
use crate::threshold::{select_top, Key};

/// Orthonormal low-pass taps `h` and the alternating-flip high-pass `g[n] = (−1)^n h[L−1−n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableFilterPair {
    pub lowpass: Vec<f64>,
    pub highpass: Vec<f64>,
    /// Vanishing moments of the high-pass filter.
    pub moments: usize,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Roots of `Σ c_k y^k` (ascending coefficients), from the companion matrix, Newton-polished.
fn poly_roots(c: &[f64]) -> Vec<Complex64> {
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let comp = DMatrix::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::default();
        let mut dp = Complex64::default();
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    comp.complex_eigenvalues()
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..50 {
                let (p, dp) = eval(z);
                if dp.norm() == 0.0 {
                    break;
                }
                let step = p / dp;
                z -= step;
                if step.norm() <= 1e-17 * z.norm().max(1.0) {
                    break;
                }
            }
            z
        })
        .collect()
}

impl SeparableFilterPair {
    /// Check and complete a low-pass filter with `moments` vanishing moments.
    pub fn new(lowpass: Vec<f64>, moments: usize) -> BenchResult<Self> {
        let l = lowpass.len();
        if l < 2 || l % 2 != 0 {
            return Err(BenchError::InvalidTaps(format!("need an even number of taps, got {l}")));
        }
        let highpass = (0..l).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 } * lowpass[l - 1 - n]).collect();
        let fp = Self { lowpass, highpass, moments };
        let r = fp.orthogonality_residual();
        if r > 1e-10 {
            return Err(BenchError::InvalidTaps(format!("double-shift orthogonality residual {r:.3e}")));
        }
        let s: f64 = fp.lowpass.iter().sum();
        if (s - 2f64.sqrt()).abs() > 1e-10 {
            return Err(BenchError::InvalidTaps(format!("taps sum to {s}, expected √2")));
        }
        let m = fp.moment_residual();
        if m > 1e-8 {
            return Err(BenchError::InvalidTaps(format!("{moments} vanishing moments fail (residual {m:.3e})")));
        }
        Ok(fp)
    }

    pub fn haar() -> Self {
        Self::new(vec![std::f64::consts::FRAC_1_SQRT_2; 2], 1).expect("Haar taps are orthonormal")
    }

    /// Minimum-phase Daubechies filter with `moments` vanishing moments
    /// (length `2·moments`), by spectral factorization of
    /// `|H|² = 2cos^{2N}(ω/2)·Σ_{k<N} C(N−1+k, k) sin^{2k}(ω/2)`.
    pub fn daubechies(moments: usize) -> BenchResult<Self> {
        if !(1..=12).contains(&moments) {
            return Err(BenchError::ValueError(format!("moments must lie in 1..=12, got {moments}")));
        }
        let nm = moments;
        let coeffs: Vec<f64> = (0..nm).map(|k| binomial(nm - 1 + k, k)).collect();
        // each root y of P gives z² − 2(1 − 2y)z + 1 = 0; keep the root inside the unit circle
        let zs: Vec<Complex64> = poly_roots(&coeffs)
            .into_iter()
            .map(|y| {
                let b = Complex64::new(1.0, 0.0) - 2.0 * y;
                let disc = (b * b - 1.0).sqrt();
                let (z1, z2) = (b + disc, b - disc);
                if z1.norm() < z2.norm() { z1 } else { z2 }
            })
            .collect();
        // h(z) ∝ (1 + z)^N · Π (z − z_i), ascending powers
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        let mul = |p: &Vec<Complex64>, root: Complex64| -> Vec<Complex64> {
            let mut out = vec![Complex64::default(); p.len() + 1];
            for (i, &a) in p.iter().enumerate() {
                out[i] -= a * root;
                out[i + 1] += a;
            }
            out
        };
        for _ in 0..nm {
            poly = mul(&poly, Complex64::new(-1.0, 0.0));
        }
        for &z in &zs {
            poly = mul(&poly, z);
        }
        let h: Vec<f64> = poly.iter().map(|z| z.re).collect();
        let s: f64 = h.iter().sum();
        let h: Vec<f64> = h.iter().rev().map(|x| x * 2f64.sqrt() / s).collect();
        Self::new(h, nm)
    }

    /// Read whitespace- or comma-separated low-pass taps from a text file.
    pub fn from_file(path: impl AsRef<Path>, moments: usize) -> BenchResult<Self> {
        let text = std::fs::read_to_string(path)?;
        let taps = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<f64>().map_err(|e| BenchError::InvalidTaps(format!("`{s}`: {e}"))))
            .collect::<BenchResult<Vec<_>>>()?;
        Self::new(taps, moments)
    }

    /// `max_m |Σ_n h[n]h[n+2m] − δ_m|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let h = &self.lowpass;
        let l = h.len();
        (0..l / 2)
            .map(|m| {
                let s: f64 = (0..l - 2 * m).map(|n| h[n] * h[n + 2 * m]).sum();
                (s - if m == 0 { 1.0 } else { 0.0 }).abs()
            })
            .fold(0.0, f64::max)
    }

    /// `max_{k < moments} |Σ_n n^k g[n]| / Σ_n |n^k g[n]|`.
    pub fn moment_residual(&self) -> f64 {
        (0..self.moments)
            .map(|k| {
                let terms: Vec<f64> = self.highpass.iter().enumerate().map(|(n, g)| (n as f64).powi(k as i32) * g).collect();
                terms.iter().sum::<f64>().abs() / terms.iter().map(|t| t.abs()).sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    fn analyze_1d(&self, x: &[f64], lo: &mut [f64], hi: &mut [f64]) {
        let m = x.len();
        for k in 0..m / 2 {
            let (mut a, mut d) = (0.0, 0.0);
            for (n, (h, g)) in self.lowpass.iter().zip(&self.highpass).enumerate() {
                let v = x[(2 * k + n) % m];
                a += h * v;
                d += g * v;
            }
            lo[k] = a;
            hi[k] = d;
        }
    }

    fn synthesize_1d(&self, lo: &[f64], hi: &[f64], x: &mut [f64]) {
        let m = x.len();
        x.iter_mut().for_each(|v| *v = 0.0);
        for k in 0..m / 2 {
            for (n, (h, g)) in self.lowpass.iter().zip(&self.highpass).enumerate() {
                x[(2 * k + n) % m] += h * lo[k] + g * hi[k];
            }
        }
    }
}

/// One detail band: `band` 1 = low-pass across columns / high-pass across rows,
/// 2 = high/low, 3 = high/high.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableBand {
    pub level: u32,
    pub band: usize,
    pub size: usize,
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparablePyramid {
    pub n: usize,
    pub levels: u32,
    pub bands: Vec<SeparableBand>,
    pub scaling: Vec<f64>,
}

impl SeparablePyramid {
    pub fn coefficient_count(&self) -> usize {
        self.bands.iter().map(|b| b.coeffs.len()).sum::<usize>() + self.scaling.len()
    }

    pub fn energy(&self) -> f64 {
        self.bands.iter().flat_map(|b| &b.coeffs).chain(&self.scaling).map(|x| x * x).sum()
    }

    /// Zero all but the `keep` largest magnitudes (ties by level, band, index).
    pub fn threshold(&self, keep: usize) -> BenchResult<Self> {
        let mut mags = Vec::with_capacity(self.coefficient_count());
        let mut keys: Vec<Key> = Vec::with_capacity(self.coefficient_count());
        for b in &self.bands {
            for (i, x) in b.coeffs.iter().enumerate() {
                mags.push(x.abs());
                keys.push((b.level, 0, b.band, i));
            }
        }
        for (i, x) in self.scaling.iter().enumerate() {
            mags.push(x.abs());
            keys.push((self.levels, 0, 0, i));
        }
        let mask = select_top(&mags, &keys, keep)?;
        let mut out = self.clone();
        let values = out.bands.iter_mut().flat_map(|b| b.coeffs.iter_mut()).chain(out.scaling.iter_mut());
        for (x, &m) in values.zip(&mask) {
            if !m {
                *x = 0.0;
            }
        }
        Ok(out)
    }
}

/// `levels`-level 2-D DWT of a square image whose side is divisible by `2^levels`.
pub fn separable_analyze(x: &ImageGrid, fp: &SeparableFilterPair, levels: u32) -> BenchResult<SeparablePyramid> {
    let n = x.rows;
    if x.cols != n || levels == 0 || n % (1 << levels) != 0 {
        return Err(BenchError::DimensionMismatch(format!(
            "{}×{} image cannot take {levels} dyadic level(s)",
            x.rows, x.cols
        )));
    }
    let mut ll = x.samples.clone();
    let mut bands = Vec::new();
    for j in 1..=levels {
        let m = n >> (j - 1);
        let h = m / 2;
        // rows: each row splits into low | high halves
        let mut lo_rows = vec![0.0; m * h];
        let mut hi_rows = vec![0.0; m * h];
        for r in 0..m {
            fp.analyze_1d(&ll[r * m..(r + 1) * m], &mut lo_rows[r * h..(r + 1) * h], &mut hi_rows[r * h..(r + 1) * h]);
        }
        let columns = |src: &[f64]| -> (Vec<f64>, Vec<f64>) {
            let (mut lo, mut hi) = (vec![0.0; h * h], vec![0.0; h * h]);
            let mut col = vec![0.0; m];
            let (mut a, mut d) = (vec![0.0; h], vec![0.0; h]);
            for c in 0..h {
                for r in 0..m {
                    col[r] = src[r * h + c];
                }
                fp.analyze_1d(&col, &mut a, &mut d);
                for r in 0..h {
                    lo[r * h + c] = a[r];
                    hi[r * h + c] = d[r];
                }
            }
            (lo, hi)
        };
        let (next, b1) = columns(&lo_rows);
        let (b2, b3) = columns(&hi_rows);
        for (band, coeffs) in [(1, b1), (2, b2), (3, b3)] {
            bands.push(SeparableBand { level: j, band, size: h, coeffs });
        }
        ll = next;
    }
    Ok(SeparablePyramid { n, levels, bands, scaling: ll })
}

pub fn separable_synthesize(p: &SeparablePyramid, fp: &SeparableFilterPair) -> BenchResult<ImageGrid> {
    let mut ll = p.scaling.clone();
    for j in (1..=p.levels).rev() {
        let m = p.n >> (j - 1);
        let h = m / 2;
        let get = |b: usize| -> BenchResult<&Vec<f64>> {
            p.bands
                .iter()
                .find(|x| x.level == j && x.band == b && x.coeffs.len() == h * h)
                .map(|x| &x.coeffs)
                .ok_or_else(|| BenchError::DimensionMismatch(format!("band ({j}, {b}) missing or mis-sized")))
        };
        if ll.len() != h * h {
            return Err(BenchError::DimensionMismatch(format!("level-{j} low-pass has {} samples", ll.len())));
        }
        let columns = |lo: &[f64], hi: &[f64]| -> Vec<f64> {
            let mut out = vec![0.0; m * h];
            let mut col = vec![0.0; m];
            let (mut a, mut d) = (vec![0.0; h], vec![0.0; h]);
            for c in 0..h {
                for r in 0..h {
                    a[r] = lo[r * h + c];
                    d[r] = hi[r * h + c];
                }
                fp.synthesize_1d(&a, &d, &mut col);
                for r in 0..m {
                    out[r * h + c] = col[r];
                }
            }
            out
        };
        let lo_rows = columns(&ll, get(1)?);
        let hi_rows = columns(get(2)?, get(3)?);
        let mut out = vec![0.0; m * m];
        for r in 0..m {
            fp.synthesize_1d(&lo_rows[r * h..(r + 1) * h], &hi_rows[r * h..(r + 1) * h], &mut out[r * m..(r + 1) * m]);
        }
        ll = out;
    }
    Ok(ImageGrid::new(p.n, p.n, ll)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn daubechies_filters_satisfy_the_oracles() {
        for nm in 1..=8 {
            let fp = SeparableFilterPair::daubechies(nm).unwrap();
            assert_eq!(fp.lowpass.len(), 2 * nm);
            assert!(fp.orthogonality_residual() <= 1e-12, "N={nm}");
        }
        let haar = SeparableFilterPair::daubechies(1).unwrap();
        assert!(haar.lowpass.iter().all(|h| (h - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14));
    }

    #[test]
    fn four_tap_filter_has_closed_form() {
        // (1 ± √3)/(4√2), (3 ± √3)/(4√2)
        let s3 = 3f64.sqrt();
        let d = 4.0 * 2f64.sqrt();
        let want = [(1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d, (1.0 - s3) / d];
        let fp = SeparableFilterPair::daubechies(2).unwrap();
        let rev: Vec<f64> = want.iter().rev().copied().collect();
        let close = |w: &[f64]| fp.lowpass.iter().zip(w).all(|(a, b)| (a - b).abs() < 1e-14);
        assert!(close(&want) || close(&rev), "{:?}", fp.lowpass);
    }

    #[test]
    fn bad_taps_are_rejected() {
        assert!(SeparableFilterPair::new(vec![0.5, 0.5], 1).is_err());
        assert!(SeparableFilterPair::new(vec![1.0, 0.0, 0.0], 1).is_err());
        // orthonormal but without a second vanishing moment
        assert!(SeparableFilterPair::new(vec![std::f64::consts::FRAC_1_SQRT_2; 2], 2).is_err());
    }
}
