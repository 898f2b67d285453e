//! One analysis/synthesis stage realized in the DFT domain.
//!
//! Analysis of band `k`: filter by `m̄_k`, keep the samples on `Γ_k`, scale by
//! `√|P/Γ_k|`. Keeping the samples on `Γ_k` is, on the DFT side, the folding
//! `(1/|P/Γ_k|)·Σ_{γ ∈ Γ_k*/P*} Y(ω + γ)`. Synthesis scatters the coefficients
//! onto `P` (periodization of the spectrum), filters by `√|P/Γ_k|·m_k` and sums.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use filter_design::fft::Fft2;
use filter_design::grid::Phase;
use filter_design::{build_bank, BankKind, FilterBankSpec, TransferGrid, IDENTITY};
use lattice_core::hnf;
use num_complex::Complex64;
use partition::Family;
use pr_verify::check_bank;
use rayon::prelude::*;

use crate::error::{TransformError, TransformResult};
use crate::image::ImageGrid;
use crate::window::Window;

/// Residual above which a bank is not accepted for transforms.
pub const PR_TOLERANCE: f64 = 1e-10;

/// The bank restricted to the coarser `n`-grid (`n` must divide the bank's grid).
///
/// Every point of the coarse grid is a point of the fine grid, so the values
/// are exact samples of the same transfer functions.
pub fn subsample_bank(fb: &FilterBankSpec, n: usize) -> TransformResult<FilterBankSpec> {
    if n == 0 || fb.grid_n % n != 0 {
        return Err(TransformError::DimensionMismatch(format!(
            "filter grid {} is not a multiple of {n}",
            fb.grid_n
        )));
    }
    let step = fb.grid_n / n;
    let filters = fb
        .filters
        .iter()
        .map(|f| TransferGrid {
            band: f.band,
            lattice: f.lattice,
            eta: f.eta,
            modulus: (0..n * n).map(|i| f.modulus[(i / n) * step * fb.grid_n + (i % n) * step]).collect(),
        })
        .collect();
    Ok(FilterBankSpec { grid_n: n, filters, ..fb.clone() })
}

/// The bank on the `n`-grid: exact subsampling when possible, otherwise a fresh
/// evaluation of the same construction.
pub fn fit_bank(fb: &FilterBankSpec, n: usize) -> TransformResult<FilterBankSpec> {
    if fb.grid_n == n {
        return Ok(fb.clone());
    }
    if fb.grid_n % n == 0 {
        return subsample_bank(fb, n);
    }
    let rebuildable = matches!(
        (fb.kind, fb.family),
        (BankKind::Shannon | BankKind::BasisOb1 | BankKind::BasisOb2, Family::Hexagonal(2))
            | (BankKind::Frame, Family::HexagonalFrame)
    );
    if !rebuildable {
        return Err(TransformError::DimensionMismatch(format!(
            "a {} bank on the {}-grid cannot be evaluated on the {n}-grid",
            fb.kind.name(),
            fb.grid_n
        )));
    }
    Ok(build_bank(fb.kind, fb.epsilon, fb.p_smooth, n)?)
}

/// A bank prepared for one grid size: complex normalized filters, scales, windows.
pub struct Stage {
    pub n: usize,
    pub windows: Vec<Window>,
    filters: Vec<Vec<Complex64>>,
    scales: Vec<f64>,
    fft: Fft2,
}

impl Stage {
    pub fn new(fb: &FilterBankSpec) -> TransformResult<Self> {
        fb.validate()?;
        let n = fb.grid_n;
        let phase = Phase::new(n);
        let filters = (0..fb.len())
            .map(|k| (0..n * n).map(|i| fb.normalized(k, (i % n) as i64, (i / n) as i64, &phase)).collect())
            .collect();
        let scales = (0..fb.len()).map(|k| (fb.index(k) as f64).sqrt()).collect();
        let windows = fb.filters.iter().map(|f| Window::new(&f.lattice, n)).collect::<TransformResult<_>>()?;
        Ok(Self { n, windows, filters, scales, fft: Fft2::new(n) })
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    /// Spectrum of an `n×n` signal.
    pub fn spectrum(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut s = x.to_vec();
        self.fft.forward(&mut s);
        s
    }

    /// Coefficients of every band from the spectrum of the input.
    pub fn analyze(&self, spectrum: &[Complex64]) -> Vec<Vec<Complex64>> {
        (0..self.len())
            .into_par_iter()
            .map(|k| {
                let mut z: Vec<Complex64> = spectrum.iter().zip(&self.filters[k]).map(|(x, m)| x * m.conj()).collect();
                self.fft.inverse(&mut z);
                let s = self.scales[k];
                self.windows[k].positions().into_iter().map(|p| z[p] * s).collect()
            })
            .collect()
    }

    /// Spectrum of the synthesized signal.
    pub fn synthesize_spectrum(&self, bands: &[&[Complex64]]) -> Vec<Complex64> {
        let n2 = self.n * self.n;
        let parts: Vec<Vec<Complex64>> = (0..self.len())
            .into_par_iter()
            .map(|k| {
                let mut up = vec![Complex64::default(); n2];
                let s = self.scales[k];
                for (i, p) in self.windows[k].positions().into_iter().enumerate() {
                    up[p] = bands[k][i] * s;
                }
                self.fft.forward(&mut up);
                up.iter_mut().zip(&self.filters[k]).for_each(|(x, m)| *x *= m);
                up
            })
            .collect();
        let mut out = vec![Complex64::default(); n2];
        for p in &parts {
            out.iter_mut().zip(p).for_each(|(o, x)| *o += x);
        }
        out
    }

    pub fn synthesize(&self, bands: &[&[Complex64]]) -> TransformResult<Vec<Complex64>> {
        if bands.len() != self.len() {
            return Err(TransformError::DimensionMismatch(format!("{} bands for a {}-band bank", bands.len(), self.len())));
        }
        for (k, (b, w)) in bands.iter().zip(&self.windows).enumerate() {
            if b.len() != w.len() {
                return Err(TransformError::DimensionMismatch(format!(
                    "band {k} has {} coefficients, its window holds {}",
                    b.len(),
                    w.len()
                )));
            }
        }
        let mut s = self.synthesize_spectrum(bands);
        self.fft.inverse(&mut s);
        Ok(s)
    }
}

/// A verified hexagonal bank (`D = 2·Id`) with its per-grid stages.
pub struct Transform {
    bank: FilterBankSpec,
    residual: f64,
    stages: Mutex<HashMap<usize, Arc<Stage>>>,
}

impl Transform {
    /// Accept `fb` after checking its structure and perfect reconstruction.
    pub fn new(fb: &FilterBankSpec) -> TransformResult<Self> {
        Self::structural(fb)?;
        let rep = check_bank(fb).map_err(|e| TransformError::UnverifiedBank(e.to_string()))?;
        let residual = rep.max_residual();
        if !(residual <= PR_TOLERANCE) {
            return Err(TransformError::UnverifiedBank(format!(
                "{} bank has PR residual {residual:.3e} > {PR_TOLERANCE:e}",
                fb.kind.name()
            )));
        }
        Ok(Self { bank: fb.clone(), residual, stages: Mutex::new(HashMap::new()) })
    }

    /// Accept `fb` on structure alone, for banks that were verified when the
    /// coefficients were computed.
    pub(crate) fn trusted(fb: &FilterBankSpec) -> TransformResult<Self> {
        Self::structural(fb)?;
        Ok(Self { bank: fb.clone(), residual: f64::NAN, stages: Mutex::new(HashMap::new()) })
    }

    fn structural(fb: &FilterBankSpec) -> TransformResult<()> {
        fb.validate()?;
        if !matches!(fb.family, Family::Hexagonal(_) | Family::HexagonalFrame) {
            return Err(TransformError::ValueError("transforms are implemented for hexagonal banks only".into()));
        }
        if fb.parent != IDENTITY || fb.kind == BankKind::Cut2Band {
            return Err(TransformError::ValueError("a cutting bank is applied with apply_cut, not as a transform".into()));
        }
        if hnf::hnf(&fb.filters[0].lattice)? != [[2, 0], [0, 2]] {
            return Err(TransformError::ValueError("the low-pass lattice must be 2Λ (dilation D = 2·Id)".into()));
        }
        Ok(())
    }

    pub fn bank(&self) -> &FilterBankSpec {
        &self.bank
    }

    /// Largest PR residual found when the bank was accepted.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn stage(&self, n: usize) -> TransformResult<Arc<Stage>> {
        let mut cache = self.stages.lock().expect("stage cache poisoned");
        if let Some(s) = cache.get(&n) {
            return Ok(s.clone());
        }
        let s = Arc::new(Stage::new(&fit_bank(&self.bank, n)?)?);
        cache.insert(n, s.clone());
        Ok(s)
    }

    /// Split `x` into the scaling band `y_0` and the wavelet bands `y_1, …` (window order).
    pub fn analyze_one_level(&self, x: &ImageGrid) -> TransformResult<Vec<Vec<Complex64>>> {
        let n = square_size(x, 1)?;
        let st = self.stage(n)?;
        Ok(st.analyze(&st.spectrum(&to_complex(x))))
    }

    /// Inverse of [`Transform::analyze_one_level`]; returns the real part.
    pub fn synthesize_one_level(&self, bands: &[Vec<Complex64>], n: usize) -> TransformResult<ImageGrid> {
        let st = self.stage(n)?;
        let refs: Vec<&[Complex64]> = bands.iter().map(|b| b.as_slice()).collect();
        let s = st.synthesize(&refs)?;
        ImageGrid::new(n, n, s.iter().map(|z| z.re).collect())
    }
}

/// Side length of a square image suitable for `levels` levels.
pub fn square_size(x: &ImageGrid, levels: u32) -> TransformResult<usize> {
    if x.rows != x.cols {
        return Err(TransformError::DimensionMismatch(format!("image is {}×{}, only square images are supported", x.rows, x.cols)));
    }
    let q = 4usize << (levels.max(1) - 1);
    if x.rows == 0 || x.rows % q != 0 {
        return Err(TransformError::DimensionMismatch(format!(
            "side {} is not divisible by {q} as required for {levels} level(s)",
            x.rows
        )));
    }
    Ok(x.rows)
}

pub fn to_complex(x: &ImageGrid) -> Vec<Complex64> {
    x.samples.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}
