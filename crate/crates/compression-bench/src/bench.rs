//! The compression experiment: analyze, keep the `N/ratio` largest coefficients,
//! synthesize, and score by PSNR.

use std::path::{Path, PathBuf};
use std::time::Instant;

use filter_design::{build_bank, BankKind, DEFAULT_BASIS_EPS, DEFAULT_CUT_EPS, DEFAULT_FRAME_EPS};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use transform_engine::{CutPlan, ImageGrid, Transform};

use crate::error::{BenchError, BenchResult};
use crate::psnr::psnr;
use crate::separable::{separable_analyze, separable_synthesize, SeparableFilterPair};
use crate::threshold::topn_threshold;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Tensor,
    HexBasisOb1,
    HexBasisOb2,
    HexFrame,
    HexBasisCut,
    HexFrameCut,
}

impl Method {
    pub const ALL: [Method; 6] =
        [Method::Tensor, Method::HexBasisOb1, Method::HexBasisOb2, Method::HexFrame, Method::HexBasisCut, Method::HexFrameCut];

    pub fn name(self) -> &'static str {
        match self {
            Method::Tensor => "tensor",
            Method::HexBasisOb1 => "hex-basis-ob1",
            Method::HexBasisOb2 => "hex-basis-ob2",
            Method::HexFrame => "hex-frame",
            Method::HexBasisCut => "hex-basis-cut",
            Method::HexFrameCut => "hex-frame-cut",
        }
    }

    pub fn parse(s: &str) -> BenchResult<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| BenchError::ValueError(format!("unknown method `{s}` (expected one of {})", Self::names())))
    }

    pub fn names() -> String {
        Self::ALL.map(Method::name).join(", ")
    }

    /// Orthonormal methods (energy of the discarded coefficients equals the error).
    pub fn is_basis(self) -> bool {
        !matches!(self, Method::HexFrame | Method::HexFrameCut)
    }
}

fn default_ratio() -> f64 {
    20.0
}
fn default_levels() -> u32 {
    3
}
fn default_basis_eps() -> f64 {
    DEFAULT_BASIS_EPS
}
fn default_frame_eps() -> f64 {
    DEFAULT_FRAME_EPS
}
fn default_cut_eps() -> f64 {
    DEFAULT_CUT_EPS
}
fn default_p_smooth() -> u32 {
    1
}
fn default_methods() -> Vec<String> {
    Method::ALL.iter().map(|m| m.name().to_string()).collect()
}
fn default_moments() -> usize {
    6
}
fn default_cut_base() -> String {
    "basis-ob1".into()
}

/// Benchmark settings; every field has a default and can be set from a TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default = "default_ratio")]
    pub ratio: f64,
    #[serde(default = "default_levels")]
    pub levels: u32,
    #[serde(default = "default_basis_eps")]
    pub basis_eps: f64,
    #[serde(default = "default_frame_eps")]
    pub frame_eps: f64,
    #[serde(default = "default_cut_eps")]
    pub cut_eps: f64,
    #[serde(default = "default_p_smooth")]
    pub p_smooth: u32,
    #[serde(default = "default_methods")]
    pub methods: Vec<String>,
    /// Bank refined by `hex-basis-cut`: `basis-ob1` or `basis-ob2`.
    #[serde(default = "default_cut_base")]
    pub cut_base: String,
    /// Text file of separable low-pass taps; generated Daubechies taps when absent.
    #[serde(default)]
    pub taps: Option<PathBuf>,
    #[serde(default = "default_moments")]
    pub moments: usize,
    /// Directory for reconstructed images (`<image>_<method>.pgm`).
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        toml::from_str("").expect("defaults deserialize")
    }
}

impl BenchConfig {
    pub fn from_toml_str(s: &str) -> BenchResult<Self> {
        toml::from_str(s).map_err(|e| BenchError::Config(e.to_string()))
    }

    pub fn from_file(path: impl AsRef<Path>) -> BenchResult<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn parsed_methods(&self) -> BenchResult<Vec<Method>> {
        self.methods.iter().map(|m| Method::parse(m)).collect()
    }

    pub fn validate(&self) -> BenchResult<()> {
        if !(self.ratio >= 1.0 && self.ratio.is_finite()) {
            return Err(BenchError::ValueError(format!("ratio must be ≥ 1, got {}", self.ratio)));
        }
        if self.levels == 0 {
            return Err(BenchError::ValueError("levels must be positive".into()));
        }
        if !matches!(self.cut_base.as_str(), "basis-ob1" | "basis-ob2") {
            return Err(BenchError::ValueError(format!("cut_base must be basis-ob1 or basis-ob2, got `{}`", self.cut_base)));
        }
        self.parsed_methods().map(|_| ())
    }

    pub fn filter_pair(&self) -> BenchResult<SeparableFilterPair> {
        match &self.taps {
            Some(p) => SeparableFilterPair::from_file(p, self.moments),
            None => SeparableFilterPair::daubechies(self.moments),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionResult {
    pub image: String,
    pub method: Method,
    pub ratio: f64,
    pub kept: usize,
    pub psnr_db: f64,
    pub runtime_ms: f64,
}

/// Load images, naming each by its file stem.
pub fn load_images(paths: &[PathBuf]) -> BenchResult<Vec<(String, ImageGrid)>> {
    paths
        .iter()
        .map(|p| {
            if !p.is_file() {
                return Err(BenchError::MissingImage(p.display().to_string()));
            }
            let id = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((id, ImageGrid::load(p)?))
        })
        .collect()
}

/// Number of coefficients kept at `ratio`: `⌊N/ratio⌋`.
pub fn kept_count(pixels: usize, ratio: f64) -> usize {
    (pixels as f64 / ratio).floor() as usize
}

/// Compress one image with one method; returns the reconstruction and the kept count.
pub fn compress(x: &ImageGrid, method: Method, cfg: &BenchConfig) -> BenchResult<(ImageGrid, usize)> {
    let keep = kept_count(x.samples.len(), cfg.ratio);
    if method == Method::Tensor {
        let fp = cfg.filter_pair()?;
        let p = separable_analyze(x, &fp, cfg.levels)?;
        return Ok((separable_synthesize(&p.threshold(keep)?, &fp)?, keep));
    }
    let n = x.rows;
    let fb = match method {
        Method::HexBasisOb1 => build_bank(BankKind::BasisOb1, cfg.basis_eps, cfg.p_smooth, n)?,
        Method::HexBasisOb2 => build_bank(BankKind::BasisOb2, cfg.basis_eps, cfg.p_smooth, n)?,
        Method::HexBasisCut => build_bank(BankKind::parse(&cfg.cut_base)?, cfg.basis_eps, cfg.p_smooth, n)?,
        Method::HexFrame | Method::HexFrameCut => build_bank(BankKind::Frame, cfg.frame_eps, cfg.p_smooth, n)?,
        Method::Tensor => unreachable!(),
    };
    let t = Transform::new(&fb)?;
    let mut p = t.analyze(x, cfg.levels)?;
    if matches!(method, Method::HexBasisCut | Method::HexFrameCut) {
        // twelve directions at the finest level, six below
        for band in 1..=6 {
            let plan = CutPlan::new(&p, 1, 1, band, cfg.cut_eps)?;
            p.cut(&plan)?;
        }
    }
    let th = topn_threshold(&p, keep)?;
    Ok((t.synthesize(&th.pyramid)?, th.kept))
}

/// Every (image, method) cell, in image order then method order.
pub fn run_benchmark(images: &[(String, ImageGrid)], cfg: &BenchConfig) -> BenchResult<Vec<CompressionResult>> {
    cfg.validate()?;
    let methods = cfg.parsed_methods()?;
    let cells: Vec<(usize, Method)> = (0..images.len()).flat_map(|i| methods.iter().map(move |&m| (i, m))).collect();
    let results: Vec<BenchResult<CompressionResult>> = cells
        .par_iter()
        .map(|&(i, method)| {
            let (id, x) = &images[i];
            let start = Instant::now();
            let (y, kept) = compress(x, method, cfg)?;
            let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
            if let Some(dir) = &cfg.out_dir {
                std::fs::create_dir_all(dir)?;
                y.save(dir.join(format!("{id}_{}.pgm", method.name())))?;
            }
            Ok(CompressionResult { image: id.clone(), method, ratio: cfg.ratio, kept, psnr_db: psnr(x, &y)?, runtime_ms })
        })
        .collect();
    results.into_iter().collect()
}

/// CSV with header `image,method,ratio,kept,psnr_db,runtime_ms`. Without
/// timing the runtime column is left empty, making the output reproducible.
pub fn to_csv(results: &[CompressionResult], timing: bool) -> BenchResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| BenchError::Config(e.to_string());
    w.write_record(["image", "method", "ratio", "kept", "psnr_db", "runtime_ms"]).map_err(csv_err)?;
    for r in results {
        let runtime = if timing { format!("{:.1}", r.runtime_ms) } else { String::new() };
        w.write_record([
            r.image.clone(),
            r.method.name().to_string(),
            format!("{}", r.ratio),
            r.kept.to_string(),
            format!("{:.4}", r.psnr_db),
            runtime,
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| BenchError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV is UTF-8"))
}

pub fn to_json(results: &[CompressionResult]) -> String {
    serde_json::to_string_pretty(results).expect("results serialize")
}
