//! PNG rendering of modulus grids over the reciprocal cell.

use std::path::Path;

use crate::bank::FilterBankSpec;
use crate::error::{FilterError, FilterResult};
use crate::grid::{self, hex_gauge};

/// Encode an 8-bit grayscale image.
pub fn encode_gray_png(width: u32, height: u32, pixels: &[u8]) -> FilterResult<Vec<u8>> {
    let mut out = Vec::new();
    {
        let mut enc = png::Encoder::new(&mut out, width, height);
        enc.set_color(png::ColorType::Grayscale);
        enc.set_depth(png::BitDepth::Eight);
        let mut w = enc.write_header().map_err(|e| FilterError::FormatError(e.to_string()))?;
        w.write_image_data(pixels).map_err(|e| FilterError::FormatError(e.to_string()))?;
    }
    Ok(out)
}

/// Map values in `[lo, hi]` to gray levels.
pub fn to_gray(values: &[f64], lo: f64, hi: f64) -> Vec<u8> {
    let span = if hi > lo { hi - lo } else { 1.0 };
    values.iter().map(|&x| (((x - lo) / span).clamp(0.0, 1.0) * 255.0).round() as u8).collect()
}

/// `ℳ_k` over the square window `[−3.7, 3.7]²` of real frequencies, nearest
/// grid sample; points outside the cell are drawn at half intensity.
pub fn modulus_image(fb: &FilterBankSpec, k: usize, size: usize) -> Vec<u8> {
    let n = fb.grid_n;
    let half = 3.7;
    let mut px = Vec::with_capacity(size * size);
    for row in 0..size {
        for col in 0..size {
            let x1 = -half + 2.0 * half * (col as f64 + 0.5) / size as f64;
            let x2 = half - 2.0 * half * (row as f64 + 0.5) / size as f64;
            let v = n as f64 * x2 / (3f64.sqrt() * std::f64::consts::PI);
            let u = (n as f64 * x1 / std::f64::consts::PI + v) / 2.0;
            let m = fb.filters[k].modulus[grid::index(u.round() as i64, v.round() as i64, n)];
            let g = if hex_gauge([x1, x2]) <= 1.0 { m } else { 0.5 * m };
            px.push((g * 255.0).round() as u8);
        }
    }
    px
}

/// Write one heatmap per band as `<stem>_m<k>.png`; returns the paths.
pub fn write_heatmaps(fb: &FilterBankSpec, dir: &Path, stem: &str, size: usize) -> FilterResult<Vec<std::path::PathBuf>> {
    let mut out = Vec::new();
    for k in 0..fb.len() {
        let png = encode_gray_png(size as u32, size as u32, &modulus_image(fb, k, size))?;
        let path = dir.join(format!("{stem}_m{k}.png"));
        std::fs::write(&path, png)?;
        out.push(path);
    }
    Ok(out)
}
