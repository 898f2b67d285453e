//! Real sample grids and their PGM/PNG I/O.
//!
//! Sample `(row r, column c)` is the lattice point `c·e1 + r·e2` of `Λ`; the
//! grid is one period of a periodic signal.

use std::io::Write;
use std::path::Path;

use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, GrayImage, ImageEncoder, ImageFormat, Luma};

use crate::error::{TransformError, TransformResult};

#[derive(Debug, Clone, PartialEq)]
pub struct ImageGrid {
    pub rows: usize,
    pub cols: usize,
    /// Row-major samples.
    pub samples: Vec<f64>,
}

impl ImageGrid {
    pub fn new(rows: usize, cols: usize, samples: Vec<f64>) -> TransformResult<Self> {
        if samples.len() != rows * cols {
            return Err(TransformError::DimensionMismatch(format!(
                "{} samples for a {rows}×{cols} grid",
                samples.len()
            )));
        }
        Ok(Self { rows, cols, samples })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, samples: vec![0.0; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let samples = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Self { rows, cols, samples }
    }

    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.samples[r * self.cols + c]
    }

    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|x| x * x).sum()
    }

    /// `‖self − other‖₂`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.samples.iter().zip(&other.samples).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    /// Circular shift by `(dr, dc)`: `out[r + dr][c + dc] = self[r][c]`.
    pub fn shifted(&self, dr: i64, dc: i64) -> Self {
        let (rows, cols) = (self.rows as i64, self.cols as i64);
        Self::from_fn(self.rows, self.cols, |r, c| {
            let (r0, c0) = ((r as i64 - dr).rem_euclid(rows), (c as i64 - dc).rem_euclid(cols));
            self.samples[(r0 * cols + c0) as usize]
        })
    }

    /// Read an 8- or 16-bit grayscale (or colour, converted to luma) PGM or PNG.
    /// Samples are on the 8-bit scale 0..=255.
    pub fn load(path: impl AsRef<Path>) -> TransformResult<Self> {
        let path = path.as_ref();
        let img = image::open(path).map_err(|e| TransformError::FormatError(format!("{}: {e}", path.display())))?;
        let g = img.to_luma16();
        let (cols, rows) = (g.width() as usize, g.height() as usize);
        let samples = g.pixels().map(|p| p.0[0] as f64 / 257.0).collect();
        Self::new(rows, cols, samples)
    }

    /// Write as 8-bit grayscale; the format follows the extension (`.pgm` or `.png`).
    pub fn save(&self, path: impl AsRef<Path>) -> TransformResult<()> {
        let path = path.as_ref();
        let err = |e: image::ImageError| TransformError::FormatError(format!("{}: {e}", path.display()));
        let mut img = GrayImage::new(self.cols as u32, self.rows as u32);
        for (i, p) in img.pixels_mut().enumerate() {
            *p = Luma([self.samples[i].round().clamp(0.0, 255.0) as u8]);
        }
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("pgm") => {
                // binary P5, not the PAM header the generic encoder picks
                let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
                PnmEncoder::new(&mut out)
                    .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary))
                    .write_image(img.as_raw(), img.width(), img.height(), ExtendedColorType::L8)
                    .map_err(err)?;
                Ok(out.flush()?)
            }
            Some("png") => img.save_with_format(path, ImageFormat::Png).map_err(err),
            other => Err(TransformError::FormatError(format!("unsupported image extension {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_is_circular() {
        let x = ImageGrid::from_fn(3, 4, |r, c| (r * 4 + c) as f64);
        let y = x.shifted(1, -1);
        assert_eq!(y.at(1, 0), x.at(0, 1));
        assert_eq!(y.at(0, 3), x.at(2, 0));
        assert_eq!(y.shifted(-1, 1), x);
    }

    #[test]
    fn size_is_checked() {
        assert!(ImageGrid::new(2, 2, vec![0.0; 3]).is_err());
    }
}
