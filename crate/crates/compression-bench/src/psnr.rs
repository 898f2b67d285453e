use transform_engine::ImageGrid;

use crate::error::{BenchError, BenchResult};

/// Value returned for identical images.
pub const PSNR_CAP: f64 = 200.0;

/// `10·log10(255²·N / ‖f − fc‖²)` in dB, capped at [`PSNR_CAP`].
pub fn psnr(f: &ImageGrid, fc: &ImageGrid) -> BenchResult<f64> {
    if (f.rows, f.cols) != (fc.rows, fc.cols) {
        return Err(BenchError::DimensionMismatch(format!(
            "{}×{} vs {}×{}",
            f.rows, f.cols, fc.rows, fc.cols
        )));
    }
    let err: f64 = f.samples.iter().zip(&fc.samples).map(|(a, b)| (a - b) * (a - b)).sum();
    if err == 0.0 {
        return Ok(PSNR_CAP);
    }
    let n = f.samples.len() as f64;
    Ok((10.0 * (255.0f64.powi(2) * n / err).log10()).min(PSNR_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let f = ImageGrid::from_fn(8, 8, |r, c| (r * 8 + c) as f64);
        assert_eq!(psnr(&f, &f).unwrap(), PSNR_CAP);
        let g = ImageGrid::from_fn(8, 8, |r, c| f.at(r, c) + 1.0);
        assert!((psnr(&f, &g).unwrap() - 10.0 * 65025f64.log10()).abs() < 1e-12);
        assert!((psnr(&f, &g).unwrap() - 48.1308).abs() < 1e-4);
        let h = ImageGrid::from_fn(8, 8, |r, c| f.at(r, c) + 255.0);
        assert!(psnr(&f, &h).unwrap().abs() < 1e-12);
        assert!(psnr(&f, &ImageGrid::zeros(4, 8)).is_err());
    }
}
