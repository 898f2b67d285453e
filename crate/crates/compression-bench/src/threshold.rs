//! Keep-the-largest thresholding.

use std::cmp::Ordering;

use num_complex::Complex64;
use transform_engine::SubbandPyramid;

use crate::error::{BenchError, BenchResult};

/// Tie-break key of a coefficient: `(level, stage, band, row-major index)`.
pub type Key = (u32, u32, usize, usize);

/// Mask of the `keep` largest magnitudes; equal magnitudes go to the smaller key.
pub fn select_top(mags: &[f64], keys: &[Key], keep: usize) -> BenchResult<Vec<bool>> {
    if mags.len() != keys.len() {
        return Err(BenchError::DimensionMismatch(format!("{} magnitudes, {} keys", mags.len(), keys.len())));
    }
    if keep > mags.len() {
        return Err(BenchError::ValueError(format!("keep = {keep} exceeds the {} coefficients", mags.len())));
    }
    let mut mask = vec![false; mags.len()];
    if keep == 0 {
        return Ok(mask);
    }
    let order = |&a: &usize, &b: &usize| -> Ordering { mags[b].total_cmp(&mags[a]).then(keys[a].cmp(&keys[b])) };
    let mut idx: Vec<usize> = (0..mags.len()).collect();
    if keep < idx.len() {
        idx.select_nth_unstable_by(keep - 1, order);
    }
    idx[..keep].iter().for_each(|&i| mask[i] = true);
    Ok(mask)
}

/// A pyramid after thresholding, with the number of coefficients kept.
#[derive(Debug, Clone)]
pub struct Thresholded {
    pub pyramid: SubbandPyramid,
    pub kept: usize,
}

/// Magnitudes and tie keys in the pyramid's storage order.
pub fn pyramid_keys(p: &SubbandPyramid) -> (Vec<f64>, Vec<Key>) {
    let mut mags = Vec::with_capacity(p.coefficient_count());
    let mut keys = Vec::with_capacity(p.coefficient_count());
    for b in p.bands.iter().chain(std::iter::once(&p.scaling)) {
        for (i, z) in b.coeffs.iter().enumerate() {
            mags.push(z.norm());
            keys.push((b.id.level, b.id.stage, b.id.band, i));
        }
    }
    (mags, keys)
}

/// Zero all but the `keep` largest-magnitude coefficients.
pub fn topn_threshold(p: &SubbandPyramid, keep: usize) -> BenchResult<Thresholded> {
    let (mags, keys) = pyramid_keys(p);
    let mask = select_top(&mags, &keys, keep)?;
    let mut out = p.clone();
    for (z, &m) in out.coefficients_mut().zip(&mask) {
        if !m {
            *z = Complex64::default();
        }
    }
    Ok(Thresholded { pyramid: out, kept: keep })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_prefer_smaller_keys() {
        let mags = [1.0, 2.0, 2.0, 2.0, 0.5];
        let keys: Vec<Key> = vec![(1, 0, 1, 0), (2, 0, 1, 0), (1, 0, 2, 5), (1, 0, 2, 3), (1, 0, 1, 1)];
        let m = select_top(&mags, &keys, 2).unwrap();
        assert_eq!(m, [false, false, true, true, false]);
        assert_eq!(select_top(&mags, &keys, 5).unwrap(), [true; 5]);
        assert_eq!(select_top(&mags, &keys, 0).unwrap(), [false; 5]);
        assert!(select_top(&mags, &keys, 6).is_err());
    }
}
