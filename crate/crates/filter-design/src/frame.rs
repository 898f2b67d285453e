//! The closed-form six-direction hexagonal Parseval frame filters.

use std::f64::consts::PI;

use partition::Family;

use crate::bank::{BankKind, FilterBankSpec, TransferGrid, IDENTITY};
use crate::error::{FilterError, FilterResult};
use crate::grid::{fold_perturbed, hex_gauge, hex_real};
use crate::ramp::profile;
use partition::admissible::{canonical_rotations, grid_rotation};

/// Phases `η_k^fr` (coordinates of `Λ`): `(0,0), (2,0), (1,√3), (−1,√3),
/// (−2,0), (−1,−√3), (1,−√3)` in real coordinates.
pub const FRAME_ETA: [[i64; 2]; 7] = [[0, 0], [2, -1], [1, 1], [-1, 2], [-2, 1], [-1, -1], [1, -2]];

/// The frame's common subsampling lattice `2Λ`.
pub const FRAME_LATTICE: [[i64; 2]; 2] = [[2, 0], [0, 2]];

pub const DEFAULT_FRAME_EPS: f64 = 0.30;

/// Upper bound (exclusive) on the frame transition width: beyond it the two
/// transition strips of a band overlap outside the flat low-pass core.
pub fn max_frame_eps() -> f64 {
    PI / (6.0 + 2.0 * 3f64.sqrt())
}

/// Direction of the infinitesimal perturbation used to evaluate the
/// (piecewise-defined) filters on cell-boundary grid points.
const PERTURB: [f64; 2] = [1.0, 1e-3];

/// Low-pass modulus and its complement `(ℳ_0, ℛ)` at a folded frequency.
fn lowpass(x: [f64; 2], eps: f64, p_smooth: u32) -> (f64, f64) {
    let e = eps / PI;
    profile((hex_gauge(x) - (0.5 - e)) / e, p_smooth)
}

/// `𝒩_1` on the cell.
fn n1(x: [f64; 2], eps: f64, p_smooth: u32) -> f64 {
    if hex_gauge(x) <= 0.5 - eps / PI {
        return 0.0;
    }
    let s3 = 3f64.sqrt();
    let (x1, x2) = (x[0], x[1]);
    let core = (x1 <= 0.0 && (x1 + 2.0 * eps) / s3 <= x2 && x2 <= -eps)
        || (x1 >= 0.0 && (x1 - 2.0 * eps) / s3 >= x2 && x2 >= eps);
    if core {
        return 1.0;
    }
    if x2.abs() <= eps {
        let t = if x1 < 0.0 { x2 / (2.0 * eps) + 0.5 } else { -x2 / (2.0 * eps) + 0.5 };
        return profile(t, p_smooth).0;
    }
    let w = x2 - x1 / s3;
    if s3 / 2.0 * w.abs() <= eps {
        let t = if x1 < 0.0 { -w * s3 / (4.0 * eps) + 0.5 } else { w * s3 / (4.0 * eps) + 0.5 };
        return profile(t, p_smooth).0;
    }
    0.0
}

fn mat_vec(m: [[f64; 2]; 2], x: [f64; 2]) -> [f64; 2] {
    [m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]]
}

/// `T_k` with `𝒩_k = 𝒩_1 ∘ T_k`.
fn band_maps() -> [[[f64; 2]; 2]; 6] {
    let (c, s) = ((PI / 3.0).cos(), (PI / 3.0).sin());
    let id = [[1.0, 0.0], [0.0, 1.0]];
    let f = [[1.0, 0.0], [0.0, -1.0]];
    let rp = [[c, -s], [s, c]];
    let rm = [[c, s], [-s, c]];
    let fm = |a: [[f64; 2]; 2], b: [[f64; 2]; 2]| {
        let mut o = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                o[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        o
    };
    // 𝒩_2 reflects 𝒩_1; 𝒩_3,𝒩_4 live on A_1, A_2 rotated by −π/3; 𝒩_5,𝒩_6 by +π/3
    [id, f, rp, fm(f, rp), rm, fm(f, rm)]
}

/// Frame filter bank with transition width `eps ∈ (0, π/(6+2√3))`.
pub fn frame_filters(eps: f64, p_smooth: u32, grid_n: usize) -> FilterResult<FilterBankSpec> {
    if !(eps > 0.0 && eps < max_frame_eps()) {
        return Err(FilterError::ValueError(format!(
            "frame eps = {eps} outside the valid range (0, π/(6+2√3) ≈ {:.4})",
            max_frame_eps()
        )));
    }
    frame_filters_unchecked(eps, p_smooth, grid_n)
}

/// Frame construction without the transition-width check (for studying
/// failures outside the valid range); only requires `0 < eps < π/2`.
pub fn frame_filters_unchecked(eps: f64, p_smooth: u32, grid_n: usize) -> FilterResult<FilterBankSpec> {
    if !(eps > 0.0 && eps < PI / 2.0) {
        return Err(FilterError::ValueError(format!("frame eps = {eps} must lie in (0, π/2)")));
    }
    if grid_n < 8 || grid_n % 2 != 0 {
        return Err(FilterError::ValueError(format!("grid_n must be even and at least 8, got {grid_n}")));
    }
    let n = grid_n;
    let maps = band_maps();
    // one-sided limits taken along R^{−r}·PERTURB, r chosen per orbit of Λ*/2
    // so that the bank is rotation-covariant and origin-symmetric
    let h = (n / 2) as i64;
    let (rot, order) = grid_rotation(Family::HexagonalFrame);
    let rs = canonical_rotations(n as i64, &[[0, 0], [h, 0], [0, h], [h, h]], rot, order);
    let mut mods = vec![vec![0.0; n * n]; 7];
    for i in 0..n * n {
        let x0 = hex_real((i % n) as f64, (i / n) as f64, n);
        let a = -f64::from(rs[i]) * PI / 3.0;
        let d = [a.cos() * PERTURB[0] - a.sin() * PERTURB[1], a.sin() * PERTURB[0] + a.cos() * PERTURB[1]];
        let x = fold_perturbed(x0, d);
        let (m0, r) = lowpass(x, eps, p_smooth);
        mods[0][i] = m0;
        if r == 0.0 {
            continue;
        }
        for (k, t) in maps.iter().enumerate() {
            let y = fold_perturbed(mat_vec(*t, x), mat_vec(*t, d));
            mods[k + 1][i] = n1(y, eps, p_smooth) * r;
        }
    }
    let filters = mods
        .into_iter()
        .enumerate()
        .map(|(k, modulus)| TransferGrid { band: k, lattice: FRAME_LATTICE, eta: FRAME_ETA[k], modulus })
        .collect();
    Ok(FilterBankSpec {
        kind: BankKind::Frame,
        family: Family::HexagonalFrame,
        grid_n,
        epsilon: eps,
        p_smooth,
        parent: IDENTITY,
        filters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_one_core_is_flat() {
        let eps = 0.25;
        // a point well inside A_1 near the outer edge
        let x = [0.9 * PI, 0.3];
        assert_eq!(n1(x, eps, 0), 1.0);
        assert_eq!(n1([0.9 * PI, -0.6], eps, 0), 0.0);
        assert!((n1([0.9 * PI, 0.0], eps, 0) - (PI / 4.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn range_check() {
        assert!(frame_filters(0.4, 0, 16).is_err());
        assert!(frame_filters(0.3, 0, 16).is_ok());
        assert!(frame_filters_unchecked(0.4, 0, 16).is_ok());
    }
}
