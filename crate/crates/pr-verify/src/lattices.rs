//! Integer-lattice helpers in coordinates of `Λ`.

use lattice_core::{hnf, IMat2};
use num_rational::Rational64;

use crate::error::{PrError, PrResult};

pub type Q = Rational64;

/// Whether the dual point `g` lies in `(m·Z²)*`, i.e. `mᵀg` is integral.
pub fn in_dual(m: &IMat2, g: &[Q; 2]) -> bool {
    (0..2).all(|j| (g[0] * m[0][j] + g[1] * m[1][j]).is_integer())
}

/// `∩_k Γ_k`.
pub fn common(lats: &[IMat2]) -> PrResult<IMat2> {
    let mut acc = hnf::hnf(&lats[0])?;
    for l in &lats[1..] {
        acc = hnf::intersect(&acc, l)?;
    }
    Ok(acc)
}

/// Representatives of `sub*/parent*` as dual points, zero first.
pub fn dual_reps(sub: &IMat2, parent: &IMat2) -> Vec<[Q; 2]> {
    let d = hnf::det(sub).abs();
    let want = (d / hnf::det(parent).abs()) as usize;
    let mut reps: Vec<[Q; 2]> = vec![[Q::from_integer(0), Q::from_integer(0)]];
    'outer: for x in 0..d {
        for y in 0..d {
            let g = [Q::new(x, d), Q::new(y, d)];
            if in_dual(sub, &g) && !reps.iter().any(|r| in_dual(parent, &[g[0] - r[0], g[1] - r[1]])) {
                reps.push(g);
                if reps.len() == want {
                    break 'outer;
                }
            }
        }
    }
    reps
}

/// Representatives of `lat/sub` (coordinates of `Λ`), zero first.
pub fn primal_reps(lat: &IMat2, sub: &IMat2) -> Vec<[i64; 2]> {
    let want = (hnf::det(sub) / hnf::det(lat)).unsigned_abs() as usize;
    let mut reps = vec![[0i64, 0i64]];
    let r = hnf::det(sub).abs();
    'outer: for z0 in -r..=r {
        for z1 in -r..=r {
            let e = [lat[0][0] * z0 + lat[0][1] * z1, lat[1][0] * z0 + lat[1][1] * z1];
            if !reps.iter().any(|p| hnf::contains(sub, [e[0] - p[0], e[1] - p[1]])) {
                reps.push(e);
                if reps.len() == want {
                    break 'outer;
                }
            }
        }
    }
    reps
}

/// Grid shift of a dual point on the `n`-grid.
pub fn shift(g: &[Q; 2], n: usize) -> PrResult<[i64; 2]> {
    let s = [g[0] * n as i64, g[1] * n as i64];
    if !(s[0].is_integer() && s[1].is_integer()) {
        return Err(PrError::GridAlignment(format!("shift ({}, {}) is not on the {n}-grid", g[0], g[1])));
    }
    Ok([s[0].to_integer(), s[1].to_integer()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_sizes() {
        let h: IMat2 = [[4, 4], [-4, -2]];
        assert_eq!(dual_reps(&h, &[[1, 0], [0, 1]]).len(), 8);
        assert_eq!(primal_reps(&[[2, 0], [0, 2]], &h).len(), 2);
        let two: IMat2 = [[2, 0], [0, 2]];
        assert_eq!(dual_reps(&two, &[[1, 0], [0, 1]]).len(), 4);
    }
}
