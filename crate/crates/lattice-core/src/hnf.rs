//! Hermite normal form for integer generating sets of planar lattices.

use num_integer::Integer;

use crate::error::{LatticeError, LatticeResult};

/// 2×2 integer matrix, row-major; columns are lattice generators.
pub type IMat2 = [[i64; 2]; 2];

/// Upper-triangular column Hermite form `[[a, b], [0, d]]` with `a, d > 0`
/// and `0 ≤ b < a`. The columns `(a, 0)` and `(b, d)` generate the same
/// subgroup of Z² as `cols`.
pub fn hnf_columns(cols: &[[i64; 2]]) -> LatticeResult<IMat2> {
    let mut pivot: Option<[i64; 2]> = None;
    let mut a = 0i64;
    for &c in cols {
        let c = match pivot {
            None if c[1] != 0 => {
                pivot = Some(c);
                continue;
            }
            None => c,
            Some(p) if c[1] != 0 => {
                // combine so the pivot carries gcd of the second entries
                let eg = p[1].extended_gcd(&c[1]);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let newp = [x * p[0] + y * c[0], g];
                let rest = [(c[1] / g) * p[0] - (p[1] / g) * c[0], 0];
                pivot = Some(newp);
                rest
            }
            Some(_) => c,
        };
        a = a.gcd(&c[0]);
    }
    let mut p = pivot.ok_or_else(|| LatticeError::InvalidLattice("generators are rank deficient".into()))?;
    if a == 0 {
        return Err(LatticeError::InvalidLattice("generators are rank deficient".into()));
    }
    if p[1] < 0 {
        p = [-p[0], -p[1]];
    }
    Ok([[a, p[0].rem_euclid(a)], [0, p[1]]])
}

/// Hermite form of the lattice spanned by the columns of `m`.
pub fn hnf(m: &IMat2) -> LatticeResult<IMat2> {
    hnf_columns(&[[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
}

pub fn det(m: &IMat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Whether `x` lies in the column span of `m` over Z.
pub fn contains(m: &IMat2, x: [i64; 2]) -> bool {
    let d = det(m);
    if d == 0 {
        return false;
    }
    // adj(m)·x ≡ 0 (mod det)
    let y0 = m[1][1] * x[0] - m[0][1] * x[1];
    let y1 = -m[1][0] * x[0] + m[0][0] * x[1];
    y0 % d == 0 && y1 % d == 0
}

/// Intersection of two full-rank sublattices of Z², returned in Hermite form.
pub fn intersect(m1: &IMat2, m2: &IMat2) -> LatticeResult<IMat2> {
    let d1 = det(m1).abs();
    let d2 = det(m2).abs();
    if d1 == 0 || d2 == 0 {
        return Err(LatticeError::InvalidLattice("singular sublattice".into()));
    }
    // lcm·Z² lies in both; the intersection is generated by it together
    // with the common points of one fundamental box
    let l = d1.lcm(&d2);
    let mut cols = vec![[l, 0], [0, l]];
    let h1 = hnf(m1)?;
    for j in 0..l {
        for i in 0..l {
            if contains(&h1, [i, j]) && contains(m2, [i, j]) && (i, j) != (0, 0) {
                cols.push([i, j]);
            }
        }
    }
    hnf_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_scaled_identity() {
        assert_eq!(hnf(&[[2, 0], [0, 2]]).unwrap(), [[2, 0], [0, 2]]);
    }

    #[test]
    fn hnf_preserves_determinant() {
        let m = [[4, 4], [-2, 0]];
        let h = hnf(&m).unwrap();
        assert_eq!(det(&h), det(&m).abs());
        assert!(contains(&h, [4, -2]) && contains(&h, [4, 0]));
        assert!(contains(&m, [h[0][0], 0]) && contains(&m, [h[0][1], h[1][1]]));
    }

    #[test]
    fn rank_deficient_is_rejected() {
        assert!(hnf(&[[1, 2], [2, 4]]).is_err());
        assert!(hnf_columns(&[]).is_err());
    }

    #[test]
    fn intersection_of_coprime_scalings() {
        let h = intersect(&[[2, 0], [0, 2]], &[[3, 0], [0, 3]]).unwrap();
        assert_eq!(h, [[6, 0], [0, 6]]);
    }
}
