//! Planar lattices with exact generators.

use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, LatticeResult};
use crate::hnf::{self, IMat2};
use crate::qsqrt3::QSqrt3;

/// Which plane a lattice lives in. Frequency generators are stored in
/// units of π, so `(1, 0)` means the real vector `(π, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Spatial,
    Frequency,
}

impl Domain {
    pub fn dual(self) -> Self {
        match self {
            Domain::Spatial => Domain::Frequency,
            Domain::Frequency => Domain::Spatial,
        }
    }

    /// Real scale factor applied to stored entries.
    pub fn unit(self) -> f64 {
        match self {
            Domain::Spatial => 1.0,
            Domain::Frequency => std::f64::consts::PI,
        }
    }
}

pub type Vec2 = [QSqrt3; 2];
pub type Mat2 = [[QSqrt3; 2]; 2];

/// Full-rank lattice `E·Z²`; the columns of `generators` are the basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice2 {
    generators: Mat2,
    domain: Domain,
}

fn q(n: i64, d: i64) -> QSqrt3 {
    QSqrt3::rat(n, d)
}

pub fn mat_det(m: &Mat2) -> QSqrt3 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn mat_inv(m: &Mat2) -> LatticeResult<Mat2> {
    let d = mat_det(m);
    let r = d
        .recip()
        .map_err(|_| LatticeError::InvalidLattice("singular generator matrix".into()))?;
    Ok([
        [m[1][1] * r, -m[0][1] * r],
        [-m[1][0] * r, m[0][0] * r],
    ])
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[QSqrt3::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_vec(a: &Mat2, v: &Vec2) -> Vec2 {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

fn imat_to_mat(c: &IMat2) -> Mat2 {
    [
        [QSqrt3::int(c[0][0]), QSqrt3::int(c[0][1])],
        [QSqrt3::int(c[1][0]), QSqrt3::int(c[1][1])],
    ]
}

impl Lattice2 {
    pub fn new(generators: Mat2, domain: Domain) -> LatticeResult<Self> {
        if mat_det(&generators).is_zero() {
            return Err(LatticeError::InvalidLattice("generator matrix is singular".into()));
        }
        Ok(Self { generators, domain })
    }

    /// Z².
    pub fn square() -> Self {
        Self {
            generators: [[q(1, 1), q(0, 1)], [q(0, 1), q(1, 1)]],
            domain: Domain::Spatial,
        }
    }

    /// Hexagonal lattice with basis `(1, 1/√3)`, `(0, 2/√3)`.
    pub fn hexagonal() -> Self {
        Self {
            generators: [
                [q(1, 1), q(0, 1)],
                [QSqrt3::inv_sqrt3(1, 1), QSqrt3::inv_sqrt3(2, 1)],
            ],
            domain: Domain::Spatial,
        }
    }

    /// Sublattice whose generators have integer coordinates `c` (columns) in this basis.
    pub fn sublattice(&self, c: &IMat2) -> LatticeResult<Self> {
        Self::new(mat_mul(&self.generators, &imat_to_mat(c)), self.domain)
    }

    /// `k·Λ`
    pub fn scaled(&self, k: i64) -> Self {
        let mut g = self.generators;
        for row in g.iter_mut() {
            for x in row.iter_mut() {
                *x = *x * k;
            }
        }
        Self { generators: g, domain: self.domain }
    }

    pub fn generators(&self) -> &Mat2 {
        &self.generators
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Real generator matrix (π applied for frequency lattices).
    pub fn generators_f64(&self) -> [[f64; 2]; 2] {
        let u = self.domain.unit();
        let g = &self.generators;
        [
            [g[0][0].to_f64() * u, g[0][1].to_f64() * u],
            [g[1][0].to_f64() * u, g[1][1].to_f64() * u],
        ]
    }

    /// Covolume |det E| in stored units.
    pub fn det(&self) -> QSqrt3 {
        mat_det(&self.generators).abs()
    }

    /// `Λ* = 2π·E^{-T}·Z²`.
    pub fn reciprocal(&self) -> Self {
        let inv = mat_inv(&self.generators).expect("lattice is full rank");
        // stored units: spatial ↔ frequency/π, so the factor is 2 either way
        let t = [
            [inv[0][0] * 2, inv[1][0] * 2],
            [inv[0][1] * 2, inv[1][1] * 2],
        ];
        Self { generators: t, domain: self.domain.dual() }
    }

    /// Coordinates of `v` in this basis.
    pub fn coords(&self, v: &Vec2) -> Vec2 {
        mat_vec(&mat_inv(&self.generators).expect("lattice is full rank"), v)
    }

    pub fn point(&self, c: [i64; 2]) -> Vec2 {
        mat_vec(&self.generators, &[QSqrt3::int(c[0]), QSqrt3::int(c[1])])
    }

    pub fn contains(&self, v: &Vec2) -> bool {
        self.coords(v).iter().all(|x| x.as_integer().is_some())
    }

    /// Integer matrix whose columns are `child`'s generators in this basis.
    pub fn child_coords(&self, child: &Lattice2) -> LatticeResult<IMat2> {
        if self.domain != child.domain {
            return Err(LatticeError::NotSublattice("lattices live in different domains".into()));
        }
        let inv = mat_inv(&self.generators)?;
        let c = mat_mul(&inv, &child.generators);
        let mut out = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = c[i][j].as_integer().ok_or_else(|| {
                    LatticeError::NotSublattice(format!("generator coordinate {} is not an integer", c[i][j]))
                })?;
            }
        }
        Ok(out)
    }

    pub fn is_sublattice_of(&self, parent: &Lattice2) -> bool {
        parent.child_coords(self).is_ok()
    }

    /// Equality as point sets.
    pub fn same_points(&self, other: &Lattice2) -> bool {
        self.is_sublattice_of(other) && other.is_sublattice_of(self)
    }

    /// Gram matrix `EᵀE` in stored units (π² omitted for frequency lattices).
    pub fn gram(&self) -> Mat2 {
        let g = &self.generators;
        let mut out = [[QSqrt3::zero(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = g[0][i] * g[0][j] + g[1][i] * g[1][j];
            }
        }
        out
    }
}

/// `|parent / child|`.
pub fn quotient_index(parent: &Lattice2, child: &Lattice2) -> LatticeResult<i64> {
    Ok(hnf::det(&parent.child_coords(child)?).abs())
}

/// Coset representatives of `parent / child`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientReps {
    pub parent: Lattice2,
    pub child: Lattice2,
    /// Hermite form `[[a, b], [0, d]]` of `child` in `parent` coordinates.
    pub hnf: IMat2,
    /// Integer parent coordinates, `(i, j)` with `0 ≤ i < a`, `0 ≤ j < d`, `j` outermost.
    pub reps: Vec<[i64; 2]>,
}

impl QuotientReps {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Representatives as exact vectors.
    pub fn vectors(&self) -> Vec<Vec2> {
        self.reps.iter().map(|&r| self.parent.point(r)).collect()
    }

    /// Canonical representative of the coset containing parent coordinates `x`.
    pub fn reduce(&self, x: [i64; 2]) -> [i64; 2] {
        let [[a, b], [_, d]] = self.hnf;
        let j = x[1].rem_euclid(d);
        let z = (x[1] - j) / d;
        [(x[0] - b * z).rem_euclid(a), j]
    }

    /// Position of the coset of `x` in `reps`.
    pub fn index_of(&self, x: [i64; 2]) -> usize {
        let [i, j] = self.reduce(x);
        (j * self.hnf[0][0] + i) as usize
    }
}

pub fn coset_reps(parent: &Lattice2, child: &Lattice2) -> LatticeResult<QuotientReps> {
    let h = hnf::hnf(&parent.child_coords(child)?)?;
    let mut reps = Vec::with_capacity((h[0][0] * h[1][1]) as usize);
    for j in 0..h[1][1] {
        for i in 0..h[0][0] {
            reps.push([i, j]);
        }
    }
    Ok(QuotientReps { parent: parent.clone(), child: child.clone(), hnf: h, reps })
}

/// `a ∩ b` for two sublattices of a common `parent`.
pub fn intersection(parent: &Lattice2, a: &Lattice2, b: &Lattice2) -> LatticeResult<Lattice2> {
    let h = hnf::intersect(&parent.child_coords(a)?, &parent.child_coords(b)?)?;
    parent.sublattice(&h)
}

/// Intersection of any number of sublattices of `parent`.
pub fn common_sublattice(parent: &Lattice2, lats: &[Lattice2]) -> LatticeResult<Lattice2> {
    let mut acc = parent.clone();
    for l in lats {
        acc = intersection(parent, &acc, l)?;
    }
    // normalize generators to the Hermite basis
    let h = hnf::hnf(&parent.child_coords(&acc)?)?;
    parent.sublattice(&h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_reciprocal_basis() {
        let r = Lattice2::hexagonal().reciprocal();
        assert_eq!(r.domain(), Domain::Frequency);
        let g = r.generators();
        // 2·[[1, -1/2], [0, √3/2]] in units of π
        assert_eq!(g[0][0], QSqrt3::int(2));
        assert_eq!(g[0][1], QSqrt3::int(-1));
        assert_eq!(g[1][0], QSqrt3::zero());
        assert_eq!(g[1][1], QSqrt3::sqrt3(1, 1));
    }

    #[test]
    fn double_reciprocal_is_identity() {
        let h = Lattice2::hexagonal();
        assert!(h.reciprocal().reciprocal().same_points(&h));
    }

    #[test]
    fn singular_rejected() {
        let z = QSqrt3::zero();
        let o = QSqrt3::one();
        assert!(matches!(
            Lattice2::new([[o, o], [z, z]], Domain::Spatial),
            Err(LatticeError::InvalidLattice(_))
        ));
    }

    #[test]
    fn reduce_matches_reps() {
        let h = Lattice2::hexagonal();
        let c = h.sublattice(&[[4, 4], [-2, 0]]).unwrap();
        let q = coset_reps(&h, &c).unwrap();
        for (n, r) in q.reps.iter().enumerate() {
            assert_eq!(q.index_of(*r), n);
            assert_eq!(q.index_of([r[0] + 4, r[1] - 2]), n);
        }
    }
}
