//! Voronoi reciprocal cells and the half-open folding rule.
//!
//! A point on the cell boundary belongs to the cell iff the outward normal of
//! the edge it lies on is lexicographically negative. With this rule every
//! frequency has exactly one representative in the cell.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::lattice::{Lattice2, Vec2};
use crate::qsqrt3::QSqrt3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellKind {
    Square,
    Hexagon,
    GenericParallelogram,
}

/// Half-space `⟨ξ, normal⟩ ≤ offset`, with equality allowed iff `closed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    /// The relevant dual-lattice vector, in dual-basis coordinates.
    pub lattice_coords: [i64; 2],
    /// Outward normal in stored units (the relevant vector itself).
    pub normal: Vec2,
    /// `|normal|²/2`.
    pub offset: QSqrt3,
    pub closed: bool,
}

/// Integer form of a facet on a frequency grid: the grid point `(u, v)/n`
/// satisfies it iff `w·(u, v) < h·n`, or `= h·n` when `closed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridFacet {
    pub w: [i64; 2],
    pub h: i64,
    pub closed: bool,
}

/// Voronoi cell of `owner.reciprocal()` around the origin.
#[derive(Debug, Clone)]
pub struct ReciprocalCell {
    owner: Lattice2,
    dual: Lattice2,
    kind: CellKind,
    facets: Vec<Facet>,
    int_facets: Option<Vec<GridFacet>>,
    facets_f64: Vec<([f64; 2], f64, bool)>,
}

fn dot(g: &[[QSqrt3; 2]; 2], x: [i64; 2], y: [i64; 2]) -> QSqrt3 {
    let gy = [
        g[0][0] * y[0] + g[0][1] * y[1],
        g[1][0] * y[0] + g[1][1] * y[1],
    ];
    gy[0] * x[0] + gy[1] * x[1]
}

fn lex_negative(v: &Vec2) -> bool {
    let s0 = v[0].signum();
    s0 < 0 || (s0 == 0 && v[1].signum() < 0)
}

impl ReciprocalCell {
    /// Voronoi reciprocal cell of the lattice `owner`.
    pub fn voronoi(owner: &Lattice2) -> Self {
        let dual = owner.reciprocal();
        let g = dual.gram();
        // Lagrange–Gauss reduction in dual coordinates
        let (mut b1, mut b2) = ([1i64, 0], [0i64, 1]);
        loop {
            if dot(&g, b2, b2) < dot(&g, b1, b1) {
                std::mem::swap(&mut b1, &mut b2);
            }
            let (m12, m11) = (dot(&g, b1, b2), dot(&g, b1, b1));
            if (m12 * 2).abs() <= m11 {
                break;
            }
            let mu = (m12.to_f64() / m11.to_f64()).round() as i64;
            b2 = [b2[0] - mu * b1[0], b2[1] - mu * b1[1]];
        }
        let cross = dot(&g, b1, b2).signum();
        let mut relevant = vec![b1, b2];
        let kind = if cross == 0 {
            if dot(&g, b1, b1) == dot(&g, b2, b2) {
                CellKind::Square
            } else {
                CellKind::GenericParallelogram
            }
        } else {
            let s = -(cross as i64);
            relevant.push([b1[0] + s * b2[0], b1[1] + s * b2[1]]);
            CellKind::Hexagon
        };
        let mut facets = Vec::new();
        for r in relevant {
            for r in [r, [-r[0], -r[1]]] {
                let normal = dual.point(r);
                let rr = dot(&g, r, r);
                let offset = QSqrt3::new(rr.a / 2, rr.b / 2);
                let closed = lex_negative(&normal);
                facets.push(Facet { lattice_coords: r, normal, offset, closed });
            }
        }
        let int_facets = Self::integer_facets(&g, &facets);
        let u = dual.domain().unit();
        let facets_f64 = facets
            .iter()
            .map(|f| {
                ([f.normal[0].to_f64() * u, f.normal[1].to_f64() * u], f.offset.to_f64() * u * u, f.closed)
            })
            .collect();
        Self { owner: owner.clone(), dual, kind, facets, int_facets, facets_f64 }
    }

    /// Integer forms `w·(u, v) ≤ h·n` when the dual Gram matrix is rational.
    fn integer_facets(g: &[[QSqrt3; 2]; 2], facets: &[Facet]) -> Option<Vec<GridFacet>> {
        let mut out = Vec::new();
        for f in facets {
            let r = f.lattice_coords;
            let w = [dot(g, [1, 0], r), dot(g, [0, 1], r)];
            if !(w[0].is_rational() && w[1].is_rational() && f.offset.is_rational()) {
                return None;
            }
            let den = w[0].a.denom().lcm(w[1].a.denom()).lcm(f.offset.a.denom());
            let sc = |x: &QSqrt3| (x.a * den).to_integer();
            out.push(GridFacet { w: [sc(&w[0]), sc(&w[1])], h: sc(&f.offset), closed: f.closed });
        }
        Some(out)
    }

    pub fn owner(&self) -> &Lattice2 {
        &self.owner
    }

    /// The period lattice `Λ*`.
    pub fn dual(&self) -> &Lattice2 {
        &self.dual
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Facets as integer forms in dual-basis coordinates, when the dual Gram
    /// matrix is rational (true for the square and hexagonal lattices).
    pub fn grid_facets(&self) -> Option<&[GridFacet]> {
        self.int_facets.as_deref()
    }

    /// Half-open membership test for a real frequency.
    pub fn contains(&self, xi: [f64; 2]) -> bool {
        self.facets_f64.iter().all(|(n, h, closed)| {
            let s = xi[0] * n[0] + xi[1] * n[1] - h;
            let tol = 1e-12 * (h.abs() + 1.0);
            s < -tol || (*closed && s <= tol)
        })
    }

    /// Exact half-open membership test.
    pub fn contains_exact(&self, xi: &Vec2) -> bool {
        self.facets.iter().all(|f| {
            let s = (f.normal[0] * xi[0] + f.normal[1] * xi[1] - f.offset).signum();
            s < 0 || (f.closed && s == 0)
        })
    }

    /// Exact membership of the grid frequency `(u, v)/n` given in dual-basis coordinates.
    pub fn contains_grid(&self, u: i64, v: i64, n: i64) -> bool {
        match &self.int_facets {
            Some(fs) => fs.iter().all(|f| {
                let lhs = f.w[0] * u + f.w[1] * v;
                let rhs = f.h * n;
                lhs < rhs || (f.closed && lhs == rhs)
            }),
            None => {
                let p = self.dual.point([u, v]);
                let p = [QSqrt3::new(p[0].a / n, p[0].b / n), QSqrt3::new(p[1].a / n, p[1].b / n)];
                self.contains_exact(&p)
            }
        }
    }

    /// Fold the grid frequency `(u, v)/n` (dual-basis coordinates) into the cell.
    /// Returns the representative's grid coordinates.
    pub fn fold_grid(&self, u: i64, v: i64, n: i64) -> [i64; 2] {
        let centre = |x: i64| {
            let r = x.rem_euclid(n);
            if 2 * r >= n {
                r - n
            } else {
                r
            }
        };
        let (u0, v0) = (centre(u), centre(v));
        for reach in [1i64, 3] {
            for du in -reach..=reach {
                for dv in -reach..=reach {
                    let (a, b) = (u0 + du * n, v0 + dv * n);
                    if self.contains_grid(a, b, n) {
                        return [a, b];
                    }
                }
            }
        }
        unreachable!("Voronoi cell tiles the plane")
    }

    /// Fold an arbitrary real frequency into the cell; the result differs from
    /// `xi` by an element of the period lattice.
    pub fn fold_to_cell(&self, xi: [f64; 2]) -> [f64; 2] {
        let e = self.dual.generators_f64();
        let det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
        let c = [
            (e[1][1] * xi[0] - e[0][1] * xi[1]) / det,
            (-e[1][0] * xi[0] + e[0][0] * xi[1]) / det,
        ];
        let base = [c[0].round(), c[1].round()];
        let mut best: Option<([f64; 2], f64)> = None;
        let mut cands: Vec<(f64, [f64; 2])> = Vec::with_capacity(25);
        for du in -2..=2 {
            for dv in -2..=2 {
                let k = [base[0] + du as f64, base[1] + dv as f64];
                let p = [
                    xi[0] - (e[0][0] * k[0] + e[0][1] * k[1]),
                    xi[1] - (e[1][0] * k[0] + e[1][1] * k[1]),
                ];
                let nrm = p[0] * p[0] + p[1] * p[1];
                cands.push((nrm, p));
                if best.is_none_or(|(_, b)| nrm < b) {
                    best = Some((p, nrm));
                }
            }
        }
        cands.sort_by(|a, b| a.0.total_cmp(&b.0));
        cands
            .into_iter()
            .map(|(_, p)| p)
            .find(|p| self.contains(*p))
            .unwrap_or_else(|| best.map(|b| b.0).unwrap_or(xi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn kinds() {
        assert_eq!(ReciprocalCell::voronoi(&Lattice2::hexagonal()).kind(), CellKind::Hexagon);
        assert_eq!(ReciprocalCell::voronoi(&Lattice2::square()).kind(), CellKind::Square);
    }

    #[test]
    fn hex_grid_forms() {
        // −n ≤ 2u−v < n, −n ≤ u+v < n, −n ≤ u−2v < n
        let cell = ReciprocalCell::voronoi(&Lattice2::hexagonal());
        let n = 12;
        for u in -2 * n..2 * n {
            for v in -2 * n..2 * n {
                let expect = (-n..n).contains(&(2 * u - v))
                    && (-n..n).contains(&(u + v))
                    && (-n..n).contains(&(u - 2 * v));
                assert_eq!(cell.contains_grid(u, v, n), expect, "({u},{v})");
            }
        }
    }

    #[test]
    fn hex_included_vertices() {
        let cell = ReciprocalCell::voronoi(&Lattice2::hexagonal());
        let s = 1.0 / 3f64.sqrt();
        assert!(cell.contains([-PI, PI * s]));
        assert!(cell.contains([-PI, -PI * s]));
        assert!(!cell.contains([PI, PI * s]));
        assert!(!cell.contains([0.0, 2.0 * PI * s]));
    }

    #[test]
    fn fold_across_edge() {
        let cell = ReciprocalCell::voronoi(&Lattice2::square());
        let f = cell.fold_to_cell([2.0 * PI, 0.0]);
        assert!(f[0].abs() < 1e-12 && f[1].abs() < 1e-12);
    }
}
