//! The dyadic, hexagonal and hexagonal-frame frequency partitions.

use lattice_core::{quotient_index, GridFacet, IMat2, Lattice2, ReciprocalCell};
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{PartitionError, PartitionResult};
use crate::geometry::{self, Point, Q};
use crate::sector::{rot60, rot_m60, Dir, Sector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "p", rename_all = "kebab-case")]
pub enum Family {
    Dyadic(u32),
    Hexagonal(u32),
    HexagonalFrame,
}

/// A region `A_k`: a union of polygons in dual-basis coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyRegion {
    pub index: usize,
    /// Counterclockwise vertex lists.
    pub polygons: Vec<Vec<Point>>,
}

/// A partition of the reciprocal cell into a low-pass region `A_0` and
/// directional annulus sectors, with one sublattice per region.
#[derive(Debug, Clone)]
pub struct FrequencyPartition {
    pub family: Family,
    pub base: Lattice2,
    pub cell: ReciprocalCell,
    pub regions: Vec<FrequencyRegion>,
    pub sublattices: Vec<Lattice2>,
    /// Sublattice generators in coordinates of `base` (columns).
    pub sublattice_coords: Vec<IMat2>,
    /// `sectors[k]` lists the wedges making up region `k ≥ 1`.
    pub sectors: Vec<Vec<Sector>>,
    facets: Vec<GridFacet>,
}

impl FrequencyPartition {
    fn assemble(family: Family, base: Lattice2, wedges: Vec<Sector>, coords: Vec<IMat2>) -> PartitionResult<Self> {
        let cell = ReciprocalCell::voronoi(&base);
        let facets = cell
            .grid_facets()
            .ok_or_else(|| PartitionError::InvalidPartition("cell has no integer facet form".into()))?
            .to_vec();
        let mut sectors = vec![Vec::new()];
        for w in wedges {
            sectors.push(vec![w, w.reflected()]);
        }
        let sublattices = coords.iter().map(|c| base.sublattice(c)).collect::<Result<Vec<_>, _>>()?;
        let mut part = Self {
            family,
            base,
            cell,
            regions: Vec::new(),
            sublattices,
            sublattice_coords: coords,
            sectors,
            facets,
        };
        part.regions = part.build_polygons();
        Ok(part)
    }

    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of directional regions.
    pub fn directions(&self) -> usize {
        self.len() - 1
    }

    /// The period lattice `Λ*`.
    pub fn dual(&self) -> &Lattice2 {
        self.cell.dual()
    }

    /// `Σ_k 1/|Λ/Γ_k|` as an exact rational.
    pub fn critical_ratio(&self) -> PartitionResult<Rational64> {
        let mut s = Rational64::zero();
        for l in &self.sublattices {
            s += Rational64::new(1, quotient_index(&self.base, l)?);
        }
        Ok(s)
    }

    /// Replace the sublattices (for user-supplied banks and negative tests).
    pub fn with_sublattices(mut self, coords: Vec<IMat2>) -> PartitionResult<Self> {
        if coords.len() != self.len() {
            return Err(PartitionError::InvalidPartition(format!(
                "expected {} sublattices, got {}",
                self.len(),
                coords.len()
            )));
        }
        self.sublattices = coords.iter().map(|c| self.base.sublattice(c)).collect::<Result<Vec<_>, _>>()?;
        self.sublattice_coords = coords;
        Ok(self)
    }

    fn in_cell(&self, u: i64, v: i64, n: i64) -> bool {
        self.facets.iter().all(|f| {
            let lhs = f.w[0] * u + f.w[1] * v;
            lhs < f.h * n || (f.closed && lhs == f.h * n)
        })
    }

    /// Whether the grid point `(u, v)/n` (already in the cell) lies in `A_0 = S/2`.
    pub fn in_lowpass(&self, u: i64, v: i64, n: i64) -> bool {
        self.in_cell(2 * u, 2 * v, n)
    }

    /// Fold `(u, v)/n` into the cell.
    pub fn fold(&self, u: i64, v: i64, n: i64) -> [i64; 2] {
        self.cell.fold_grid(u, v, n)
    }

    /// Region index of the grid frequency `(u, v)/n`, after folding.
    pub fn region_of_grid(&self, u: i64, v: i64, n: i64) -> usize {
        let [a, b] = self.fold(u, v, n);
        self.region_of_folded(a, b, n)
    }

    /// Region index of a grid point already inside the cell.
    pub fn region_of_folded(&self, a: i64, b: i64, n: i64) -> usize {
        if self.in_lowpass(a, b, n) {
            return 0;
        }
        for (k, ws) in self.sectors.iter().enumerate().skip(1) {
            if ws.iter().any(|w| w.contains([a, b])) {
                return k;
            }
        }
        unreachable!("sectors cover the annulus")
    }

    /// Exact real frequency of dual coordinates.
    pub fn to_real(&self, p: &Point) -> [f64; 2] {
        let e = self.dual().generators_f64();
        let x = [num_traits::ToPrimitive::to_f64(&p[0]).unwrap(), num_traits::ToPrimitive::to_f64(&p[1]).unwrap()];
        [e[0][0] * x[0] + e[0][1] * x[1], e[1][0] * x[0] + e[1][1] * x[1]]
    }

    /// Largest `t` with `t·d` in the closed cell.
    fn ray_exit(&self, d: Dir) -> Q {
        self.facets
            .iter()
            .filter_map(|f| {
                let wd = f.w[0] * d[0] + f.w[1] * d[1];
                (wd > 0).then(|| Q::new(f.h, wd))
            })
            .min()
            .expect("cell is bounded")
    }

    /// Vertices of the closed cell in counterclockwise order.
    pub fn cell_vertices(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            for g in &self.facets[i + 1..] {
                let det = f.w[0] * g.w[1] - f.w[1] * g.w[0];
                if det == 0 {
                    continue;
                }
                let x = [Q::new(f.h * g.w[1] - g.h * f.w[1], det), Q::new(f.w[0] * g.h - g.w[0] * f.h, det)];
                let inside = self
                    .facets
                    .iter()
                    .all(|h| Q::from_integer(h.w[0]) * x[0] + Q::from_integer(h.w[1]) * x[1] <= Q::from_integer(h.h));
                if inside && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        let ang = |p: &Point| {
            let r = self.to_real(p);
            r[1].atan2(r[0])
        };
        out.sort_by(|a, b| ang(a).total_cmp(&ang(b)));
        out
    }

    /// Whether `p` lies on the boundary of the closed cell.
    pub fn on_cell_boundary(&self, p: &Point) -> bool {
        self.facets
            .iter()
            .any(|f| Q::from_integer(f.w[0]) * p[0] + Q::from_integer(f.w[1]) * p[1] == Q::from_integer(f.h))
    }

    fn sector_polygon(&self, s: &Sector, corners: &[Point]) -> Vec<Point> {
        let dir = |d: Dir| [Q::from_integer(d[0]), Q::from_integer(d[1])];
        let (ts, te) = (self.ray_exit(s.start), self.ray_exit(s.end));
        let half = Q::new(1, 2);
        let inner: Vec<Point> = corners
            .iter()
            .filter(|c| {
                geometry::cross(&dir(s.start), c) > Q::zero() && geometry::cross(c, &dir(s.end)) > Q::zero()
            })
            .cloned()
            .collect();
        let mut poly = vec![geometry::scale(&dir(s.start), ts * half), geometry::scale(&dir(s.start), ts)];
        poly.extend(inner.iter().cloned());
        poly.push(geometry::scale(&dir(s.end), te));
        poly.push(geometry::scale(&dir(s.end), te * half));
        poly.extend(inner.iter().rev().map(|c| geometry::scale(c, half)));
        poly
    }

    fn build_polygons(&self) -> Vec<FrequencyRegion> {
        let corners = self.cell_vertices();
        let half = Q::new(1, 2);
        let mut regions = vec![FrequencyRegion {
            index: 0,
            polygons: vec![corners.iter().map(|c| geometry::scale(c, half)).collect()],
        }];
        for (k, ws) in self.sectors.iter().enumerate().skip(1) {
            regions.push(FrequencyRegion {
                index: k,
                polygons: ws.iter().map(|w| self.sector_polygon(w, &corners)).collect(),
            });
        }
        regions
    }
}

fn hex_wedges(p: i64) -> Vec<Sector> {
    // horizontal fan: rays through equispaced points of the right edge
    let ray = |j: i64| [2 * p - j, p - 2 * j];
    let base: Vec<Sector> = (1..=p).map(|j| Sector::new(ray(j), ray(j - 1))).collect();
    let mut out = base.clone();
    out.extend(base.iter().map(|s| s.map(rot_m60)));
    out.extend(base.iter().map(|s| s.map(rot60)));
    out
}

/// `Γ_k^p` for the hexagonal fans, in coordinates of `Λ`.
pub fn hex_sublattice_coords(p: i64) -> [IMat2; 3] {
    // horizontal group: spatial generators (2p, −2p/√3) and (4, 0)
    let h = [[2 * p, 4], [-2 * p, -2]];
    // the other groups are its images under ∓π/3 rotations
    let rm = |c: [i64; 2]| [c[0] + c[1], -c[0]];
    let rp = |c: [i64; 2]| [-c[1], c[0] + c[1]];
    let col = |m: &IMat2, j: usize| [m[0][j], m[1][j]];
    let from_cols = |a: [i64; 2], b: [i64; 2]| [[a[0], b[0]], [a[1], b[1]]];
    [
        h,
        from_cols(rm(col(&h, 0)), rm(col(&h, 1))),
        from_cols(rp(col(&h, 0)), rp(col(&h, 1))),
    ]
}

/// Hexagonal partition with `3p` directions.
pub fn build_hexagonal(p: u32) -> PartitionResult<FrequencyPartition> {
    if p == 0 {
        return Err(PartitionError::ValueError("p must be positive".into()));
    }
    let pi = p as i64;
    let [g1, g2, g3] = hex_sublattice_coords(pi);
    let mut coords = vec![[[2, 0], [0, 2]]];
    for g in [g1, g2, g3] {
        coords.extend(std::iter::repeat_n(g, p as usize));
    }
    FrequencyPartition::assemble(Family::Hexagonal(p), Lattice2::hexagonal(), hex_wedges(pi), coords)
}

/// The six-direction hexagonal regions with every directional sublattice
/// replaced by `2Λ`.
pub fn build_hexagonal_frame() -> PartitionResult<FrequencyPartition> {
    let coords = vec![[[2, 0], [0, 2]]; 7];
    FrequencyPartition::assemble(Family::HexagonalFrame, Lattice2::hexagonal(), hex_wedges(2), coords)
}

/// Dyadic partition of `[−π, π)²` with `6p` directions.
pub fn build_dyadic(p: u32) -> PartitionResult<FrequencyPartition> {
    if p == 0 {
        return Err(PartitionError::ValueError("p must be positive".into()));
    }
    let m = 3 * p as i64;
    let h = |j: i64| [m, m - 2 * j];
    let v = |j: i64| [m - 2 * j, m];
    let mut wedges: Vec<Sector> = (1..=m).map(|j| Sector::new(h(j), h(j - 1))).collect();
    wedges.extend((1..=m).map(|j| Sector::new(v(j - 1), v(j))));
    let pi = p as i64;
    let mut coords = vec![[[2, 0], [0, 2]]];
    coords.extend(std::iter::repeat_n([[2 * pi, 0], [2 * pi, 4]], m as usize));
    coords.extend(std::iter::repeat_n([[4, 2 * pi], [0, 2 * pi]], m as usize));
    FrequencyPartition::assemble(Family::Dyadic(p), Lattice2::square(), wedges, coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_rays_hit_right_edge() {
        let part = build_hexagonal(3).unwrap();
        // rays (2p−j, p−2j) all satisfy 2u−v = 3p
        for j in 0..=3 {
            assert_eq!(2 * (6 - j) - (3 - 2 * j), 9);
        }
        assert_eq!(part.directions(), 9);
    }

    #[test]
    fn hex_cell_vertices() {
        let part = build_hexagonal(1).unwrap();
        let v = part.cell_vertices();
        assert_eq!(v.len(), 6);
        assert!(v.contains(&crate::geometry::pt(2, 1, 3)));
        assert!(v.contains(&crate::geometry::pt(-1, -2, 3)));
    }

    #[test]
    fn rotated_sublattices_match_closed_forms() {
        // columns (0, 4p/√3), (−2, 2√3) and (2p, 2p/√3), (2, 2√3) in Λ coordinates
        for p in 1..4 {
            let [_, g2, g3] = hex_sublattice_coords(p);
            let l = Lattice2::hexagonal();
            let a = l.sublattice(&g2).unwrap();
            let b = l.sublattice(&[[0, -2], [2 * p, 4]]).unwrap();
            assert!(a.same_points(&b));
            let c = l.sublattice(&g3).unwrap();
            let d = l.sublattice(&[[2 * p, 2], [0, 2]]).unwrap();
            assert!(c.same_points(&d));
        }
    }
}
