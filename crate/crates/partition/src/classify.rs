//! Singular/regular classification of subband boundaries.
//!
//! `C_0(k, γ)` is the part of `∂𝒜_k` that meets `∂𝒜_k − γ` (modulo `Λ*`);
//! `D(k, γ)` removes what other bands `k'` with `γ ∈ Γ_k'*` share; the union of
//! the `D(k, γ)` is the singular boundary, the rest of `∂𝒜_k` is regular.

use lattice_core::QSqrt3;
use serde::{Deserialize, Serialize};

use crate::admissible::{dual_cosets, in_dual_sublattice, is_period};
use crate::error::PartitionResult;
use crate::geometry::{self, intersect, normalize, periodize, subtract, Point, Segment, Q};
use crate::partition::FrequencyPartition;

/// Reach of lattice translates needed to cover the cell neighbourhood.
const REACH: i64 = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionBoundary {
    pub index: usize,
    /// `∂𝒜_k` inside the closed cell.
    pub boundary: Vec<Segment>,
    pub singular: Vec<Segment>,
    pub regular: Vec<Segment>,
}

/// A common regular boundary `E(k1, k2, ±γ)` with `k1 < k2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Triple {
    pub k1: usize,
    pub k2: usize,
    /// Canonical representative of `±γ` in dual coordinates.
    pub gamma: Point,
    /// `E(k1, k2, γ)`.
    pub e_plus: Vec<Segment>,
    /// `E(k1, k2, −γ) = E(k1, k2, γ) + γ`.
    pub e_minus: Vec<Segment>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryClassification {
    pub regions: Vec<RegionBoundary>,
    /// Interior common regular boundaries (segments on the cell boundary excluded).
    pub triples: Vec<Triple>,
}

fn edges(poly: &[Point]) -> Vec<Segment> {
    (0..poly.len()).map(|i| Segment::new(poly[i], poly[(i + 1) % poly.len()])).collect()
}

/// `∂𝒜_k ∩ S`: polygon edges minus the parts glued to another piece of the same region.
pub fn region_boundary(part: &FrequencyPartition, k: usize) -> Vec<Segment> {
    let es: Vec<Segment> = part.regions[k].polygons.iter().flat_map(|p| edges(p)).collect();
    let mut out = Vec::new();
    for (i, e) in es.iter().enumerate() {
        let mut others = Vec::new();
        for (j, f) in es.iter().enumerate() {
            for a in -REACH..=REACH {
                for b in -REACH..=REACH {
                    if i == j && a == 0 && b == 0 {
                        continue;
                    }
                    others.push(f.translate(&[Q::from_integer(a), Q::from_integer(b)]));
                }
            }
        }
        out.extend(subtract(&[*e], &others));
    }
    normalize(&out)
}

fn c0(boundary: &[Segment], gamma: &Point) -> Vec<Segment> {
    let shifted: Vec<Segment> = boundary.iter().map(|s| s.translate(&geometry::neg(gamma))).collect();
    normalize(&intersect(boundary, &periodize(&shifted, REACH)))
}

fn long_enough(part: &FrequencyPartition, segs: Vec<Segment>, tol: f64) -> Vec<Segment> {
    normalize(&segs)
        .into_iter()
        .filter(|s| {
            let (a, b) = (part.to_real(&s.a), part.to_real(&s.b));
            (a[0] - b[0]).hypot(a[1] - b[1]) >= tol
        })
        .collect()
}

/// Exact real coordinates `(ξ₁, ξ₂)/π` of a dual point.
fn real_exact(part: &FrequencyPartition, p: &Point) -> [QSqrt3; 2] {
    let g = part.dual().generators();
    let r = |x: Q| QSqrt3::new(x, Q::from_integer(0));
    [g[0][0] * r(p[0]) + g[0][1] * r(p[1]), g[1][0] * r(p[0]) + g[1][1] * r(p[1])]
}

/// Representative of `±γ + Λ*` in the closed cell with the largest `ξ₁`, then `ξ₂`.
pub fn canonical_shift(part: &FrequencyPartition, gamma: &Point) -> Point {
    let facets = part.cell.grid_facets().expect("integer cell");
    let mut best: Option<(Point, [QSqrt3; 2])> = None;
    for g in [*gamma, geometry::neg(gamma)] {
        for a in -REACH..=REACH {
            for b in -REACH..=REACH {
                let c = geometry::shift(&g, [a, b]);
                let inside = facets
                    .iter()
                    .all(|f| Q::from_integer(f.w[0]) * c[0] + Q::from_integer(f.w[1]) * c[1] <= Q::from_integer(f.h));
                if !inside {
                    continue;
                }
                let x = real_exact(part, &c);
                if best.as_ref().is_none_or(|(_, bx)| (x[0], x[1]) > (bx[0], bx[1])) {
                    best = Some((c, x));
                }
            }
        }
    }
    best.expect("some representative lies in the cell").0
}

/// Classify every region boundary; segments shorter than `tol` (real length)
/// are treated as corner artifacts and dropped.
pub fn classify_boundaries(part: &FrequencyPartition, tol: f64) -> PartitionResult<BoundaryClassification> {
    let nk = part.len();
    let bounds: Vec<Vec<Segment>> = (0..nk).map(|k| region_boundary(part, k)).collect();
    let cosets: Vec<Vec<Point>> = (0..nk).map(|k| dual_cosets(part, k)).collect::<PartitionResult<_>>()?;

    let mut regions = Vec::with_capacity(nk);
    for k in 0..nk {
        let mut singular = Vec::new();
        for g in cosets[k].iter().filter(|g| !is_period(g)) {
            let mine = c0(&bounds[k], g);
            let shared: Vec<Segment> = (0..nk)
                .filter(|&k2| k2 != k && in_dual_sublattice(part, k2, g))
                .flat_map(|k2| c0(&bounds[k2], g))
                .collect();
            singular.extend(subtract(&mine, &shared));
        }
        let singular = long_enough(part, singular, tol);
        let regular = long_enough(part, subtract(&bounds[k], &singular), tol);
        regions.push(RegionBoundary { index: k, boundary: bounds[k].clone(), singular, regular });
    }

    let mut triples: Vec<Triple> = Vec::new();
    for k1 in 0..nk {
        for k2 in k1 + 1..nk {
            for g in cosets[k1].iter().filter(|g| !is_period(g) && in_dual_sublattice(part, k2, g)) {
                let canon = canonical_shift(part, g);
                if triples.iter().any(|t| t.k1 == k1 && t.k2 == k2 && t.gamma == canon) {
                    continue;
                }
                let e_of = |g: &Point| {
                    let e = intersect(&c0(&bounds[k1], g), &c0(&bounds[k2], g));
                    let e = intersect(&e, &regions[k1].regular);
                    let e: Vec<Segment> =
                        e.into_iter().filter(|s| !part.on_cell_boundary(&s.midpoint())).collect();
                    long_enough(part, e, tol)
                };
                let e_plus = e_of(&canon);
                if e_plus.is_empty() {
                    continue;
                }
                let e_minus = e_of(&geometry::neg(&canon));
                triples.push(Triple { k1, k2, gamma: canon, e_plus, e_minus });
            }
        }
    }
    Ok(BoundaryClassification { regions, triples })
}

/// `(k1, k2, γ)` for every interior common regular boundary.
pub fn regular_triples(bc: &BoundaryClassification) -> Vec<(usize, usize, Point)> {
    bc.triples.iter().map(|t| (t.k1, t.k2, t.gamma)).collect()
}

/// `C_0(k, γ)` as maximal segments.
pub fn shared_boundary(part: &FrequencyPartition, k: usize, gamma: &Point) -> Vec<Segment> {
    c0(&region_boundary(part, k), gamma)
}
