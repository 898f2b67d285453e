//! Grid check of the tiling condition `{A_k + γ}_{γ ∈ Γ_k*/Λ*}`.

use lattice_core::{coset_reps, hnf, IMat2};
use serde::{Deserialize, Serialize};

use crate::error::{PartitionError, PartitionResult};
use crate::geometry::{Point, Q};
use crate::partition::{Family, FrequencyPartition};

/// Dual coordinates of `C^{-T}·r` for an integer sublattice matrix `C`.
fn dual_point(c: &IMat2, r: [i64; 2]) -> Point {
    let d = c[0][0] * c[1][1] - c[0][1] * c[1][0];
    // C^{-T} = adj(C)^T / det
    [
        Q::new(c[1][1] * r[0] - c[1][0] * r[1], d),
        Q::new(-c[0][1] * r[0] + c[0][0] * r[1], d),
    ]
}

/// Representatives of `Γ_k*/Λ*` in dual-basis coordinates of `Λ*`, zero first.
pub fn dual_cosets(part: &FrequencyPartition, k: usize) -> PartitionResult<Vec<Point>> {
    let sub = &part.sublattices[k];
    let q = coset_reps(&sub.reciprocal(), &part.base.reciprocal())?;
    Ok(q.reps.iter().map(|&r| dual_point(&part.sublattice_coords[k], r)).collect())
}

/// Whether `γ` (dual coordinates) lies in `Γ_k*`.
pub fn in_dual_sublattice(part: &FrequencyPartition, k: usize, gamma: &Point) -> bool {
    let c = &part.sublattice_coords[k];
    // Γ_k* = C^{-T} Z², so γ ∈ Γ_k* iff Cᵀγ is integral
    let x = gamma[0] * c[0][0] + gamma[1] * c[1][0];
    let y = gamma[0] * c[0][1] + gamma[1] * c[1][1];
    x.is_integer() && y.is_integer()
}

/// Integer grid shift of a dual point on the `n`-grid.
pub fn grid_shift(gamma: &Point, n: i64) -> PartitionResult<[i64; 2]> {
    let s = [gamma[0] * n, gamma[1] * n];
    if !(s[0].is_integer() && s[1].is_integer()) {
        return Err(PartitionError::GridAlignment(format!(
            "shift ({}, {}) is not on the {n}-grid",
            gamma[0], gamma[1]
        )));
    }
    Ok([s[0].to_integer(), s[1].to_integer()])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandCoverage {
    pub band: usize,
    pub cosets: usize,
    pub max_multiplicity: usize,
    pub min_coverage: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub grid_n: i64,
    pub bands: Vec<BandCoverage>,
    pub admissible: bool,
}

/// Representatives of `Γ*/Λ*` for the common sublattice `Γ = ∩ Γ_k`, zero first.
pub fn common_dual_cosets(part: &FrequencyPartition) -> PartitionResult<Vec<Point>> {
    let mut c = part.sublattice_coords[0];
    for s in &part.sublattice_coords[1..] {
        c = hnf::intersect(&c, s)?;
    }
    let c = hnf::hnf(&c)?;
    let sub = part.base.sublattice(&c)?;
    let q = coset_reps(&sub.reciprocal(), &part.base.reciprocal())?;
    Ok(q.reps.iter().map(|&r| dual_point(&c, r)).collect())
}

/// Grid rotation generating the partition's rotation group, and the group order.
pub fn grid_rotation(family: Family) -> (fn(i64, i64) -> [i64; 2], usize) {
    match family {
        Family::Hexagonal(_) | Family::HexagonalFrame => (|u, v| [u - v, u], 6),
        Family::Dyadic(_) => (|u, v| [-v, u], 4),
    }
}

/// For every grid point a power `r` of `rot` taking its orbit (under `shifts`)
/// to the canonical orbit of its class, the one with the smallest index.
/// Evaluating boundary points along `R^{−r}δ` gives a rule that is constant on
/// orbits, covariant under the group and odd under `ξ → −ξ` (`R^{order/2} = −1`),
/// except on orbits with a nontrivial stabilizer: those fixed by `−1` use `r = 0`,
/// the others keep mirror symmetry only.
pub fn canonical_rotations(n: i64, shifts: &[[i64; 2]], rot: fn(i64, i64) -> [i64; 2], order: usize) -> Vec<u8> {
    let idx = |u: i64, v: i64| (v.rem_euclid(n) * n + u.rem_euclid(n)) as usize;
    let oid = orbit_ids(n, shifts);
    let mut out = Vec::with_capacity((n * n) as usize);
    for v in 0..n {
        for u in 0..n {
            let mut ids = Vec::with_capacity(order);
            let mut p = [u, v];
            for _ in 0..order {
                ids.push(oid[idx(p[0], p[1])]);
                p = rot(p[0], p[1]);
            }
            let lo = *ids.iter().min().expect("order > 0");
            let half = order / 2;
            // orbits mapped to themselves by −1 = R^half cannot be mirror-consistent
            let r = if ids[half] == ids[0] {
                0
            } else {
                // picking the minimizer smallest mod `half` commutes with ξ → −ξ
                (0..order).filter(|&r| ids[r] == lo).min_by_key(|&r| (r % half, r)).expect("minimum exists")
            };
            out.push(r as u8);
        }
    }
    out
}

/// Smallest grid index in the orbit of every point under `shifts`.
fn orbit_ids(n: i64, shifts: &[[i64; 2]]) -> Vec<usize> {
    let idx = |u: i64, v: i64| (v.rem_euclid(n) * n + u.rem_euclid(n)) as usize;
    let mut oid = vec![0usize; (n * n) as usize];
    for v in 0..n {
        for u in 0..n {
            oid[idx(u, v)] = shifts.iter().map(|s| idx(u + s[0], v + s[1])).min().unwrap_or(idx(u, v));
        }
    }
    oid
}

/// Grid points whose `Γ*/Λ*` orbit is mapped to itself by a nontrivial
/// rotation of the partition; the boundary rule cannot be covariant there.
pub fn stabilized_points(part: &FrequencyPartition, n: i64) -> PartitionResult<Vec<bool>> {
    let shifts = common_dual_cosets(part)?.iter().map(|x| grid_shift(x, n)).collect::<PartitionResult<Vec<_>>>()?;
    let oid = orbit_ids(n, &shifts);
    let (rot, order) = grid_rotation(part.family);
    let idx = |p: [i64; 2]| (p[1].rem_euclid(n) * n + p[0].rem_euclid(n)) as usize;
    Ok((0..n * n)
        .map(|i| {
            let mut p = [i % n, i / n];
            (1..order).any(|_| {
                p = rot(p[0], p[1]);
                oid[idx(p)] == oid[i as usize]
            })
        })
        .collect())
}

/// `perm[r][k]`: the region containing `R^r` applied to the interior of region `k`.
pub fn region_permutations(part: &FrequencyPartition, n: i64, rot: fn(i64, i64) -> [i64; 2], order: usize) -> Vec<Vec<usize>> {
    let m = part.len();
    let interior = |u: i64, v: i64| {
        let k = part.region_of_grid(u, v, n);
        [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)]
            .iter()
            .all(|(a, b)| part.region_of_grid(u + a, v + b, n) == k)
            .then_some(k)
    };
    let mut samples: Vec<Option<[i64; 2]>> = vec![None; m];
    'scan: for v in 0..n {
        for u in 0..n {
            if let Some(k) = interior(u, v) {
                samples[k].get_or_insert([u, v]);
                if samples.iter().all(Option::is_some) {
                    break 'scan;
                }
            }
        }
    }
    (0..order)
        .map(|r| {
            samples
                .iter()
                .enumerate()
                .map(|(k, s)| match s {
                    Some(p) => {
                        let q = (0..r).fold(*p, |q, _| rot(q[0], q[1]));
                        part.region_of_grid(q[0], q[1], n)
                    }
                    None => k,
                })
                .collect()
        })
        .collect()
}

/// Region label of every point of the `n×n` dual grid (row = `v`, column = `u`).
///
/// A boundary point belongs to the region containing `ξ + R^{−r}δ`, with `r`
/// from [`canonical_rotations`] over `Γ*/Λ*`; every band still tiles exactly
/// and the labels are rotation-covariant and origin-symmetric except on a few
/// isolated points. When `Γ*` is not on the grid the plain `+δ` rule is used.
pub fn region_map(part: &FrequencyPartition, n: i64) -> Vec<u8> {
    let shifts = common_dual_cosets(part)
        .and_then(|g| g.iter().map(|x| grid_shift(x, n)).collect::<PartitionResult<Vec<_>>>());
    let Ok(shifts) = shifts else {
        return (0..n).flat_map(|v| (0..n).map(move |u| (u, v))).map(|(u, v)| part.region_of_grid(u, v, n) as u8).collect();
    };
    let (rot, order) = grid_rotation(part.family);
    let rs = canonical_rotations(n, &shifts, rot, order);
    let perm = region_permutations(part, n, rot, order);
    // inverse permutations: perm[order − r] undoes perm[r]
    let mut out = Vec::with_capacity((n * n) as usize);
    for v in 0..n {
        for u in 0..n {
            let r = rs[(v * n + u) as usize] as usize;
            let p = (0..r).fold([u, v], |q, _| rot(q[0], q[1]));
            let k = part.region_of_grid(p[0], p[1], n);
            out.push(perm[(order - r) % order][k] as u8);
        }
    }
    out
}

/// Verify on an `n×n` grid that every band's coset translates cover each point once.
pub fn check_admissible(part: &FrequencyPartition, grid_n: i64) -> PartitionResult<AdmissibilityReport> {
    if grid_n < 64 {
        return Err(PartitionError::ValueError(format!("grid_n must be at least 64, got {grid_n}")));
    }
    for (k, s) in part.sublattices.iter().enumerate() {
        if !s.is_sublattice_of(&part.base) {
            return Err(PartitionError::InvalidPartition(format!("Γ_{k} is not a sublattice of Λ")));
        }
    }
    let n = grid_n;
    let map = region_map(part, n);
    let mut bands = Vec::new();
    for k in 0..part.len() {
        let shifts = dual_cosets(part, k)?
            .iter()
            .map(|g| grid_shift(g, n))
            .collect::<PartitionResult<Vec<_>>>()?;
        let (mut maxm, mut minc) = (0usize, usize::MAX);
        for v in 0..n {
            for u in 0..n {
                let c = shifts
                    .iter()
                    .filter(|s| {
                        let (a, b) = ((u - s[0]).rem_euclid(n), (v - s[1]).rem_euclid(n));
                        map[(b * n + a) as usize] as usize == k
                    })
                    .count();
                maxm = maxm.max(c);
                minc = minc.min(c);
            }
        }
        bands.push(BandCoverage { band: k, cosets: shifts.len(), max_multiplicity: maxm, min_coverage: minc });
    }
    let admissible = bands.iter().all(|b| b.max_multiplicity == 1 && b.min_coverage == 1);
    Ok(AdmissibilityReport { grid_n, bands, admissible })
}

/// Whether a dual point is zero modulo `Λ*`.
pub fn is_period(p: &Point) -> bool {
    p[0].is_integer() && p[1].is_integer()
}
