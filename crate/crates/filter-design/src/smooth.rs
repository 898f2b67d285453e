//! Smoothing of the Shannon hexagonal basis across regular boundaries and
//! across the low-pass boundary.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_rational::Rational64;
use partition::{
    admissible::{grid_shift, region_map},
    classify_boundaries, in_dual_sublattice, Family, FrequencyPartition,
};

use crate::bank::{BankKind, FilterBankSpec};
use crate::error::{FilterError, FilterResult};
use crate::grid::{self, dist_to_hexagon, hex_neighbours, hex_normals, hex_real, Phase};
use crate::ramp::profile;

/// Phases `η_k` (coordinates of `Λ`) of the smoothed hexagonal basis:
/// `(0,0), (−1,−√3), (1,√3), (2,0), (−2,0), (−1,√3), (1,−√3)` in real coordinates.
pub const BASIS_ETA: [[i64; 2]; 7] = [[0, 0], [-1, -1], [1, 1], [2, -1], [-2, 1], [-1, 2], [1, -2]];

/// Upper bound (exclusive) on the transition half-width of the basis smoothing.
pub fn max_basis_eps() -> f64 {
    3f64.sqrt() * PI / 12.0
}

/// Default transition half-width of the basis smoothing.
pub const DEFAULT_BASIS_EPS: f64 = PI / 16.0;

fn check_eps(eps: f64) -> FilterResult<()> {
    if !(eps > 0.0 && eps < max_basis_eps()) {
        return Err(FilterError::ValueError(format!(
            "eps = {eps} outside the valid range (0, √3π/12 ≈ {:.4})",
            max_basis_eps()
        )));
    }
    Ok(())
}

fn require(fb: &FilterBankSpec, kind: BankKind) -> FilterResult<()> {
    if fb.kind != kind || fb.family != Family::Hexagonal(2) {
        return Err(FilterError::InvalidBank(format!(
            "expected a hexagonal p=2 {} bank, got {} over {:?}",
            kind.name(),
            fb.kind.name(),
            fb.family
        )));
    }
    Ok(())
}

/// Folded real frequency of every grid point.
fn folded_real(part: &FrequencyPartition, n: usize) -> Vec<[f64; 2]> {
    (0..n * n)
        .map(|i| {
            let [a, b] = part.fold((i % n) as i64, (i / n) as i64, n as i64);
            hex_real(a as f64, b as f64, n)
        })
        .collect()
}

/// Distance to the nearest `Λ*`-translate of `A_0`.
fn lowpass_distance(x: [f64; 2]) -> f64 {
    hex_neighbours()
        .iter()
        .map(|l| dist_to_hexagon([x[0] - l[0], x[1] - l[1]], 0.5))
        .fold(f64::MAX, f64::min)
}

/// Signed offset of `x` from the segment `a→b` (left positive) if the foot
/// falls on the segment.
fn segment_offset(x: [f64; 2], a: [f64; 2], b: [f64; 2]) -> Option<f64> {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len = d[0].hypot(d[1]);
    let r = [x[0] - a[0], x[1] - a[1]];
    let t = (r[0] * d[0] + r[1] * d[1]) / (len * len);
    (-1e-12..=1.0 + 1e-12).contains(&t).then(|| (d[0] * r[1] - d[1] * r[0]) / len)
}

struct Pair {
    i: usize,
    j: usize,
    k1: usize,
    k2: usize,
    /// Profile coordinate of `k1` at `i`.
    t: f64,
}

/// Smooth the Shannon hexagonal `p = 2` bank across every common regular
/// boundary `E(k1, k2, ±γ)`.
///
/// Each boundary's `eps`-neighbourhood splits as `Ω ⊔ (Ω + γ)`; on `Ω` the two
/// bands follow the sin/cos transition profile across the boundary, and on
/// `Ω + γ` their values are swapped. Points within `eps` of a translate of
/// `A_0` are left untouched for the refinement step, as are points claimed by
/// two boundaries (near cell vertices).
pub fn smooth_regular_boundaries(fb: &FilterBankSpec, eps: f64, p_smooth: u32) -> FilterResult<FilterBankSpec> {
    require(fb, BankKind::Shannon)?;
    check_eps(eps)?;
    let part = fb.partition()?;
    let n = fb.grid_n;
    let labels = region_map(&part, n as i64);
    let bc = classify_boundaries(&part, 1e-9)?;
    if bc.triples.is_empty() {
        return Err(FilterError::InvalidBank("partition has no common regular boundaries".into()));
    }
    let xr = folded_real(&part, n);
    let free: Vec<bool> = xr.iter().map(|&x| lowpass_distance(x) > eps + 1e-9).collect();

    let mut pairs: HashMap<(usize, usize), Pair> = HashMap::new();
    for tr in &bc.triples {
        let s = grid_shift(&tr.gamma, n as i64)?;
        let segs: Vec<([f64; 2], [f64; 2])> = tr.e_plus.iter().map(|g| (part.to_real(&g.a), part.to_real(&g.b))).collect();
        // (i, j, segment, signed offset)
        let mut cands = Vec::new();
        for i in 0..n * n {
            let li = labels[i] as usize;
            if (li != tr.k1 && li != tr.k2) || !free[i] {
                continue;
            }
            let x = xr[i];
            let hit = segs.iter().enumerate().find_map(|(si, &(a, b))| {
                hex_neighbours()
                    .iter()
                    .filter_map(|l| segment_offset([x[0] - l[0], x[1] - l[1]], a, b))
                    .find(|d| d.abs() <= eps)
                    .map(|d| (si, d))
            });
            let Some((si, d)) = hit else { continue };
            let j = grid::shifted(i, s, n);
            let lj = labels[j] as usize;
            if lj == li || (lj != tr.k1 && lj != tr.k2) || !free[j] {
                continue;
            }
            cands.push((i, j, si, d));
        }
        // orient each segment so that the offset is positive on the k1 side
        let mut sign = vec![0.0f64; segs.len()];
        for &(i, _, si, d) in &cands {
            if d.abs() < 1e-9 {
                continue;
            }
            let s = if labels[i] as usize == tr.k1 { d.signum() } else { -d.signum() };
            if sign[si] == 0.0 {
                sign[si] = s;
            } else if sign[si] != s {
                return Err(FilterError::InvalidBank(format!(
                    "bands {} and {} interleave along their common boundary",
                    tr.k1, tr.k2
                )));
            }
        }
        for &(i, j, si, d) in &cands {
            let sg = if sign[si] == 0.0 { 1.0 } else { sign[si] };
            let key = (i.min(j), i.max(j));
            pairs.entry(key).or_insert(Pair { i, j, k1: tr.k1, k2: tr.k2, t: sg * d / (2.0 * eps) + 0.5 });
        }
    }

    let mut cover = vec![0u8; n * n];
    for p in pairs.values() {
        cover[p.i] += 1;
        cover[p.j] += 1;
    }
    let mut out = fb.clone();
    for p in pairs.values().filter(|p| cover[p.i] == 1 && cover[p.j] == 1) {
        let (c, s) = profile(p.t, p_smooth);
        out.filters[p.k1].modulus[p.i] = s;
        out.filters[p.k2].modulus[p.i] = c;
        out.filters[p.k1].modulus[p.j] = c;
        out.filters[p.k2].modulus[p.j] = s;
    }
    for (f, eta) in out.filters.iter_mut().zip(BASIS_ETA) {
        f.eta = eta;
    }
    out.kind = BankKind::BasisOb1;
    out.epsilon = eps;
    out.p_smooth = p_smooth;
    Ok(out)
}

/// Extend `ℳ_0` continuously across `∂A_0` of an ob1 bank.
///
/// An inside point at depth `d < eps` from its unique nearest edge `e` pairs
/// with its translate by `γ_e = π·n_e`, which lies outside the opposite edge at
/// the same distance in some band `b`; `ℳ_0` falls from 1 to `1/√2` at the
/// edge while `ℳ_b` rises, with the values swapped on the translate.
pub fn smooth_refinement(fb: &FilterBankSpec, eps: f64, p_smooth: u32) -> FilterResult<FilterBankSpec> {
    require(fb, BankKind::BasisOb1)?;
    check_eps(eps)?;
    if eps > fb.epsilon + 1e-12 {
        return Err(FilterError::ValueError(format!(
            "refinement eps {eps} exceeds the regular-boundary eps {} reserved around A_0",
            fb.epsilon
        )));
    }
    let part = fb.partition()?;
    let n = fb.grid_n;
    let labels = region_map(&part, n as i64);
    let xr = folded_real(&part, n);
    let normals = hex_normals();
    let phase = Phase::new(n);

    let mut out = fb.clone();
    for i in 0..n * n {
        if labels[i] != 0 {
            continue;
        }
        let x = xr[i];
        let mut depth: Vec<(f64, usize)> =
            normals.iter().enumerate().map(|(e, m)| (PI / 2.0 - (m[0] * x[0] + m[1] * x[1]), e)).collect();
        depth.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (d, e) = depth[0];
        if d >= eps || depth[1].0 - d < 1e-9 {
            continue;
        }
        let g = [PI * normals[e][0], PI * normals[e][1]];
        let s = grid::hex_grid_shift(g, n)
            .ok_or_else(|| FilterError::GridAlignment(format!("γ = ({:.4}, {:.4}) is not on the {n}-grid", g[0], g[1])))?;
        let j = grid::shifted(i, s, n);
        let b = labels[j] as usize;
        let gd = [Rational64::new(s[0], n as i64), Rational64::new(s[1], n as i64)];
        if b == 0 || !in_dual_sublattice(&part, b, &gd) {
            return Err(FilterError::InvalidBank(format!("edge shift does not alias A_0 with a band (band {b})")));
        }
        // e^{i⟨γ, η_0 − η_b⟩} must be −1
        let eta = [out.filters[0].eta[0] - out.filters[b].eta[0], out.filters[0].eta[1] - out.filters[b].eta[1]];
        let ph = phase.at(s[0], s[1], eta);
        if (ph.re + 1.0).abs() > 1e-9 {
            return Err(FilterError::InvalidBank(format!("phase condition fails for band {b}")));
        }
        let untouched = out.filters[0].modulus[i] == 1.0
            && out.filters[b].modulus[j] == 1.0
            && out.filters.iter().enumerate().all(|(k, f)| k == b || f.modulus[j] == 0.0);
        if !untouched {
            return Err(FilterError::ValueError(format!(
                "eps = {eps} is incompatible with the region geometry: the refinement strip meets an existing transition"
            )));
        }
        let (c, sn) = profile(0.5 - d / (2.0 * eps), p_smooth);
        out.filters[0].modulus[i] = c;
        out.filters[b].modulus[i] = sn;
        out.filters[0].modulus[j] = sn;
        out.filters[b].modulus[j] = c;
    }
    out.kind = BankKind::BasisOb2;
    Ok(out)
}
