//! Two-band cutting filters that split one directional band into the two
//! finer directions of the next hexagonal partition.

use std::f64::consts::PI;

use lattice_core::{hnf, IMat2};
use num_rational::Rational64;
use partition::{admissible::region_map, build_hexagonal, partition::hex_sublattice_coords, Family};
use serde::{Deserialize, Serialize};

use crate::bank::{BankKind, FilterBankSpec, TransferGrid};
use crate::error::{FilterError, FilterResult};
use crate::grid::{self, hex_real};

pub const DEFAULT_CUT_EPS: f64 = PI / 16.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutTarget {
    Basis,
    Frame,
}

/// Lattices, shift and phase of one cut.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutDesign {
    pub target: CutTarget,
    pub stage: u32,
    /// Band index in the partition being refined.
    pub band: usize,
    /// Lattice of the band's coefficients (coordinates of `Λ`).
    pub parent: IMat2,
    /// Lattice of each of the two children.
    pub child: IMat2,
    /// `γ ∈ C* \ P*` in dual coordinates of `Λ*`.
    pub gamma: [Rational64; 2],
    /// `η ∈ P` with `⟨γ, η⟩ ≡ π`, coordinates of `Λ`.
    pub eta: [i64; 2],
    /// Partition whose bands `sub[0]`, `sub[1]` split the target band.
    pub fine_p: u32,
    pub sub: [usize; 2],
}

type Q = Rational64;

/// Squared norm of a dual point over `π²`: `(2u − v)² + 3v²`.
fn dual_norm2(g: &[Q; 2]) -> Q {
    let a = g[0] * 2 - g[1];
    a * a + g[1] * g[1] * 3
}

fn integral(m: &IMat2, g: &[Q; 2]) -> bool {
    // mᵀγ integral ⟺ γ ∈ (lattice m)*
    (0..2).all(|j| (g[0] * m[0][j] + g[1] * m[1][j]).is_integer())
}

/// Minimal-norm representative of `C* \ P*`, ties to larger `ξ1`, then `ξ2`.
fn pick_gamma(parent: &IMat2, child: &IMat2) -> [Q; 2] {
    let d = hnf::det(child).abs();
    let mut best: Option<([Q; 2], (Q, Q, Q))> = None;
    for x in -2 * d..=2 * d {
        for y in -2 * d..=2 * d {
            let g = [Q::new(x, d), Q::new(y, d)];
            if !integral(child, &g) || integral(parent, &g) {
                continue;
            }
            // ordering key: small norm, then large ξ1/π = 2u − v, then large v
            let key = (dual_norm2(&g), -(g[0] * 2 - g[1]), -g[1]);
            if best.as_ref().is_none_or(|(_, k)| key < *k) {
                best = Some((g, key));
            }
        }
    }
    best.expect("index-2 sublattice has a nontrivial dual coset").0
}

/// Minimal-norm `η ∈ P` with `⟨γ, η⟩ ≡ π (mod 2π)`, ties to larger `x`, then `y`.
fn pick_eta(parent: &IMat2, gamma: &[Q; 2]) -> FilterResult<[i64; 2]> {
    let half = Q::new(1, 2);
    let mut best: Option<([i64; 2], (i64, i64, i64))> = None;
    for z0 in -8..=8 {
        for z1 in -8..=8 {
            let e = [parent[0][0] * z0 + parent[0][1] * z1, parent[1][0] * z0 + parent[1][1] * z1];
            let ip = gamma[0] * e[0] + gamma[1] * e[1];
            if !(ip - half).is_integer() {
                continue;
            }
            // 3|η|² = 3a² + (a + 2b)², x = a, √3·y = a + 2b
            let key = (3 * e[0] * e[0] + (e[0] + 2 * e[1]).pow(2), -e[0], -(e[0] + 2 * e[1]));
            if best.as_ref().is_none_or(|(_, k)| key < *k) {
                best = Some((e, key));
            }
        }
    }
    best.map(|b| b.0).ok_or_else(|| FilterError::InvalidBank("no η with ⟨γ, η⟩ ≡ π".into()))
}

/// Lattices and phases for cutting band `band` at `stage` (1 or 2).
///
/// Basis stage `s` refines the `2^s`-fan (lattice group `Γ^{2^s}`) into the
/// `2^{s+1}`-fan; frame stage 1 refines the six frame bands (lattice `2Λ`) into
/// the twelve-direction fan with children on the basis `Γ^2` lattices, and
/// frame stage 2 continues from `Γ^2` to `Γ^4`.
pub fn cut_design(target: CutTarget, stage: u32, band: usize) -> FilterResult<CutDesign> {
    if !(1..=2).contains(&stage) {
        return Err(FilterError::ValueError(format!("cut stage {stage} unsupported (expected 1 or 2)")));
    }
    let p = 1i64 << stage;
    if band == 0 || band as i64 > 3 * p {
        return Err(FilterError::ValueError(format!("band {band} outside 1..={}", 3 * p)));
    }
    let group = ((band as i64 - 1) / p) as usize;
    let (parent, child) = match target {
        CutTarget::Basis => (hex_sublattice_coords(p)[group], hex_sublattice_coords(2 * p)[group]),
        CutTarget::Frame if stage == 1 => ([[2, 0], [0, 2]], hex_sublattice_coords(p)[group]),
        CutTarget::Frame => (hex_sublattice_coords(p / 2)[group], hex_sublattice_coords(p)[group]),
    };
    let (dp, dc) = (hnf::det(&parent).abs(), hnf::det(&child).abs());
    let inside = (0..2).all(|j| hnf::contains(&parent, [child[0][j], child[1][j]]));
    if !inside || dc != 2 * dp {
        return Err(FilterError::InvalidBank("child lattice is not an index-2 sublattice of the parent".into()));
    }
    let gamma = pick_gamma(&parent, &child);
    let eta = pick_eta(&parent, &gamma)?;
    Ok(CutDesign {
        target,
        stage,
        band,
        parent,
        child,
        gamma,
        eta,
        fine_p: 2 * p as u32,
        sub: [2 * band - 1, 2 * band],
    })
}

/// Grid shifts of the representatives of `P*/Λ*`.
fn dual_coset_shifts(parent: &IMat2, n: usize) -> FilterResult<Vec<[i64; 2]>> {
    let d = hnf::det(parent).abs();
    let mut reps: Vec<[Q; 2]> = Vec::new();
    for x in 0..d {
        for y in 0..d {
            let g = [Q::new(x, d), Q::new(y, d)];
            if integral(parent, &g) && !reps.contains(&g) {
                reps.push(g);
            }
        }
    }
    reps.iter().map(|g| shift_of(g, n)).collect()
}

fn shift_of(g: &[Q; 2], n: usize) -> FilterResult<[i64; 2]> {
    let s = [g[0] * n as i64, g[1] * n as i64];
    if !(s[0].is_integer() && s[1].is_integer()) {
        return Err(FilterError::GridAlignment(format!("shift ({}, {}) is not on the {n}-grid", g[0], g[1])));
    }
    Ok([s[0].to_integer(), s[1].to_integer()])
}

/// Normalized radial bump `exp(−1/(1 − (r/eps)²))` on the grid: (offset, weight).
fn bump(eps: f64, n: usize) -> Vec<([i64; 2], f64)> {
    let reach = (eps * n as f64 / PI).ceil() as i64 + 2;
    let mut w = Vec::new();
    for dv in -reach..=reach {
        for du in -reach..=reach {
            let x = hex_real(du as f64, dv as f64, n);
            let r = x[0].hypot(x[1]) / eps;
            if r < 1.0 {
                w.push(([du, dv], (-1.0 / (1.0 - r * r)).exp()));
            }
        }
    }
    let total: f64 = w.iter().map(|p| p.1).sum();
    w.iter_mut().for_each(|p| p.1 /= total);
    w
}

/// The 2-band bank `M_1 = √2·c_1/√(c_1² + c_1(·+γ)²)`, `c_1 = g_eps ∗ χ_B`,
/// `M_2(ξ) = M_1(ξ + γ)e^{i⟨ξ, η⟩}`.
pub fn cutting_filters(target: CutTarget, stage: u32, band: usize, eps: f64, grid_n: usize) -> FilterResult<FilterBankSpec> {
    if !(eps > 0.0 && eps < PI / 4.0) {
        return Err(FilterError::ValueError(format!("cut eps = {eps} outside (0, π/4)")));
    }
    let design = cut_design(target, stage, band)?;
    let n = grid_n;
    let fine = build_hexagonal(design.fine_p)?;
    let labels = region_map(&fine, n as i64);
    let gs = shift_of(&design.gamma, n)?;
    let nus = dual_coset_shifts(&design.parent, n)?;
    let [s1, s2] = design.sub.map(|s| s as u8);

    let chi: Vec<f64> = (0..n * n)
        .map(|i| {
            let hit = nus.iter().any(|&nu| {
                let a = grid::shifted(i, nu, n);
                labels[a] == s1 || labels[grid::shifted(a, gs, n)] == s2
            });
            if hit { 1.0 } else { 0.0 }
        })
        .collect();
    if (0..n * n).any(|i| chi[i] + chi[grid::shifted(i, gs, n)] != 1.0) {
        return Err(FilterError::InvalidBank("cut region and its γ-translate do not tile".into()));
    }
    let kernel = bump(eps, n);
    let c1: Vec<f64> = (0..n * n)
        .map(|i| kernel.iter().map(|&(o, w)| w * chi[grid::shifted(i, o, n)]).sum())
        .collect();
    let m1: Vec<f64> = (0..n * n)
        .map(|i| {
            let (a, b) = (c1[i], c1[grid::shifted(i, gs, n)]);
            a / a.hypot(b)
        })
        .collect();
    let m2: Vec<f64> = (0..n * n).map(|i| m1[grid::shifted(i, gs, n)]).collect();
    let mut fb = FilterBankSpec {
        kind: BankKind::Cut2Band,
        family: Family::Hexagonal(design.fine_p),
        grid_n,
        epsilon: eps,
        p_smooth: 0,
        parent: design.parent,
        filters: vec![
            TransferGrid { band: design.sub[0], lattice: design.child, eta: [0, 0], modulus: m1 },
            TransferGrid { band: design.sub[1], lattice: design.child, eta: design.eta, modulus: m2 },
        ],
    };
    fb.symmetrize();
    Ok(fb)
}

/// `γ` of a cut in real coordinates.
pub fn gamma_real(d: &CutDesign) -> [f64; 2] {
    let f = |q: Q| *q.numer() as f64 / *q.denom() as f64;
    hex_real(f(d.gamma[0]), f(d.gamma[1]), 1)
}

/// `η` of a cut in real coordinates.
pub fn eta_real(d: &CutDesign) -> [f64; 2] {
    [d.eta[0] as f64, (d.eta[0] + 2 * d.eta[1]) as f64 / 3f64.sqrt()]
}

/// Whether `γ_a − γ_b ∈ P*` for dual points.
pub fn congruent(parent: &IMat2, a: &[Q; 2], b: &[Q; 2]) -> bool {
    integral(parent, &[a[0] - b[0], a[1] - b[1]])
}
