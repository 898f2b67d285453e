//! The `n×n` frequency grid over one period of `Λ*`.
//!
//! Grid point `(u, v)` is the dual-basis frequency `(u, v)/n`; for the
//! hexagonal lattice that is `ξ = (π(2u − v)/n, √3πv/n)`. Index `v·n + u`.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Row-major index of `(u, v)` after wrapping.
#[inline]
pub fn index(u: i64, v: i64, n: usize) -> usize {
    let n = n as i64;
    (v.rem_euclid(n) * n + u.rem_euclid(n)) as usize
}

/// Index of the grid point shifted by `s`.
#[inline]
pub fn shifted(i: usize, s: [i64; 2], n: usize) -> usize {
    let (u, v) = ((i % n) as i64, (i / n) as i64);
    index(u + s[0], v + s[1], n)
}

/// Real hexagonal frequency of dual coordinates `(u, v)/n`.
#[inline]
pub fn hex_real(u: f64, v: f64, n: usize) -> [f64; 2] {
    let n = n as f64;
    [PI * (2.0 * u - v) / n, 3f64.sqrt() * PI * v / n]
}

/// Grid coordinates of `R_{π/3}ξ`.
#[inline]
pub fn rot60(u: i64, v: i64) -> [i64; 2] {
    [u - v, u]
}

/// Grid coordinates of `R_{−π/3}ξ`.
#[inline]
pub fn rot_m60(u: i64, v: i64) -> [i64; 2] {
    [v, v - u]
}

/// Grid coordinates of the reflection `(ξ1, ξ2) ↦ (ξ1, −ξ2)`.
#[inline]
pub fn reflect(u: i64, v: i64) -> [i64; 2] {
    [u - v, -v]
}

/// `e^{i⟨ξ, η⟩}` at `(u, v)/n` for `η = a·e1 + b·e2`, using `⟨b_i, e_j⟩ = 2πδ_ij`.
pub struct Phase {
    n: usize,
    table: Vec<Complex64>,
}

impl Phase {
    pub fn new(n: usize) -> Self {
        let table = (0..n).map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64)).collect();
        Self { n, table }
    }

    #[inline]
    pub fn at(&self, u: i64, v: i64, eta: [i64; 2]) -> Complex64 {
        let m = (u * eta[0] + v * eta[1]).rem_euclid(self.n as i64);
        self.table[m as usize]
    }
}

/// Unit normals of the six facets of the hexagonal cell, counterclockwise from `(1, 0)`.
pub fn hex_normals() -> [[f64; 2]; 6] {
    let mut out = [[0.0; 2]; 6];
    for (j, o) in out.iter_mut().enumerate() {
        let a = j as f64 * PI / 3.0;
        *o = [a.cos(), a.sin()];
    }
    out
}

/// Hexagonal gauge `max_j ⟨ξ, n_j⟩ / π`: 1 on the cell boundary, 1/2 on `∂A_0`.
pub fn hex_gauge(x: [f64; 2]) -> f64 {
    hex_normals().iter().map(|n| n[0] * x[0] + n[1] * x[1]).fold(f64::MIN, f64::max) / PI
}

/// Euclidean distance from `x` to the closed hexagon `{gauge ≤ r}`.
pub fn dist_to_hexagon(x: [f64; 2], r: f64) -> f64 {
    let h = r * PI;
    let ns = hex_normals();
    if ns.iter().all(|n| n[0] * x[0] + n[1] * x[1] <= h) {
        return 0.0;
    }
    // vertices sit at angles π/6 + jπ/3, radius h·2/√3
    let rv = h * 2.0 / 3f64.sqrt();
    let verts: Vec<[f64; 2]> = (0..6)
        .map(|j| {
            let a = PI / 6.0 + j as f64 * PI / 3.0;
            [rv * a.cos(), rv * a.sin()]
        })
        .collect();
    (0..6)
        .map(|j| seg_dist(x, verts[(j + 5) % 6], verts[j]))
        .fold(f64::MAX, f64::min)
}

fn seg_dist(x: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let t = (((x[0] - a[0]) * d[0] + (x[1] - a[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1])).clamp(0.0, 1.0);
    let p = [a[0] + t * d[0] - x[0], a[1] + t * d[1] - x[1]];
    p[0].hypot(p[1])
}

/// The Λ* translates reaching the six cells around the origin cell (and zero).
pub fn hex_neighbours() -> [[f64; 2]; 7] {
    let s3 = 3f64.sqrt();
    [
        [0.0, 0.0],
        [2.0 * PI, 0.0],
        [-2.0 * PI, 0.0],
        [PI, s3 * PI],
        [-PI, -s3 * PI],
        [-PI, s3 * PI],
        [PI, -s3 * PI],
    ]
}

/// Fold a real frequency into the half-open hexagonal cell, resolving boundary
/// points by the infinitesimal perturbation `x + t·d`, `t → 0⁺`.
pub fn fold_perturbed(x: [f64; 2], d: [f64; 2]) -> [f64; 2] {
    const TOL: f64 = 1e-9;
    let ns = hex_normals();
    let mut y = x;
    // coarse fold: bring into the closed cell
    for _ in 0..8 {
        let mut moved = false;
        for n in &ns {
            let h = n[0] * y[0] + n[1] * y[1];
            if h > PI + TOL {
                let k = ((h - PI) / (2.0 * PI)).ceil().max(1.0);
                y = [y[0] - 2.0 * PI * k * n[0], y[1] - 2.0 * PI * k * n[1]];
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    // boundary: cross any facet the perturbation leaves through
    for _ in 0..3 {
        let mut moved = false;
        for n in &ns {
            let h = n[0] * y[0] + n[1] * y[1];
            if (h - PI).abs() <= TOL && n[0] * d[0] + n[1] * d[1] > 0.0 {
                y = [y[0] - 2.0 * PI * n[0], y[1] - 2.0 * PI * n[1]];
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    y
}

/// Grid shift realizing the real frequency `g`, if it lies on the `n`-grid.
pub fn hex_grid_shift(g: [f64; 2], n: usize) -> Option<[i64; 2]> {
    let nf = n as f64;
    let v = g[1] * nf / (3f64.sqrt() * PI);
    let u = (g[0] * nf / PI + v) / 2.0;
    let (ur, vr) = (u.round(), v.round());
    ((u - ur).abs() < 1e-9 && (v - vr).abs() < 1e-9).then_some([ur as i64, vr as i64])
}
