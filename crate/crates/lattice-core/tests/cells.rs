use lattice_core::{grid_frequency, CellKind, Lattice2, ReciprocalCell};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn dual_coords(cell: &ReciprocalCell, xi: [f64; 2]) -> [f64; 2] {
    let e = cell.dual().generators_f64();
    let det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
    [
        (e[1][1] * xi[0] - e[0][1] * xi[1]) / det,
        (-e[1][0] * xi[0] + e[0][0] * xi[1]) / det,
    ]
}

fn check_fold(cell: &ReciprocalCell, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let xi = [rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0)];
        let f = cell.fold_to_cell(xi);
        assert!(cell.contains(f), "{xi:?} -> {f:?}");
        let ff = cell.fold_to_cell(f);
        assert!((ff[0] - f[0]).abs() < 1e-12 && (ff[1] - f[1]).abs() < 1e-12);
        let d = dual_coords(cell, [xi[0] - f[0], xi[1] - f[1]]);
        assert!((d[0] - d[0].round()).abs() < 1e-9 && (d[1] - d[1].round()).abs() < 1e-9);
    }
}

#[test]
fn fold_is_idempotent_hex() {
    check_fold(&ReciprocalCell::voronoi(&Lattice2::hexagonal()), 7);
}

#[test]
fn fold_is_idempotent_square() {
    check_fold(&ReciprocalCell::voronoi(&Lattice2::square()), 11);
}

#[test]
fn fold_small_examples() {
    let hex = ReciprocalCell::voronoi(&Lattice2::hexagonal());
    assert_eq!(hex.fold_to_cell([0.0, 0.0]), [0.0, 0.0]);
    let f = hex.fold_to_cell([PI + 0.1, 0.0]);
    assert!((f[0] - (-PI + 0.1)).abs() < 1e-12 && f[1].abs() < 1e-12);
}

#[test]
fn hex_cell_is_voronoi() {
    let cell = ReciprocalCell::voronoi(&Lattice2::hexagonal());
    assert_eq!(cell.kind(), CellKind::Hexagon);
    let e = cell.dual().generators_f64();
    let n = 60;
    for u in -n..n {
        for v in -n..n {
            if !cell.contains_grid(u, v, n) {
                continue;
            }
            let xi = grid_frequency(cell.dual(), u, v, n);
            let r = xi[0].hypot(xi[1]);
            for a in -2..=2 {
                for b in -2..=2 {
                    let g = [e[0][0] * a as f64 + e[0][1] * b as f64, e[1][0] * a as f64 + e[1][1] * b as f64];
                    assert!(r <= (xi[0] + g[0]).hypot(xi[1] + g[1]) + 1e-12);
                }
            }
        }
    }
}

#[test]
fn grid_folding_tiles_exactly() {
    for owner in [Lattice2::hexagonal(), Lattice2::square()] {
        let cell = ReciprocalCell::voronoi(&owner);
        let n = 48;
        let mut seen = std::collections::HashSet::new();
        for u in 0..n {
            for v in 0..n {
                let f = cell.fold_grid(u, v, n);
                assert!(cell.contains_grid(f[0], f[1], n));
                assert_eq!((f[0] - u).rem_euclid(n), 0);
                assert_eq!((f[1] - v).rem_euclid(n), 0);
                assert!(seen.insert(f));
            }
        }
        // every cell point is hit: count cell points in a window
        let inside = (-2 * n..2 * n)
            .flat_map(|u| (-2 * n..2 * n).map(move |v| (u, v)))
            .filter(|&(u, v)| cell.contains_grid(u, v, n))
            .count();
        assert_eq!(inside as i64, n * n);
    }
}
