use partition::admissible::{grid_rotation, region_map, region_permutations, stabilized_points};
use partition::{build_dyadic, build_hexagonal, FrequencyPartition};

fn idx(u: i64, v: i64, n: i64) -> usize {
    (v.rem_euclid(n) * n + u.rem_euclid(n)) as usize
}

/// Counts of grid points breaking mirror symmetry and rotation covariance of the labels,
/// away from points whose orbit is fixed by a rotation.
fn violations(part: &FrequencyPartition, n: i64) -> (usize, usize) {
    let labels = region_map(part, n);
    let fixed = stabilized_points(part, n).unwrap();
    let (rot, order) = grid_rotation(part.family);
    let perm = region_permutations(part, n, rot, order);
    let (mut mirror, mut turn) = (0, 0);
    for v in 0..n {
        for u in 0..n {
            let i = idx(u, v, n);
            if fixed[i] {
                continue;
            }
            if labels[idx(-u, -v, n)] != labels[i] {
                mirror += 1;
            }
            let r = rot(u, v);
            if labels[idx(r[0], r[1], n)] as usize != perm[1][labels[i] as usize] {
                turn += 1;
            }
        }
    }
    (mirror, turn)
}

#[test]
fn hexagonal_labels_are_symmetric_off_fixed_orbits() {
    for p in [1, 2, 4] {
        let part = build_hexagonal(p).unwrap();
        assert_eq!(violations(&part, 128), (0, 0), "p={p}");
    }
}

#[test]
fn dyadic_labels_are_symmetric_off_fixed_orbits() {
    for p in [1, 2] {
        let part = build_dyadic(p).unwrap();
        assert_eq!(violations(&part, 96), (0, 0), "p={p}");
    }
}

#[test]
fn rotation_permutes_bands_within_groups() {
    let part = build_hexagonal(2).unwrap();
    let (rot, order) = grid_rotation(part.family);
    let perm = region_permutations(&part, 96, rot, order);
    assert_eq!(perm[0], (0..7).collect::<Vec<_>>());
    // half turn fixes every band, a third turn cycles the three groups
    assert_eq!(perm[3], (0..7).collect::<Vec<_>>());
    assert_eq!(perm[1][0], 0);
    let group = |k: usize| (k - 1) / 2;
    for k in 1..7 {
        assert_ne!(group(perm[2][k]), group(k));
    }
}

#[test]
fn fixed_points_are_few() {
    let part = build_hexagonal(2).unwrap();
    for n in [64, 128, 256] {
        let fixed = stabilized_points(&part, n).unwrap();
        let count = fixed.iter().filter(|&&f| f).count();
        assert!(count > 0 && count <= 128, "n={n}: {count}");
    }
}
