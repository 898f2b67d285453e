use num_rational::Rational64;
use partition::{build_dyadic, build_hexagonal, build_hexagonal_frame, check_admissible, PartitionError};

#[test]
fn hexagonal_partitions_are_admissible() {
    for p in 1..=3 {
        let part = build_hexagonal(p).unwrap();
        assert_eq!(part.directions(), 3 * p as usize);
        let rep = check_admissible(&part, 192).unwrap();
        assert!(rep.admissible, "p={p}: {:?}", rep.bands);
    }
}

#[test]
fn dyadic_partitions_are_admissible() {
    for p in 1..=2 {
        let part = build_dyadic(p).unwrap();
        assert_eq!(part.directions(), 6 * p as usize);
        let rep = check_admissible(&part, 192).unwrap();
        assert!(rep.admissible, "p={p}: {:?}", rep.bands);
    }
}

#[test]
fn critical_sampling_ratios() {
    for p in 1..=3 {
        assert_eq!(build_hexagonal(p).unwrap().critical_ratio().unwrap(), Rational64::from_integer(1));
    }
    for p in 1..=2 {
        assert_eq!(build_dyadic(p).unwrap().critical_ratio().unwrap(), Rational64::from_integer(1));
    }
    assert_eq!(build_hexagonal_frame().unwrap().critical_ratio().unwrap(), Rational64::new(7, 4));
}

#[test]
fn six_direction_indices() {
    let part = build_hexagonal(2).unwrap();
    let idx: Vec<i64> = part
        .sublattices
        .iter()
        .map(|g| lattice_core::quotient_index(&part.base, g).unwrap())
        .collect();
    assert_eq!(idx, vec![4, 8, 8, 8, 8, 8, 8]);
    let fr = build_hexagonal_frame().unwrap();
    for g in &fr.sublattices[1..] {
        assert_eq!(lattice_core::quotient_index(&fr.base, g).unwrap(), 4);
    }
}

#[test]
fn dyadic_first_band_index() {
    let part = build_dyadic(1).unwrap();
    assert_eq!(lattice_core::quotient_index(&part.base, &part.sublattices[1]).unwrap(), 8);
}

#[test]
fn trivial_sublattices_fail() {
    let part = build_hexagonal(2).unwrap().with_sublattices(vec![[[1, 0], [0, 1]]; 7]).unwrap();
    let rep = check_admissible(&part, 192).unwrap();
    assert!(!rep.admissible);
    assert!(rep.bands.iter().all(|b| b.min_coverage == 0));
}

#[test]
fn frame_lattices_do_not_tile() {
    let rep = check_admissible(&build_hexagonal_frame().unwrap(), 192).unwrap();
    assert!(!rep.admissible);
    assert_eq!(rep.bands[0].max_multiplicity, 1);
}

#[test]
fn small_grid_rejected() {
    assert!(matches!(
        check_admissible(&build_hexagonal(2).unwrap(), 32),
        Err(PartitionError::ValueError(_))
    ));
}

#[test]
fn misaligned_grid_rejected() {
    // the p=3 directional cosets have denominator 12; 100 is not a multiple
    assert!(matches!(
        check_admissible(&build_hexagonal(3).unwrap(), 100),
        Err(PartitionError::GridAlignment(_))
    ));
}

#[test]
fn fan_angles_six_directions() {
    // first p bands subdivide the horizontal fan |θ| ≤ π/6
    let part = build_hexagonal(2).unwrap();
    let n = 192;
    for v in 0..n {
        for u in 0..n {
            let k = part.region_of_grid(u, v, n);
            if k == 1 || k == 2 {
                let [a, b] = part.cell.fold_grid(u, v, n);
                let xi = lattice_core::grid_frequency(part.dual(), a, b, n);
                let t = xi[1].atan2(xi[0]);
                let t = if t.abs() > std::f64::consts::FRAC_PI_2 { (t - std::f64::consts::PI * t.signum()).abs() } else { t.abs() };
                assert!(t <= std::f64::consts::FRAC_PI_6 + 1e-12);
            }
        }
    }
}
