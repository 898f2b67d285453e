use filter_design::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transform_engine::*;

fn bank(kind: BankKind, n: usize) -> FilterBankSpec {
    let eps = if kind == BankKind::Frame { DEFAULT_FRAME_EPS } else { DEFAULT_BASIS_EPS };
    build_bank(kind, eps, 1, n).unwrap()
}

const KINDS: [BankKind; 4] = [BankKind::Shannon, BankKind::BasisOb1, BankKind::BasisOb2, BankKind::Frame];

fn random_image(n: usize, seed: u64) -> ImageGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImageGrid::new(n, n, (0..n * n).map(|_| rng.gen::<f64>()).collect()).unwrap()
}

fn rel_error(x: &ImageGrid, y: &ImageGrid) -> f64 {
    x.distance(y) / x.energy().sqrt()
}

#[test]
fn constant_image_has_no_wavelet_content() {
    let n = 64;
    let x = ImageGrid::from_fn(n, n, |_, _| 1.0);
    for kind in [BankKind::BasisOb1, BankKind::Shannon, BankKind::Frame] {
        let t = Transform::new(&bank(kind, n)).unwrap();
        let bands = t.analyze_one_level(&x).unwrap();
        for b in &bands[1..] {
            assert!(b.iter().all(|z| z.norm() <= 1e-10), "{kind:?}");
        }
        let c0 = bands[0][0];
        assert!(bands[0].iter().all(|z| (z - c0).norm() <= 1e-10));
        assert!((c0.re - 2.0).abs() <= 1e-10, "{c0}");
    }
}

#[test]
fn delta_energy_is_preserved() {
    let n = 64;
    let mut x = ImageGrid::zeros(n, n);
    x.samples[0] = 1.0;
    for kind in KINDS {
        let t = Transform::new(&bank(kind, n)).unwrap();
        let e: f64 = t.analyze_one_level(&x).unwrap().iter().flatten().map(|z| z.norm_sqr()).sum();
        assert!((e - 1.0).abs() <= 1e-10, "{kind:?}: {e}");
    }
}

#[test]
fn frame_level_sizes() {
    let n = 64;
    let t = Transform::new(&bank(BankKind::Frame, n)).unwrap();
    let bands = t.analyze_one_level(&random_image(n, 1)).unwrap();
    assert_eq!(bands.len(), 7);
    assert!(bands.iter().all(|b| b.len() == n * n / 4));
    assert_eq!(bands.iter().map(Vec::len).sum::<usize>(), 7 * n * n / 4);
}

#[test]
fn one_level_round_trip() {
    let n = 256;
    let x = random_image(n, 2);
    for kind in [BankKind::BasisOb1, BankKind::Frame] {
        let t = Transform::new(&bank(kind, n)).unwrap();
        let bands = t.analyze_one_level(&x).unwrap();
        let y = t.synthesize_one_level(&bands, n).unwrap();
        assert!(rel_error(&x, &y) <= 1e-10, "{kind:?}");
    }
}

#[test]
fn zeroed_wavelet_bands_project_onto_the_scaling_space() {
    let n = 128;
    let x = random_image(n, 2);
    for kind in [BankKind::BasisOb1, BankKind::BasisOb2] {
        let t = Transform::new(&bank(kind, n)).unwrap();
        let mut bands = t.analyze_one_level(&x).unwrap();
        for b in &mut bands[1..] {
            b.iter_mut().for_each(|z| *z = Complex64::default());
        }
        let proj = t.synthesize_one_level(&bands, n).unwrap();
        let again = t.analyze_one_level(&proj).unwrap();
        let diff = again[0].iter().zip(&bands[0]).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(diff <= 1e-10, "{kind:?}: {diff}");
        assert!(again[1..].iter().flatten().all(|z| z.norm() <= 1e-10));
        // the residual is orthogonal to the projection
        let dot: f64 = proj.samples.iter().zip(&x.samples).map(|(p, v)| p * (v - p)).sum();
        assert!(dot.abs() <= 1e-9 * x.energy(), "{kind:?}: {dot}");
    }
}

#[test]
fn coefficient_counts() {
    let n = 256;
    let x = random_image(n, 3);
    let basis = analyze(&x, &bank(BankKind::BasisOb1, n), 3).unwrap();
    assert_eq!(basis.coefficient_count(), n * n);
    let frame = analyze(&x, &bank(BankKind::Frame, n), 3).unwrap();
    assert_eq!(frame.coefficient_count() as f64, (n * n) as f64 * 1.984375);
    assert_eq!(frame.bands.len(), 18);
    assert_eq!(frame.scaling.coeffs.len(), (n / 8) * (n / 8));
}

#[test]
fn multilevel_round_trip_and_parseval() {
    let n = 256;
    let x = random_image(n, 4);
    for kind in KINDS {
        let t = Transform::new(&bank(kind, n)).unwrap();
        for levels in 1..=3 {
            let p = t.analyze(&x, levels).unwrap();
            assert!(rel_error(&x, &t.synthesize(&p).unwrap()) <= 1e-10, "{kind:?} J={levels}");
            assert!((p.energy() - x.energy()).abs() / x.energy() <= 1e-10, "{kind:?} J={levels}");
        }
    }
}

#[test]
fn band_lattices_follow_the_dilation_ladder() {
    let n = 64;
    let fb = bank(BankKind::BasisOb1, n);
    let p = analyze(&random_image(n, 5), &fb, 3).unwrap();
    for b in &p.bands {
        let s = 1i64 << (b.id.level - 1);
        let expect = lattice_core::hnf::hnf(&fb.filters[b.id.band].lattice.map(|r| r.map(|x| x * s))).unwrap();
        assert_eq!(b.lattice, expect, "{:?}", b.id);
        assert_eq!(b.coeffs.len() as i64 * lattice_core::hnf::det(&b.lattice), (n * n) as i64);
    }
    assert_eq!(p.scaling.lattice, [[8, 0], [0, 8]]);
}

#[test]
fn zero_pyramid_gives_zero_image() {
    let n = 64;
    let p = analyze(&random_image(n, 6), &bank(BankKind::BasisOb2, n), 2).unwrap();
    let y = synthesize(&p.zeroed()).unwrap();
    assert!(y.samples.iter().all(|&v| v == 0.0));
}

#[test]
fn single_coefficient_matches_rendered_wavelet() {
    // level-2 atom at the origin: spectrum √(|Λ/Γ_0||Λ/Γ_k|)·m_k(2ω)·m_0(ω)
    let n = 64;
    let fb = bank(BankKind::BasisOb1, n);
    let t = Transform::new(&fb).unwrap();
    let mut p = t.analyze(&ImageGrid::zeros(n, n), 2).unwrap();
    let render = render_basis_functions(&fb, 2, n).unwrap();
    for k in 1..7 {
        let id = BandId::new(2, 0, k);
        let mut q = p.zeroed();
        q.band_mut(id).unwrap().coeffs[0] = Complex64::new(1.0, 0.0);
        let mut atom = t.synthesize_complex(&q).unwrap();
        filter_design::fft::Fft2::new(n).forward(&mut atom);
        let scale = ((fb.index(0) * fb.index(k)) as f64).sqrt();
        let h = n / 2;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                let rendered = render.psi_hat[k - 1][r * n + c] * scale;
                let got = atom[((r + h) % n) * n + (c + h) % n];
                worst = worst.max((rendered - got).norm());
            }
        }
        assert!(worst <= 1e-10, "band {k}: {worst}");
    }
    p.bands.clear();
    assert!(matches!(synthesize(&p), Err(TransformError::Metadata(_))));
}

#[test]
fn basis_atoms_are_orthonormal() {
    let n = 64;
    let t = Transform::new(&bank(BankKind::BasisOb1, n)).unwrap();
    let zero = t.analyze(&ImageGrid::zeros(n, n), 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let total = zero.coefficient_count();
    let mut picks: Vec<usize> = Vec::new();
    while picks.len() < 64 {
        let i = rng.gen_range(0..total);
        if !picks.contains(&i) {
            picks.push(i);
        }
    }
    let atoms: Vec<Vec<Complex64>> = picks
        .iter()
        .map(|&i| {
            let mut q = zero.clone();
            *q.coefficients_mut().nth(i).unwrap() = Complex64::new(1.0, 0.0);
            t.synthesize_complex(&q).unwrap()
        })
        .collect();
    let mut worst: f64 = 0.0;
    for (a, x) in atoms.iter().enumerate() {
        for (b, y) in atoms.iter().enumerate() {
            let g: Complex64 = x.iter().zip(y).map(|(p, q)| p * q.conj()).sum();
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((g - want).norm());
        }
    }
    assert!(worst <= 1e-8, "{worst}");
}

#[test]
fn shifts_on_a_band_lattice_permute_its_coefficients() {
    let n = 64;
    let x = random_image(n, 8);
    for kind in [BankKind::BasisOb1, BankKind::Frame] {
        let t = Transform::new(&bank(kind, n)).unwrap();
        let p = t.analyze(&x, 2).unwrap();
        for id in [BandId::new(1, 0, 1), BandId::new(1, 0, 4), BandId::new(2, 0, 6)] {
            let band = p.band(id).unwrap();
            let g = [band.lattice[0][1], band.lattice[1][1]];
            let q = t.analyze(&x.shifted(g[1], g[0]), 2).unwrap();
            let moved = q.band(id).unwrap();
            let ln = p.level_size(id.level);
            let w = band.window(ln).unwrap();
            let s = 1i64 << (id.level - 1);
            let local = [g[0] / s, g[1] / s];
            for (i, pos) in w.positions().into_iter().enumerate() {
                let c = [(pos % ln) as i64 + local[0], (pos / ln) as i64 + local[1]];
                let j = w.locate(c).unwrap();
                assert!((moved.coeffs[j] - band.coeffs[i]).norm() <= 1e-10, "{kind:?} {id:?}");
            }
        }
    }
}

#[test]
fn analysis_is_linear() {
    let n = 64;
    let (x, y) = (random_image(n, 9), random_image(n, 10));
    let (a, b) = (1.7, -0.4);
    let z = ImageGrid::from_fn(n, n, |r, c| a * x.at(r, c) + b * y.at(r, c));
    let t = Transform::new(&bank(BankKind::BasisOb2, n)).unwrap();
    let (px, py, pz) = (t.analyze(&x, 3).unwrap(), t.analyze(&y, 3).unwrap(), t.analyze(&z, 3).unwrap());
    let worst = px
        .coefficients()
        .zip(py.coefficients())
        .zip(pz.coefficients())
        .map(|((u, v), w)| (u * a + v * b - w).norm())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-12, "{worst}");
}

fn children_energy(p: &SubbandPyramid, level: u32, stage: u32, band: usize) -> f64 {
    [2 * band - 1, 2 * band].iter().map(|&b| p.band(BandId::new(level, stage, b)).unwrap().energy()).sum()
}

#[test]
fn cutting_basis_band_keeps_count_and_energy() {
    let n = 128;
    let x = random_image(n, 11);
    let t = Transform::new(&bank(BankKind::BasisOb1, n)).unwrap();
    let p = t.analyze(&x, 2).unwrap();
    let plan = CutPlan::new(&p, 1, 1, 1, DEFAULT_CUT_EPS).unwrap();
    let q = apply_cut(&p, &plan).unwrap();
    assert_eq!(q.coefficient_count(), p.coefficient_count());
    assert_eq!(q.bands.len(), p.bands.len() + 1);
    let parent = p.band(BandId::new(1, 0, 1)).unwrap().energy();
    assert!((children_energy(&q, 1, 1, 1) - parent).abs() <= 1e-10 * parent);
    for lat in plan.output_lattices() {
        assert_eq!(lattice_core::hnf::det(&lat).abs(), 16);
    }
    assert!(rel_error(&x, &t.synthesize(&q).unwrap()) <= 1e-10);
    // untouched bands keep their coefficients
    for b in &p.bands[1..] {
        assert_eq!(q.band(b.id).unwrap(), b);
    }
    assert!(matches!(apply_cut(&q, &plan), Err(TransformError::CutError(_))));
    let stage2 = CutPlan::new(&p, 1, 2, 3, DEFAULT_CUT_EPS).unwrap();
    assert!(matches!(apply_cut(&p, &stage2), Err(TransformError::CutError(_))));
}

#[test]
fn cutting_frame_bands_keeps_redundancy() {
    let n = 128;
    let x = random_image(n, 12);
    let t = Transform::new(&bank(BankKind::Frame, n)).unwrap();
    let mut p = t.analyze(&x, 2).unwrap();
    let before = p.coefficient_count();
    for band in 1..=6 {
        let parent = p.band(BandId::new(1, 0, band)).unwrap().energy();
        p.cut(&CutPlan::new(&p, 1, 1, band, DEFAULT_CUT_EPS).unwrap()).unwrap();
        assert!((children_energy(&p, 1, 1, band) - parent).abs() <= 1e-10 * parent);
    }
    let parent = p.band(BandId::new(1, 1, 5)).unwrap().energy();
    p.cut(&CutPlan::new(&p, 1, 2, 5, DEFAULT_CUT_EPS).unwrap()).unwrap();
    assert!((children_energy(&p, 1, 2, 5) - parent).abs() <= 1e-10 * parent);
    assert_eq!(p.coefficient_count(), before);
    assert!((p.energy() - x.energy()).abs() <= 1e-10 * x.energy());
    assert!(rel_error(&x, &t.synthesize(&p).unwrap()) <= 1e-10);
}

#[test]
fn round_trip_over_random_images() {
    let n = 64;
    for kind in KINDS {
        let t = Transform::new(&bank(kind, n)).unwrap();
        let mut layouts = Vec::new();
        for levels in 1..=3 {
            let p = t.analyze(&ImageGrid::zeros(n, n), levels).unwrap();
            layouts.push((levels, Vec::new()));
            let plans = vec![
                CutPlan::new(&p, 1, 1, 2, DEFAULT_CUT_EPS).unwrap(),
                CutPlan::new(&p, 1, 1, 5, DEFAULT_CUT_EPS).unwrap(),
                CutPlan::new(&p, 1, 2, 9, DEFAULT_CUT_EPS).unwrap(),
            ];
            layouts.push((levels, plans));
        }
        for seed in 0..50 {
            let x = random_image(n, 100 + seed);
            for (levels, plans) in &layouts {
                let mut p = t.analyze(&x, *levels).unwrap();
                for plan in plans {
                    p.cut(plan).unwrap();
                }
                let err = rel_error(&x, &t.synthesize(&p).unwrap());
                assert!(err <= 1e-10, "{kind:?} J={levels} cuts={} seed={seed}: {err}", plans.len());
                assert!((p.energy() - x.energy()).abs() <= 1e-10 * x.energy());
            }
        }
    }
}

#[test]
fn pyramid_container_round_trip() {
    let n = 64;
    let x = random_image(n, 13);
    let fb = bank(BankKind::Frame, n);
    let t = Transform::new(&fb).unwrap();
    let mut p = t.analyze(&x, 2).unwrap();
    p.cut(&CutPlan::new(&p, 1, 1, 3, DEFAULT_CUT_EPS).unwrap()).unwrap();
    let mut bytes = Vec::new();
    write_pyramid(&p, &mut bytes).unwrap();
    let back = read_pyramid(bytes.as_slice(), None).unwrap();
    assert_eq!(back, p);
    let back = read_pyramid(bytes.as_slice(), Some(&fb)).unwrap();
    assert!(rel_error(&x, &synthesize(&back).unwrap()) <= 1e-10);

    let other = bank(BankKind::Frame, 128);
    assert!(matches!(read_pyramid(bytes.as_slice(), Some(&other)), Err(TransformError::Metadata(_))));
    let mut bad = bytes.clone();
    bad[0] = b'X';
    assert!(matches!(read_pyramid(bad.as_slice(), None), Err(TransformError::FormatError(_))));
    assert!(read_pyramid(&bytes[..bytes.len() - 8], None).is_err());
}

#[test]
fn corrupted_metadata_is_rejected() {
    let n = 64;
    let t = Transform::new(&bank(BankKind::BasisOb1, n)).unwrap();
    let p = t.analyze(&random_image(n, 14), 2).unwrap();
    let mut q = p.clone();
    q.bands[3].coeffs.pop();
    assert!(matches!(t.synthesize(&q), Err(TransformError::Metadata(_))));
    let mut q = p.clone();
    q.levels = 3;
    assert!(matches!(t.synthesize(&q), Err(TransformError::Metadata(_))));
    let mut q = p.clone();
    q.bands[0].id.band = 9;
    assert!(matches!(t.synthesize(&q), Err(TransformError::Metadata(_))));
    let frame = Transform::new(&bank(BankKind::Frame, n)).unwrap();
    assert!(matches!(frame.synthesize(&p), Err(TransformError::Metadata(_))));
}

#[test]
fn invalid_inputs_are_rejected() {
    let fb = bank(BankKind::BasisOb1, 64);
    let t = Transform::new(&fb).unwrap();
    assert!(matches!(t.analyze(&ImageGrid::zeros(64, 32), 1), Err(TransformError::DimensionMismatch(_))));
    assert!(matches!(t.analyze(&ImageGrid::zeros(24, 24), 3), Err(TransformError::DimensionMismatch(_))));
    assert!(matches!(t.analyze(&ImageGrid::zeros(64, 64), 0), Err(TransformError::ValueError(_))));

    let mut broken = fb.clone();
    broken.filters[2].modulus.iter_mut().for_each(|m| *m *= 0.9);
    assert!(matches!(Transform::new(&broken), Err(TransformError::UnverifiedBank(_))));
    let dyadic = shannon_filters(&::partition::build_dyadic(1).unwrap(), 64).unwrap();
    assert!(matches!(Transform::new(&dyadic), Err(TransformError::ValueError(_))));
    let cut = cutting_filters(CutTarget::Basis, 1, 1, DEFAULT_CUT_EPS, 64).unwrap();
    assert!(matches!(Transform::new(&cut), Err(TransformError::ValueError(_))));
}

#[test]
fn coarser_grids_reuse_exact_samples() {
    let fine = bank(BankKind::BasisOb1, 128);
    let coarse = subsample_bank(&fine, 64).unwrap();
    assert!(pr_verify::check_bank(&coarse).unwrap().max_residual() <= 1e-12);
    assert_eq!(coarse.filters[3].modulus[5 * 64 + 7], fine.filters[3].modulus[10 * 128 + 14]);
    assert!(subsample_bank(&fine, 48).is_err());
    let rebuilt = fit_bank(&fine, 96).unwrap();
    assert_eq!(rebuilt.grid_n, 96);
    // an image larger than the bank's grid: the bank is re-evaluated
    let t = Transform::new(&bank(BankKind::Shannon, 64)).unwrap();
    let x = random_image(128, 15);
    assert!(rel_error(&x, &t.synthesize(&t.analyze(&x, 2).unwrap()).unwrap()) <= 1e-10);
}

#[test]
fn image_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("hexwave-img-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let x = ImageGrid::from_fn(16, 24, |r, c| ((r * 24 + c) % 256) as f64);
    for name in ["a.pgm", "a.png"] {
        let path = dir.join(name);
        x.save(&path).unwrap();
        assert_eq!(ImageGrid::load(&path).unwrap(), x);
    }
    assert!(x.save(dir.join("a.bmp")).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn any_image_round_trips(seed in 0u64..10_000, levels in 1u32..=3, scale in 0.01f64..1000.0) {
        let n = 32;
        let t = Transform::new(&bank(BankKind::BasisOb1, n)).unwrap();
        let base = random_image(n, seed);
        let x = ImageGrid::from_fn(n, n, |r, c| scale * base.at(r, c) - scale / 2.0);
        let p = t.analyze(&x, levels).unwrap();
        prop_assert!(rel_error(&x, &t.synthesize(&p).unwrap()) <= 1e-10);
        prop_assert!((p.energy() - x.energy()).abs() <= 1e-10 * x.energy());
    }
}
