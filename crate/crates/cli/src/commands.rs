use std::fs;
use std::path::Path;

use compression_bench::{load_images, run_benchmark, to_csv, to_json, BenchConfig};
use filter_design::heatmap::{encode_gray_png, to_gray};
use filter_design::{
    bank_hash, build_bank, cutting_filters, load_bank, render_basis_functions, save_bank, shannon_filters,
    write_heatmaps, BankKind, CutTarget, FilterBankSpec, DEFAULT_BASIS_EPS, DEFAULT_CUT_EPS, DEFAULT_FRAME_EPS,
};
use partition::geometry::{total_length, Segment};
use partition::{classify_boundaries, regular_triples, svg::classification_svg, FrequencyPartition};
use pr_verify::{check_bank, Verdict};
use serde::Serialize;
use transform_engine::{load_pyramid, save_pyramid, CutPlan, ImageGrid, Transform};

use crate::config::*;
use crate::error::{CliError, CliResult};

/// Bank parameters after defaults are applied; echoed with every result.
#[derive(Debug, Serialize)]
struct ResolvedBank {
    source: String,
    family: String,
    p: u32,
    kind: String,
    eps: f64,
    p_smooth: u32,
    grid_n: usize,
    hash: String,
}

fn echo(value: &impl Serialize) {
    println!("config: {}", serde_json::to_string(value).expect("config serializes"));
}

fn default_kind(family: &str) -> &'static str {
    match family {
        "frame" => "frame",
        "dyadic" => "shannon",
        _ => "basis-ob1",
    }
}

fn default_eps(kind: BankKind) -> f64 {
    match kind {
        BankKind::Shannon => 0.0,
        BankKind::BasisOb1 | BankKind::BasisOb2 => DEFAULT_BASIS_EPS,
        BankKind::Frame => DEFAULT_FRAME_EPS,
        BankKind::Cut2Band => DEFAULT_CUT_EPS,
    }
}

fn cut_target(s: &str) -> CliResult<CutTarget> {
    match s {
        "basis" => Ok(CutTarget::Basis),
        "frame" => Ok(CutTarget::Frame),
        _ => Err(CliError::Usage(format!("--cut-target must be basis or frame, got `{s}`"))),
    }
}

fn hex_partition(family: &str, p: u32) -> CliResult<FrequencyPartition> {
    Ok(match family {
        "hex" => partition::build_hexagonal(p)?,
        "frame" => partition::build_hexagonal_frame()?,
        "dyadic" => partition::build_dyadic(p)?,
        _ => return Err(CliError::Usage(format!("--family must be hex, frame or dyadic, got `{family}`"))),
    })
}

/// Load or construct the bank; `image_n` is the grid used when `--grid-n` is absent.
fn resolve_bank(a: &BankArgs, image_n: Option<usize>) -> CliResult<(FilterBankSpec, ResolvedBank)> {
    if let Some(path) = &a.filters {
        let fb = load_bank(path)?;
        let r = ResolvedBank {
            source: path.display().to_string(),
            family: format!("{:?}", fb.family),
            p: a.p,
            kind: fb.kind.name().into(),
            eps: fb.epsilon,
            p_smooth: fb.p_smooth,
            grid_n: fb.grid_n,
            hash: format!("{:016x}", bank_hash(&fb)),
        };
        return Ok((fb, r));
    }
    let n = a.grid_n.or(image_n).unwrap_or(DEFAULT_GRID_N);
    let kind = BankKind::parse(a.kind.as_deref().unwrap_or(default_kind(&a.family)))?;
    let eps = a.eps.unwrap_or(default_eps(kind));
    let fb = match (a.family.as_str(), kind) {
        ("hex", BankKind::Cut2Band) => {
            cutting_filters(cut_target(&a.cut_target)?, a.cut_stage, a.cut_band, eps, n)?
        }
        ("hex", _) if a.p == 2 => build_bank(kind, eps, a.p_smooth, n)?,
        ("hex" | "dyadic", BankKind::Shannon) => shannon_filters(&hex_partition(&a.family, a.p)?, n)?,
        ("hex", _) => {
            return Err(CliError::Usage(format!("smooth banks are built for p = 2 only; use --kind shannon for p = {}", a.p)))
        }
        ("frame", BankKind::Frame) => build_bank(kind, eps, a.p_smooth, n)?,
        ("frame" | "dyadic", _) => {
            return Err(CliError::Usage(format!("--family {} does not support --kind {}", a.family, kind.name())))
        }
        _ => return Err(CliError::Usage(format!("--family must be hex, frame or dyadic, got `{}`", a.family))),
    };
    let r = ResolvedBank {
        source: "built".into(),
        family: a.family.clone(),
        p: a.p,
        kind: kind.name().into(),
        eps,
        p_smooth: a.p_smooth,
        grid_n: n,
        hash: format!("{:016x}", bank_hash(&fb)),
    };
    Ok((fb, r))
}

fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn build_filters(a: &BuildArgs) -> CliResult<()> {
    let (fb, resolved) = resolve_bank(&a.bank, None)?;
    echo(&resolved);
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    save_bank(&fb, &a.out)?;
    let dir = match &a.heatmap_dir {
        Some(d) => d.clone(),
        None => a.out.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    fs::create_dir_all(if dir.as_os_str().is_empty() { Path::new(".") } else { &dir })?;
    let stem = a.out.file_stem().and_then(|s| s.to_str()).unwrap_or("filters");
    let maps = write_heatmaps(&fb, &dir, stem, a.heatmap_size)?;
    println!("wrote {} ({} bands, critical ratio {}/{})", a.out.display(), fb.len(), fb.critical_ratio().0, fb.critical_ratio().1);
    for m in &maps {
        println!("wrote {}", m.display());
    }
    Ok(())
}

pub fn check_pr(a: &CheckArgs) -> CliResult<()> {
    let (fb, resolved) = resolve_bank(&a.bank, None)?;
    echo(&resolved);
    let rep = check_bank(&fb)?;
    println!("{rep}");
    if let Some(path) = &a.json {
        write_file(path, rep.to_json())?;
    }
    let worst = rep.max_residual();
    match a.tolerance {
        Some(tol) if worst > tol => Err(CliError::Verification(format!("max residual {worst:.3e} exceeds tolerance {tol:.3e}"))),
        Some(_) => Ok(()),
        None if rep.verdict == Verdict::Fail => Err(CliError::Verification(format!("max residual {worst:.3e}"))),
        None => {
            if rep.verdict == Verdict::Warn {
                eprintln!("warning: max residual {worst:.3e} is above the pass threshold");
            }
            Ok(())
        }
    }
}

pub fn transform(a: &TransformArgs) -> CliResult<()> {
    if a.cut_stages > 2 {
        return Err(CliError::Usage(format!("--cut-stages must be 0, 1 or 2, got {}", a.cut_stages)));
    }
    let x = ImageGrid::load(&a.input)?;
    let (fb, resolved) = resolve_bank(&a.bank, Some(x.rows))?;
    echo(&serde_json::json!({
        "bank": resolved,
        "levels": a.levels,
        "cut_stages": a.cut_stages,
        "cut_eps": a.cut_eps,
    }));
    let t = Transform::new(&fb)?;
    let mut p = t.analyze(&x, a.levels)?;
    for stage in 1..=a.cut_stages {
        // every band of the finest level, then every child
        for band in 1..=6 * (1 << (stage - 1)) {
            let plan = CutPlan::new(&p, 1, stage, band, a.cut_eps)?;
            p.cut(&plan)?;
        }
    }
    save_pyramid(&p, &a.output)?;
    let y = t.synthesize(&p)?;
    let rel = x.distance(&y) / x.energy().sqrt().max(f64::MIN_POSITIVE);
    println!("wrote {} ({} bands, {} coefficients)", a.output.display(), p.bands.len() + 1, p.coefficient_count());
    println!("round-trip relative error: {rel:.3e}");
    Ok(())
}

pub fn itransform(a: &ITransformArgs) -> CliResult<()> {
    let bank = a.filters.as_ref().map(load_bank).transpose()?;
    let p = load_pyramid(&a.input, bank.as_ref())?;
    echo(&serde_json::json!({
        "input": a.input,
        "n": p.n,
        "levels": p.levels,
        "kind": p.bank.kind.name(),
        "cuts": p.cuts.len(),
    }));
    let y = Transform::new(&p.bank)?.synthesize(&p)?;
    y.save(&a.output)?;
    println!("wrote {}", a.output.display());
    if let Some(r) = &a.reference {
        let x = ImageGrid::load(r)?;
        if (x.rows, x.cols) != (y.rows, y.cols) {
            return Err(CliError::Usage(format!(
                "reference is {}×{}, reconstruction is {}×{}",
                x.rows, x.cols, y.rows, y.cols
            )));
        }
        let rel = x.distance(&y) / x.energy().sqrt().max(f64::MIN_POSITIVE);
        println!("relative error: {rel:.3e}");
    }
    Ok(())
}

pub fn compress(a: &CompressArgs) -> CliResult<()> {
    let mut cfg = match &a.config {
        Some(path) => BenchConfig::from_file(path)?,
        None => BenchConfig::default(),
    };
    if let Some(r) = a.ratio {
        cfg.ratio = r;
    }
    if let Some(m) = &a.methods {
        cfg.methods = m.clone();
    }
    if let Some(l) = a.levels {
        cfg.levels = l;
    }
    if a.taps.is_some() {
        cfg.taps = a.taps.clone();
    }
    if a.out_dir.is_some() {
        cfg.out_dir = a.out_dir.clone();
    }
    cfg.validate()?;
    let line = format!("config: {}", serde_json::to_string(&cfg).expect("config serializes"));
    // keep stdout pure CSV when no file is given
    if a.csv.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    let images = load_images(&a.images)?;
    let results = run_benchmark(&images, &cfg)?;
    let csv = to_csv(&results, a.timing)?;
    match &a.csv {
        Some(path) => {
            write_file(path, &csv)?;
            println!("wrote {} ({} rows)", path.display(), results.len());
        }
        None => print!("{csv}"),
    }
    if let Some(path) = &a.json {
        write_file(path, to_json(&results))?;
    }
    Ok(())
}

/// Segments grouped by the line they lie on.
fn line_groups(segs: &[Segment]) -> usize {
    let mut reps: Vec<Segment> = Vec::new();
    for s in segs {
        if !reps.iter().any(|r| r.on_line(&s.a) && r.on_line(&s.b)) {
            reps.push(*s);
        }
    }
    reps.len()
}

pub fn classify(a: &ClassifyArgs) -> CliResult<()> {
    echo(a);
    let part = hex_partition(&a.family, a.p)?;
    let bc = classify_boundaries(&part, a.tol)?;
    let to_real = |x: &partition::Point| part.to_real(x);
    for rb in &bc.regions {
        let total = total_length(&rb.boundary, &to_real);
        let sing = total_length(&rb.singular, &to_real);
        let reg = total_length(&rb.regular, &to_real) + 0.0;
        println!(
            "A{}: boundary {total:.6}, singular {sing:.6} in {} edge groups, regular {reg:.6}{}",
            rb.index,
            line_groups(&rb.singular),
            if reg <= a.tol * total.max(1.0) { " (fully singular)" } else { "" }
        );
    }
    let triples = regular_triples(&bc);
    println!("regular triples: {}", triples.len());
    for (k1, k2, g) in &triples {
        println!("  ({k1}, {k2}, ±γ) with γ = ({}, {})", g[0], g[1]);
    }
    write_file(&a.out, classification_svg(&part, &bc, a.size))?;
    println!("wrote {}", a.out.display());
    Ok(())
}

fn write_panel(path: &Path, size: usize, pixels: &[u8]) -> CliResult<()> {
    write_file(path, encode_gray_png(size as u32, size as u32, pixels)?)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn spatial_gray(f: &[f64]) -> Vec<u8> {
    let m = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    to_gray(f, -m, m)
}

fn spectrum_gray(f: &[num_complex::Complex64]) -> Vec<u8> {
    let mags: Vec<f64> = f.iter().map(|z| z.norm()).collect();
    let m = mags.iter().cloned().fold(0.0, f64::max);
    to_gray(&mags, 0.0, m)
}

pub fn render(a: &RenderArgs) -> CliResult<()> {
    let (fb, resolved) = resolve_bank(&a.bank, None)?;
    echo(&serde_json::json!({ "bank": resolved, "levels": a.levels, "size": a.size }));
    let r = render_basis_functions(&fb, a.levels, a.size)?;
    fs::create_dir_all(&a.out_dir)?;
    write_panel(&a.out_dir.join("phi.png"), r.size, &spatial_gray(&r.phi))?;
    write_panel(&a.out_dir.join("phi_hat.png"), r.size, &spectrum_gray(&r.phi_hat))?;
    for (k, (psi, psi_hat)) in r.psi.iter().zip(&r.psi_hat).enumerate() {
        write_panel(&a.out_dir.join(format!("psi{}.png", k + 1)), r.size, &spatial_gray(psi))?;
        write_panel(&a.out_dir.join(format!("psi{}_hat.png", k + 1)), r.size, &spectrum_gray(psi_hat))?;
    }
    Ok(())
}
