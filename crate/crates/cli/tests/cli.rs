use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hexwave(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexwave"))
        .args(args)
        .current_dir(dir)
        .env("HEXWAVE_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hexwave-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn barbara() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/barbara.png").display().to_string()
}

/// A binary PGM with a smooth pattern and an edge.
fn write_pgm(path: &Path, n: usize) {
    let mut bytes = format!("P5\n{n} {n}\n255\n").into_bytes();
    for r in 0..n {
        for c in 0..n {
            let v = 128.0 + 60.0 * ((r as f64) * 0.3).sin() * ((c as f64) * 0.17).cos() + if r + c > n { 40.0 } else { -40.0 };
            bytes.push(v.round().clamp(0.0, 255.0) as u8);
        }
    }
    std::fs::write(path, bytes).unwrap();
}

fn value_after(text: &str, key: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no `{key}` in {text}"));
    line[key.len()..].trim().parse().unwrap()
}

#[test]
fn help_lists_every_flag() {
    let dir = scratch("help");
    let top = stdout(&hexwave(&["--help"], &dir));
    for cmd in ["build-filters", "check-pr", "transform", "itransform", "compress", "classify", "render"] {
        assert!(top.contains(cmd), "{cmd}");
    }
    let build = stdout(&hexwave(&["build-filters", "--help"], &dir));
    for flag in ["--family", "--p", "--kind", "--eps", "--p-smooth", "--grid-n", "--filters", "--out", "--heatmap-size"] {
        assert!(build.contains(flag), "{flag}");
    }
    let t = stdout(&hexwave(&["transform", "--help"], &dir));
    for flag in ["--input", "--output", "--levels", "--cut-stages", "--cut-eps"] {
        assert!(t.contains(flag), "{flag}");
    }
    let c = stdout(&hexwave(&["compress", "--help"], &dir));
    for flag in ["--images", "--ratio", "--methods", "--config", "--csv", "--timing", "--taps"] {
        assert!(c.contains(flag), "{flag}");
    }
    let o = hexwave(&["build-filters", "--bogus"], &dir);
    assert_eq!(o.status.code(), Some(2));
    let o = hexwave(&["frobnicate"], &dir);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn build_filters_writes_container_and_heatmaps() {
    let dir = scratch("build");
    let o = hexwave(&["build-filters", "--family", "hex", "--p", "2", "--kind", "basis-ob1", "--eps", "0.196", "--grid-n", "96", "--out", "ob1.hxfb"], &dir);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("config: {"));
    assert!(dir.join("ob1.hxfb").is_file());
    for k in 0..7 {
        assert!(dir.join(format!("ob1_m{k}.png")).is_file(), "heatmap {k}");
    }
    let o = hexwave(&["build-filters", "--kind", "basis-ob1", "--eps", "0.9", "--grid-n", "96"], &dir);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("valid range"), "{}", stderr(&o));
    let o = hexwave(&["build-filters", "--kind", "frame", "--eps", "0.4", "--grid-n", "96"], &dir);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("valid range"));
    let o = hexwave(&["build-filters", "--family", "dyadic", "--p", "1", "--grid-n", "64", "--out", "dy.hxfb"], &dir);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn check_pr_exit_codes() {
    let dir = scratch("check");
    let o = hexwave(&["check-pr", "--kind", "shannon", "--grid-n", "96", "--json", "rep.json"], &dir);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict: Pass"));
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("rep.json")).unwrap()).unwrap();
    assert_eq!(rep["verdict"], "pass");

    assert!(hexwave(&["build-filters", "--family", "frame", "--grid-n", "96", "--out", "fr.hxfb"], &dir).status.success());
    let o = hexwave(&["check-pr", "--filters", "fr.hxfb"], &dir);
    assert!(o.status.success(), "{}", stderr(&o));

    // scale one band of a stored bank
    assert!(hexwave(&["build-filters", "--grid-n", "96", "--out", "ob1.hxfb"], &dir).status.success());
    let mut fb = filter_design::load_bank(dir.join("ob1.hxfb")).unwrap();
    fb.filters[2].modulus.iter_mut().for_each(|m| *m *= 0.9);
    filter_design::save_bank(&fb, dir.join("bad.hxfb")).unwrap();
    let o = hexwave(&["check-pr", "--filters", "bad.hxfb"], &dir);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));

    let o = hexwave(&["check-pr", "--filters", "missing.hxfb"], &dir);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn transform_round_trip_through_files() {
    let dir = scratch("transform");
    write_pgm(&dir.join("in.pgm"), 64);
    for (kind, cuts) in [("basis-ob1", "1"), ("frame", "2"), ("shannon", "0")] {
        let o = hexwave(&["transform", "-i", "in.pgm", "-o", "p.hxpy", "--kind", kind, "--levels", "2", "--cut-stages", cuts], &dir);
        assert!(o.status.success(), "{kind}: {}", stderr(&o));
        assert!(value_after(&stdout(&o), "round-trip relative error:") <= 1e-10);
        let o = hexwave(&["itransform", "-i", "p.hxpy", "-o", "out.pgm", "--reference", "in.pgm"], &dir);
        assert!(o.status.success(), "{kind}: {}", stderr(&o));
        assert!(value_after(&stdout(&o), "relative error:") <= 1e-10, "{}", stdout(&o));
        let (a, b) = (std::fs::read(dir.join("out.pgm")).unwrap(), std::fs::read(dir.join("in.pgm")).unwrap());
        assert!(a.starts_with(b"P5"));
        assert_eq!(a[a.len() - 64 * 64..], b[b.len() - 64 * 64..]);
    }
    // explicit bank file
    assert!(hexwave(&["build-filters", "--grid-n", "64", "--out", "b.hxfb"], &dir).status.success());
    assert!(hexwave(&["transform", "-i", "in.pgm", "-o", "q.hxpy", "--filters", "b.hxfb", "--levels", "1"], &dir).status.success());
    assert!(hexwave(&["itransform", "-i", "q.hxpy", "--filters", "b.hxfb", "-o", "q.png"], &dir).status.success());

    let o = hexwave(&["transform", "-i", "in.pgm", "--cut-stages", "3"], &dir);
    assert_eq!(o.status.code(), Some(2));
    let o = hexwave(&["transform", "-i", "in.pgm", "--levels", "6"], &dir);
    assert_eq!(o.status.code(), Some(2));
    let o = hexwave(&["transform", "-i", "nope.pgm"], &dir);
    assert_eq!(o.status.code(), Some(3));
    std::fs::write(dir.join("junk.hxpy"), b"HXPY garbage").unwrap();
    let o = hexwave(&["itransform", "-i", "junk.hxpy"], &dir);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn compress_writes_one_row_per_method() {
    let dir = scratch("compress");
    let o = hexwave(
        &["compress", "--images", &barbara(), "--ratio", "20", "--methods", "tensor,hex-basis-ob1,hex-frame", "--csv", "a.csv", "--json", "a.json"],
        &dir,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.join("a.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 4, "{csv}");
    assert_eq!(rows[0], "image,method,ratio,kept,psnr_db,runtime_ms");
    assert!(rows[1].starts_with("barbara,tensor,20,13107,"));
    assert!(rows[2].starts_with("barbara,hex-basis-ob1,"));
    assert!(rows[3].starts_with("barbara,hex-frame,"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("a.json")).unwrap()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 3);

    let o = hexwave(&["compress", "--images", &barbara(), "--methods", "wavelet"], &dir);
    assert_eq!(o.status.code(), Some(2));
    let o = hexwave(&["compress", "--images", "missing.png", "--methods", "tensor"], &dir);
    assert_eq!(o.status.code(), Some(3));
    std::fs::write(dir.join("bad.toml"), "ratoi = 3\n").unwrap();
    let o = hexwave(&["compress", "--config", "bad.toml"], &dir);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_marks_the_lowpass_boundary_singular() {
    let dir = scratch("classify");
    let o = hexwave(&["classify", "--family", "hex", "--p", "2", "--out", "c.svg"], &dir);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let a0 = out.lines().find(|l| l.starts_with("A0:")).unwrap();
    assert!(a0.contains("in 6 edge groups") && a0.contains("fully singular"), "{a0}");
    assert!(out.contains("regular triples: 6"));
    let svg = std::fs::read_to_string(dir.join("c.svg")).unwrap();
    assert!(svg.contains(r#"class="singular""#) && svg.contains(r#"class="regular""#));
    assert!(svg.matches(r#"stroke="red""#).count() >= 6);
    let o = hexwave(&["classify", "--family", "square"], &dir);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_writes_panels() {
    let dir = scratch("render");
    let o = hexwave(&["render", "--grid-n", "64", "--levels", "2", "--size", "64", "-o", "panels"], &dir);
    assert!(o.status.success(), "{}", stderr(&o));
    for name in ["phi.png", "phi_hat.png", "psi1.png", "psi6_hat.png"] {
        let bytes = std::fs::read(dir.join("panels").join(name)).unwrap();
        assert_eq!(&bytes[1..4], b"PNG", "{name}");
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = scratch("idempotent");
    write_pgm(&dir.join("in.pgm"), 64);
    let runs: [&[&str]; 4] = [
        &["build-filters", "--grid-n", "64", "--out", "f.hxfb"],
        &["transform", "-i", "in.pgm", "-o", "p.hxpy", "--levels", "2", "--cut-stages", "1"],
        &["classify", "--out", "c.svg"],
        &["compress", "--images", "in.pgm", "--methods", "tensor,hex-basis-ob2", "--levels", "2", "--csv", "r.csv"],
    ];
    let files = ["f.hxfb", "f_m3.png", "p.hxpy", "c.svg", "r.csv"];
    let snapshot = || -> Vec<(Vec<u8>, String)> {
        let outs: Vec<String> = runs.iter().map(|a| stdout(&hexwave(a, &dir))).collect();
        files.iter().map(|f| std::fs::read(dir.join(f)).unwrap()).zip(outs.into_iter().chain(std::iter::repeat(String::new()))).collect()
    };
    assert_eq!(snapshot(), snapshot());
}

#[test]
fn thread_variable_is_validated() {
    let dir = scratch("threads");
    let o = Command::new(env!("CARGO_BIN_EXE_hexwave"))
        .args(["classify", "--out", "c.svg"])
        .current_dir(&dir)
        .env("HEXWAVE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
