//! Perfect-reconstruction checks for sampled filter banks.
//!
//! All probes are grid points and every coset shift is an exact grid
//! translation, so residuals measure construction error only.

pub mod error;
pub mod lattices;

use std::fmt;

use filter_design::{grid, BankKind, FilterBankSpec};
use lattice_core::IMat2;
use num_complex::Complex64;
use partition::Family;
use serde::{Deserialize, Serialize};

pub use error::{PrError, PrResult};
use lattices::{common, dual_reps, in_dual, primal_reps, shift, Q};

/// Residual ≤ this passes.
pub const PASS_TOL: f64 = 1e-10;
/// Residual ≤ this (but above [`PASS_TOL`]) warns.
pub const WARN_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Warn,
    Fail,
}

impl Verdict {
    pub fn of(residual: f64) -> Self {
        if residual <= PASS_TOL {
            Verdict::Pass
        } else if residual <= WARN_TOL {
            Verdict::Warn
        } else {
            Verdict::Fail
        }
    }
}

/// Shift-cancellation residual for one coset `γ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftResidual {
    /// `γ` in dual coordinates of `Λ*`, as `"num/den"` strings.
    pub gamma: [String; 2],
    /// `γ/π` in real coordinates.
    pub gamma_over_pi: [f64; 2],
    /// Bands `k` with `γ ∈ Γ_k*`.
    pub bands: Vec<usize>,
    pub family: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyResidual {
    pub name: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PRReport {
    pub kind: String,
    pub grid_n: usize,
    pub max_identity_residual: f64,
    pub max_shift_residual: f64,
    pub shifts: Vec<ShiftResidual>,
    pub families: Vec<FamilyResidual>,
    pub max_matrix_residual: Option<f64>,
    /// `Σ_k 1/|P/Γ_k|` as `(numerator, denominator)`.
    pub critical_ratio: (i64, i64),
    pub probes: usize,
    pub verdict: Verdict,
}

impl PRReport {
    pub fn max_residual(&self) -> f64 {
        self.max_identity_residual.max(self.max_shift_residual).max(self.max_matrix_residual.unwrap_or(0.0))
    }

    fn finish(mut self) -> Self {
        self.verdict = Verdict::of(self.max_residual());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for PRReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bank: {} (grid {})", self.kind, self.grid_n)?;
        writeln!(f, "critical ratio: {}/{}", self.critical_ratio.0, self.critical_ratio.1)?;
        writeln!(f, "{:<34} {:>12}", "check", "residual")?;
        writeln!(f, "{:<34} {:>12.3e}", "identity summation", self.max_identity_residual)?;
        for fam in &self.families {
            writeln!(f, "{:<34} {:>12.3e}", format!("shift family {}", fam.name), fam.residual)?;
        }
        for s in &self.shifts {
            let name = format!("  γ/π = ({:.4}, {:.4})", s.gamma_over_pi[0], s.gamma_over_pi[1]);
            writeln!(f, "{:<34} {:>12.3e}", name, s.residual)?;
        }
        if let Some(m) = self.max_matrix_residual {
            writeln!(f, "{:<34} {:>12.3e}", format!("matrix ({} probes)", self.probes), m)?;
        }
        write!(f, "verdict: {:?}", self.verdict)
    }
}

/// Which grid frequencies to probe in the matrix check.
#[derive(Debug, Clone)]
pub enum Probes {
    /// One representative of every grid class modulo `Γ*` (covers the whole grid).
    All,
    /// Explicit grid points `(u, v)`.
    Points(Vec<[i64; 2]>),
}

fn real_over_pi(g: &[Q; 2]) -> [f64; 2] {
    let f = |q: Q| *q.numer() as f64 / *q.denom() as f64;
    let x = grid::hex_real(f(g[0]), f(g[1]), 1);
    [x[0] / std::f64::consts::PI, x[1] / std::f64::consts::PI]
}

fn lattices(fb: &FilterBankSpec) -> Vec<IMat2> {
    fb.filters.iter().map(|f| f.lattice).collect()
}

/// `max_ξ |Σ_k ℳ_k(ξ)² − 1|`.
pub fn identity_residual(fb: &FilterBankSpec) -> f64 {
    fb.identity_residual()
}

/// Residual of `Σ_{k∈I_γ} conj(m_k(ξ+γ))·m_k(ξ) = 0` for every `γ ∈ Γ*/P* \ {0}`.
pub fn shift_cancellation(fb: &FilterBankSpec) -> PrResult<Vec<ShiftResidual>> {
    let n = fb.grid_n;
    let lats = lattices(fb);
    let gamma = common(&lats)?;
    let reps = dual_reps(&gamma, &fb.parent);
    let tg = fb.transfer_grids();
    let norm: Vec<f64> = (0..fb.len()).map(|k| (fb.index(k) as f64).sqrt()).collect();
    let mut out = Vec::new();
    for g in reps.iter().skip(1) {
        let s = shift(g, n)?;
        let bands: Vec<usize> = (0..fb.len()).filter(|&k| in_dual(&lats[k], g)).collect();
        let mut worst: f64 = 0.0;
        for i in 0..n * n {
            let j = grid::shifted(i, s, n);
            let sum: Complex64 = bands.iter().map(|&k| (tg[k][j] / norm[k]).conj() * (tg[k][i] / norm[k])).sum();
            worst = worst.max(sum.norm());
        }
        out.push(ShiftResidual {
            gamma: [g[0].to_string(), g[1].to_string()],
            gamma_over_pi: real_over_pi(g),
            bands,
            family: String::new(),
            residual: worst,
        });
    }
    Ok(out)
}

/// Literal modulation-matrix check `M(ξ)*M(ξ) = |P/Γ|·Id`, with rows
/// `(k, η ∈ Γ_k/Γ)`, columns `γ ∈ Γ*/P*` and entries `e^{i⟨η, ξ+γ⟩}M_k(ξ+γ)`.
pub fn matrix_pr_residual(fb: &FilterBankSpec, probes: &Probes) -> PrResult<PRReport> {
    let n = fb.grid_n;
    let lats = lattices(fb);
    let gamma = common(&lats)?;
    let cols: Vec<[i64; 2]> = dual_reps(&gamma, &fb.parent).iter().map(|g| shift(g, n)).collect::<PrResult<_>>()?;
    let rows: Vec<(usize, [i64; 2])> = (0..fb.len())
        .flat_map(|k| primal_reps(&lats[k], &gamma).into_iter().map(move |e| (k, e)))
        .collect();
    let scale = cols.len() as f64;
    let tg = fb.transfer_grids();
    let phase = grid::Phase::new(n);

    let points: Vec<[i64; 2]> = match probes {
        Probes::Points(p) => p.clone(),
        Probes::All => {
            let mut seen = vec![false; n * n];
            let mut pts = Vec::new();
            for i in 0..n * n {
                if seen[i] {
                    continue;
                }
                pts.push([(i % n) as i64, (i / n) as i64]);
                for c in &cols {
                    seen[grid::shifted(i, *c, n)] = true;
                }
            }
            pts
        }
    };
    let (nr, nc) = (rows.len(), cols.len());
    let mut m = vec![Complex64::default(); nr * nc];
    let mut worst: f64 = 0.0;
    for p in &points {
        for (c, s) in cols.iter().enumerate() {
            let (u, v) = (p[0] + s[0], p[1] + s[1]);
            let i = grid::index(u, v, n);
            for (r, (k, eta)) in rows.iter().enumerate() {
                m[r * nc + c] = phase.at(u, v, *eta) * tg[*k][i];
            }
        }
        for a in 0..nc {
            for b in a..nc {
                let mut acc = Complex64::default();
                for r in 0..nr {
                    acc += m[r * nc + a].conj() * m[r * nc + b];
                }
                let target = if a == b { scale } else { 0.0 };
                worst = worst.max((acc - target).norm());
            }
        }
    }
    Ok(PRReport {
        kind: fb.kind.name().into(),
        grid_n: n,
        max_identity_residual: 0.0,
        max_shift_residual: 0.0,
        shifts: Vec::new(),
        families: Vec::new(),
        max_matrix_residual: Some(worst),
        critical_ratio: fb.critical_ratio(),
        probes: points.len(),
        verdict: Verdict::Pass,
    }
    .finish())
}

/// Per band, `max_ξ |Σ_{t∈Γ_k*/P*} |M_k(ξ+t)|² − |P/Γ_k||`; critically sampled banks only.
pub fn mirror_residual(fb: &FilterBankSpec) -> PrResult<Vec<f64>> {
    let (num, den) = fb.critical_ratio();
    if num != den {
        return Err(PrError::PreconditionError(format!("bank is not critically sampled (ratio {num}/{den})")));
    }
    let n = fb.grid_n;
    let tg = fb.transfer_grids();
    (0..fb.len())
        .map(|k| {
            let shifts: Vec<[i64; 2]> =
                dual_reps(&fb.filters[k].lattice, &fb.parent).iter().map(|g| shift(g, n)).collect::<PrResult<_>>()?;
            let target = fb.index(k) as f64;
            Ok((0..n * n)
                .map(|i| {
                    let s: f64 = shifts.iter().map(|&t| tg[k][grid::shifted(i, t, n)].norm_sqr()).sum();
                    (s - target).abs()
                })
                .fold(0.0, f64::max))
        })
        .collect()
}

fn base_report(fb: &FilterBankSpec, shifts: Vec<ShiftResidual>, families: Vec<FamilyResidual>) -> PRReport {
    PRReport {
        kind: fb.kind.name().into(),
        grid_n: fb.grid_n,
        max_identity_residual: identity_residual(fb),
        max_shift_residual: shifts.iter().map(|s| s.residual).fold(0.0, f64::max),
        shifts,
        families,
        max_matrix_residual: None,
        critical_ratio: fb.critical_ratio(),
        probes: 0,
        verdict: Verdict::Pass,
    }
}

/// Identity summation and the four shift-cancellation families of the
/// six-direction hexagonal basis, plus the full matrix check.
pub fn hex_pr_residual(fb: &FilterBankSpec) -> PrResult<PRReport> {
    if fb.family != Family::Hexagonal(2) || fb.kind == BankKind::Cut2Band || fb.len() != 7 {
        return Err(PrError::PreconditionError(format!(
            "expected a hexagonal p=2 basis bank, got {} over {:?}",
            fb.kind.name(),
            fb.family
        )));
    }
    let mut shifts = shift_cancellation(fb)?;
    let g0 = fb.filters[0].lattice;
    let names = ["Γ0*\\Λ*", "Γ12*\\Γ0*", "Γ34*\\Γ0*", "Γ56*\\Γ0*"];
    let mut fam = [0.0f64; 4];
    for s in &mut shifts {
        let g = [s.gamma[0].parse::<Q>().unwrap(), s.gamma[1].parse::<Q>().unwrap()];
        let idx = if in_dual(&g0, &g) {
            0
        } else if s.bands.contains(&1) {
            1
        } else if s.bands.contains(&3) {
            2
        } else if s.bands.contains(&5) {
            3
        } else {
            s.family = "empty".into();
            continue;
        };
        s.family = names[idx].into();
        fam[idx] = fam[idx].max(s.residual);
    }
    let families = names.iter().zip(fam).map(|(n, r)| FamilyResidual { name: (*n).into(), residual: r }).collect();
    let mut rep = base_report(fb, shifts, families);
    let m = matrix_pr_residual(fb, &Probes::All)?;
    rep.max_matrix_residual = m.max_matrix_residual;
    rep.probes = m.probes;
    Ok(rep.finish())
}

/// Identity summation and shift cancellation over the three nonzero cosets
/// of `Γ^fr*/Λ*`, plus the matrix check.
pub fn frame_pr_residual(fb: &FilterBankSpec) -> PrResult<PRReport> {
    if fb.kind != BankKind::Frame {
        return Err(PrError::PreconditionError(format!("expected a frame bank, got {}", fb.kind.name())));
    }
    let mut shifts = shift_cancellation(fb)?;
    shifts.iter_mut().for_each(|s| s.family = "Γfr*\\Λ*".into());
    let worst = shifts.iter().map(|s| s.residual).fold(0.0, f64::max);
    let mut rep = base_report(fb, shifts, vec![FamilyResidual { name: "Γfr*\\Λ*".into(), residual: worst }]);
    let m = matrix_pr_residual(fb, &Probes::All)?;
    rep.max_matrix_residual = m.max_matrix_residual;
    rep.probes = m.probes;
    Ok(rep.finish())
}

/// Check any bank with the most specific applicable test.
pub fn check_bank(fb: &FilterBankSpec) -> PrResult<PRReport> {
    fb.validate()?;
    match fb.kind {
        BankKind::Frame => frame_pr_residual(fb),
        _ if fb.family == Family::Hexagonal(2) && fb.len() == 7 => hex_pr_residual(fb),
        _ => {
            let mut shifts = shift_cancellation(fb)?;
            shifts.iter_mut().for_each(|s| s.family = "Γ*\\P*".into());
            let mut rep = base_report(fb, shifts, Vec::new());
            let m = matrix_pr_residual(fb, &Probes::All)?;
            rep.max_matrix_residual = m.max_matrix_residual;
            rep.probes = m.probes;
            Ok(rep.finish())
        }
    }
}
