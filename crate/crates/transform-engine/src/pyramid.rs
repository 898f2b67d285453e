//! Multi-level pyramids, their inverse, and subband cutting.

use filter_design::{bank_hash, cutting_filters, BankKind, CutTarget, FilterBankSpec};
use lattice_core::{hnf, IMat2};
use num_complex::Complex64;
use pr_verify::check_bank;
use serde::{Deserialize, Serialize};

use crate::engine::{fit_bank, square_size, to_complex, Stage, Transform, PR_TOLERANCE};
use crate::error::{TransformError, TransformResult};
use crate::image::ImageGrid;
use crate::window::Window;

/// Level `j ≥ 1`, cut stage (0 for bands of the bank itself) and band number
/// within that stage (`1..`; the scaling band is band 0 at stage 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BandId {
    pub level: u32,
    pub stage: u32,
    pub band: usize,
}

impl BandId {
    pub fn new(level: u32, stage: u32, band: usize) -> Self {
        Self { level, stage, band }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub id: BandId,
    /// Hermite form of the band lattice in coordinates of `Λ` (level scaling included).
    pub lattice: IMat2,
    pub rows: usize,
    pub cols: usize,
    /// Row-major over the band's window (see [`Window`]).
    pub coeffs: Vec<Complex64>,
}

impl Band {
    /// The lattice in coordinates of the level's own grid, `2^{1−j}·lattice`.
    pub fn local_lattice(&self) -> IMat2 {
        let s = 1i64 << (self.id.level - 1);
        self.lattice.map(|r| r.map(|x| x / s))
    }

    pub fn window(&self, level_n: usize) -> TransformResult<Window> {
        Window::new(&self.local_lattice(), level_n)
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// One applied cut, with the two-band bank on the level's grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CutRecord {
    pub level: u32,
    pub stage: u32,
    pub band: usize,
    pub target: CutTarget,
    pub epsilon: f64,
    pub bank: FilterBankSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubbandPyramid {
    pub n: usize,
    pub levels: u32,
    pub bank: FilterBankSpec,
    /// Wavelet bands, by level then band (cut children replace their parent in place).
    pub bands: Vec<Band>,
    pub scaling: Band,
    pub cuts: Vec<CutRecord>,
}

fn scaled(m: &IMat2, s: i64) -> IMat2 {
    m.map(|r| r.map(|x| x * s))
}

impl SubbandPyramid {
    pub fn level_size(&self, level: u32) -> usize {
        self.n >> (level - 1)
    }

    pub fn coefficient_count(&self) -> usize {
        self.bands.iter().map(|b| b.coeffs.len()).sum::<usize>() + self.scaling.coeffs.len()
    }

    /// `Σ |c|²` over every band.
    pub fn energy(&self) -> f64 {
        self.bands.iter().map(Band::energy).sum::<f64>() + self.scaling.energy()
    }

    pub fn band(&self, id: BandId) -> Option<&Band> {
        if id == self.scaling.id {
            return Some(&self.scaling);
        }
        self.bands.iter().find(|b| b.id == id)
    }

    pub fn band_mut(&mut self, id: BandId) -> Option<&mut Band> {
        if id == self.scaling.id {
            return Some(&mut self.scaling);
        }
        self.bands.iter_mut().find(|b| b.id == id)
    }

    /// All coefficients in storage order (bands, then the scaling band).
    pub fn coefficients(&self) -> impl Iterator<Item = &Complex64> {
        self.bands.iter().chain(std::iter::once(&self.scaling)).flat_map(|b| b.coeffs.iter())
    }

    pub fn coefficients_mut(&mut self) -> impl Iterator<Item = &mut Complex64> {
        self.bands.iter_mut().chain(std::iter::once(&mut self.scaling)).flat_map(|b| b.coeffs.iter_mut())
    }

    /// The same layout with every coefficient zero.
    pub fn zeroed(&self) -> Self {
        let mut p = self.clone();
        p.coefficients_mut().for_each(|z| *z = Complex64::default());
        p
    }

    /// Replace band `(level, stage − 1, band)` by its two children.
    pub fn cut(&mut self, plan: &CutPlan) -> TransformResult<()> {
        let parent_id = BandId::new(plan.level, plan.stage - 1, plan.band);
        let pos = match self.bands.iter().position(|b| b.id == parent_id) {
            Some(p) => p,
            None if self.cuts.iter().any(|c| (c.level, c.stage, c.band) == (plan.level, plan.stage, plan.band)) => {
                return Err(TransformError::CutError(format!("band {parent_id:?} is already cut")));
            }
            None => {
                return Err(TransformError::CutError(format!(
                    "no band {parent_id:?}: stage {} cuts need the stage-{} bands",
                    plan.stage,
                    plan.stage - 1
                )))
            }
        };
        let n = self.level_size(plan.level);
        let parent = &self.bands[pos];
        let local = parent.local_lattice();
        if hnf::hnf(&plan.bank.parent)? != local {
            return Err(TransformError::CutError(format!(
                "cut bank acts on {:?}, band {parent_id:?} lives on {local:?}",
                plan.bank.parent
            )));
        }
        let stage = Stage::new(&fit_bank(&plan.bank, n)?)?;
        let mut up = vec![Complex64::default(); n * n];
        for (i, p) in parent.window(n)?.positions().into_iter().enumerate() {
            up[p] = parent.coeffs[i];
        }
        let out = stage.analyze(&stage.spectrum(&up));
        let s = 1i64 << (plan.level - 1);
        let children: Vec<Band> = out
            .into_iter()
            .zip(&stage.windows)
            .enumerate()
            .map(|(c, (coeffs, w))| Band {
                id: BandId::new(plan.level, plan.stage, 2 * plan.band - 1 + c),
                lattice: scaled(&w.lattice, s),
                rows: w.rows,
                cols: w.cols,
                coeffs,
            })
            .collect();
        self.bands.splice(pos..=pos, children);
        self.cuts.push(CutRecord {
            level: plan.level,
            stage: plan.stage,
            band: plan.band,
            target: plan.target,
            epsilon: plan.bank.epsilon,
            bank: plan.bank.clone(),
        });
        Ok(())
    }

    /// Undo every cut, innermost first.
    fn uncut(&self) -> TransformResult<Vec<Band>> {
        let mut bands = self.bands.clone();
        for rec in self.cuts.iter().rev() {
            let n = self.level_size(rec.level);
            let ids = [2 * rec.band - 1, 2 * rec.band].map(|b| BandId::new(rec.level, rec.stage, b));
            let pos: Vec<usize> = ids
                .iter()
                .map(|id| {
                    bands.iter().position(|b| b.id == *id).ok_or_else(|| TransformError::Metadata(format!("cut child {id:?} is missing")))
                })
                .collect::<TransformResult<_>>()?;
            if pos[1] != pos[0] + 1 {
                return Err(TransformError::Metadata(format!("cut children {ids:?} are not adjacent")));
            }
            let stage = Stage::new(&fit_bank(&rec.bank, n)?)?;
            for (b, w) in pos.iter().map(|&p| &bands[p]).zip(&stage.windows) {
                if b.coeffs.len() != w.len() {
                    return Err(TransformError::Metadata(format!("band {:?} has {} coefficients, expected {}", b.id, b.coeffs.len(), w.len())));
                }
            }
            let refs: Vec<&[Complex64]> = pos.iter().map(|&p| bands[p].coeffs.as_slice()).collect();
            let sig = stage.synthesize(&refs)?;
            let pw = Window::new(&rec.bank.parent, n)?;
            let coeffs = pw.positions().into_iter().map(|p| sig[p]).collect();
            let parent = Band {
                id: BandId::new(rec.level, rec.stage - 1, rec.band),
                lattice: scaled(&pw.lattice, 1 << (rec.level - 1)),
                rows: pw.rows,
                cols: pw.cols,
                coeffs,
            };
            bands.splice(pos[0]..=pos[1], [parent]);
        }
        Ok(bands)
    }
}

/// A verified two-band cut of band `(level, stage − 1, band)`.
#[derive(Debug, Clone)]
pub struct CutPlan {
    level: u32,
    stage: u32,
    band: usize,
    target: CutTarget,
    bank: FilterBankSpec,
}

impl CutPlan {
    /// Design the cut for a pyramid built from `p`'s bank.
    pub fn new(p: &SubbandPyramid, level: u32, stage: u32, band: usize, eps: f64) -> TransformResult<Self> {
        if level == 0 || level > p.levels {
            return Err(TransformError::CutError(format!("level {level} outside 1..={}", p.levels)));
        }
        let target = if p.bank.kind == BankKind::Frame { CutTarget::Frame } else { CutTarget::Basis };
        let bank = cutting_filters(target, stage, band, eps, p.level_size(level))?;
        Self::from_bank(level, stage, band, target, bank)
    }

    /// Wrap an existing two-band bank after checking its reconstruction.
    pub fn from_bank(level: u32, stage: u32, band: usize, target: CutTarget, bank: FilterBankSpec) -> TransformResult<Self> {
        if level == 0 || stage == 0 || band == 0 {
            return Err(TransformError::CutError("level, stage and band are 1-based".into()));
        }
        if bank.kind != BankKind::Cut2Band || bank.len() != 2 {
            return Err(TransformError::CutError(format!("a cut needs a two-band bank, got {} with {} bands", bank.kind.name(), bank.len())));
        }
        let residual = check_bank(&bank).map_err(|e| TransformError::UnverifiedBank(e.to_string()))?.max_residual();
        if !(residual <= PR_TOLERANCE) {
            return Err(TransformError::UnverifiedBank(format!("cut bank PR residual {residual:.3e}")));
        }
        Ok(Self { level, stage, band, target, bank })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn bank(&self) -> &FilterBankSpec {
        &self.bank
    }

    /// Lattices of the two output bands (coordinates of the level's grid).
    pub fn output_lattices(&self) -> [IMat2; 2] {
        [self.bank.filters[0].lattice, self.bank.filters[1].lattice]
    }
}

pub fn apply_cut(p: &SubbandPyramid, plan: &CutPlan) -> TransformResult<SubbandPyramid> {
    let mut out = p.clone();
    out.cut(plan)?;
    Ok(out)
}

impl Transform {
    /// `levels`-level decomposition: the bank is re-applied to the scaling band.
    pub fn analyze(&self, x: &ImageGrid, levels: u32) -> TransformResult<SubbandPyramid> {
        if levels == 0 {
            return Err(TransformError::ValueError("at least one level is required".into()));
        }
        let n = square_size(x, levels)?;
        let mut s = to_complex(x);
        let mut bands = Vec::new();
        for j in 1..=levels {
            let st = self.stage(n >> (j - 1))?;
            let mut out = st.analyze(&st.spectrum(&s));
            let scale = 1i64 << (j - 1);
            for (k, coeffs) in out.iter_mut().enumerate().skip(1) {
                let w = &st.windows[k];
                bands.push(Band {
                    id: BandId::new(j, 0, k),
                    lattice: scaled(&w.lattice, scale),
                    rows: w.rows,
                    cols: w.cols,
                    coeffs: std::mem::take(coeffs),
                });
            }
            s = std::mem::take(&mut out[0]);
        }
        let m = n >> levels;
        let scaling = Band {
            id: BandId::new(levels, 0, 0),
            lattice: [[1 << levels, 0], [0, 1 << levels]],
            rows: m,
            cols: m,
            coeffs: s,
        };
        Ok(SubbandPyramid { n, levels, bank: self.bank().clone(), bands, scaling, cuts: Vec::new() })
    }

    /// Inverse cascade, complex valued.
    pub fn synthesize_complex(&self, p: &SubbandPyramid) -> TransformResult<Vec<Complex64>> {
        if bank_hash(&p.bank) != bank_hash(self.bank()) {
            return Err(TransformError::Metadata("pyramid was built with a different filter bank".into()));
        }
        if p.levels == 0 || p.n == 0 || p.n % (4usize << (p.levels - 1)) != 0 {
            return Err(TransformError::Metadata(format!("size {} and {} levels are inconsistent", p.n, p.levels)));
        }
        let m = p.n >> p.levels;
        if p.scaling.id != BandId::new(p.levels, 0, 0) || p.scaling.coeffs.len() != m * m {
            return Err(TransformError::Metadata(format!("scaling band {:?} does not hold {m}×{m} coefficients", p.scaling.id)));
        }
        let bands = p.uncut()?;
        let k = self.bank().len();
        if bands.len() != (k - 1) * p.levels as usize {
            return Err(TransformError::Metadata(format!("{} bands for {} levels of a {k}-band bank", bands.len(), p.levels)));
        }
        let mut s = p.scaling.coeffs.clone();
        for j in (1..=p.levels).rev() {
            let st = self.stage(p.level_size(j))?;
            let mut refs: Vec<&[Complex64]> = vec![&s];
            for band in 1..k {
                let id = BandId::new(j, 0, band);
                let b = bands.iter().find(|b| b.id == id).ok_or_else(|| TransformError::Metadata(format!("band {id:?} is missing")))?;
                let w = &st.windows[band];
                if b.coeffs.len() != w.len() || b.lattice != scaled(&w.lattice, 1 << (j - 1)) {
                    return Err(TransformError::Metadata(format!("band {id:?} does not match the bank's lattice window")));
                }
                refs.push(&b.coeffs);
            }
            s = st.synthesize(&refs)?;
        }
        Ok(s)
    }

    /// Inverse cascade; the real part of the result.
    pub fn synthesize(&self, p: &SubbandPyramid) -> TransformResult<ImageGrid> {
        let s = self.synthesize_complex(p)?;
        ImageGrid::new(p.n, p.n, s.iter().map(|z| z.re).collect())
    }
}

/// Verify `fb` and decompose `x` over `levels` levels.
pub fn analyze(x: &ImageGrid, fb: &FilterBankSpec, levels: u32) -> TransformResult<SubbandPyramid> {
    Transform::new(fb)?.analyze(x, levels)
}

/// Invert a pyramid with the bank it carries.
pub fn synthesize(p: &SubbandPyramid) -> TransformResult<ImageGrid> {
    Transform::trusted(&p.bank)?.synthesize(p)
}
