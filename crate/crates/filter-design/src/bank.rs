//! Sampled transfer functions and filter banks.

use lattice_core::{hnf, IMat2};
use num_complex::Complex64;
use partition::{build_dyadic, build_hexagonal, build_hexagonal_frame, Family, FrequencyPartition};
use serde::{Deserialize, Serialize};

use crate::error::{FilterError, FilterResult};
use crate::grid::{self, Phase};

/// How a bank was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BankKind {
    Shannon,
    BasisOb1,
    BasisOb2,
    Frame,
    #[serde(rename = "cut-2band")]
    Cut2Band,
}

impl BankKind {
    pub fn name(self) -> &'static str {
        match self {
            BankKind::Shannon => "shannon",
            BankKind::BasisOb1 => "basis-ob1",
            BankKind::BasisOb2 => "basis-ob2",
            BankKind::Frame => "frame",
            BankKind::Cut2Band => "cut-2band",
        }
    }

    pub fn parse(s: &str) -> FilterResult<Self> {
        Ok(match s {
            "shannon" => BankKind::Shannon,
            "basis-ob1" => BankKind::BasisOb1,
            "basis-ob2" => BankKind::BasisOb2,
            "frame" => BankKind::Frame,
            "cut-2band" => BankKind::Cut2Band,
            _ => return Err(FilterError::ValueError(format!("unknown bank kind `{s}`"))),
        })
    }
}

/// One normalized transfer function `m_k(ξ) = ℳ_k(ξ)·e^{i⟨ξ, η_k⟩}` sampled on the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferGrid {
    pub band: usize,
    /// Subsampling lattice `Γ_k` in coordinates of `Λ` (columns).
    pub lattice: IMat2,
    /// `η_k ∈ Λ` in coordinates of `Λ`.
    pub eta: [i64; 2],
    /// `ℳ_k` at every grid point, index `v·n + u`.
    pub modulus: Vec<f64>,
}

/// A filter bank acting on signals over the lattice `parent` (coordinates of `Λ`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterBankSpec {
    pub kind: BankKind,
    pub family: Family,
    pub grid_n: usize,
    pub epsilon: f64,
    pub p_smooth: u32,
    pub parent: IMat2,
    pub filters: Vec<TransferGrid>,
}

pub const IDENTITY: IMat2 = [[1, 0], [0, 1]];

impl FilterBankSpec {
    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    /// `|P/Γ_k|` for the parent lattice `P`.
    pub fn index(&self, k: usize) -> i64 {
        (hnf::det(&self.filters[k].lattice) / hnf::det(&self.parent)).abs()
    }

    /// `Σ_k 1/|P/Γ_k|` as a reduced fraction `(num, den)`.
    pub fn critical_ratio(&self) -> (i64, i64) {
        let (mut num, mut den) = (0i64, 1i64);
        for k in 0..self.len() {
            let d = self.index(k);
            num = num * d + den;
            den *= d;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        (num, den)
    }

    /// Rebuild the frequency partition this bank was designed on.
    pub fn partition(&self) -> FilterResult<FrequencyPartition> {
        Ok(match self.family {
            Family::Hexagonal(p) => build_hexagonal(p)?,
            Family::HexagonalFrame => build_hexagonal_frame()?,
            Family::Dyadic(p) => build_dyadic(p)?,
        })
    }

    /// Normalized `m_k` at `(u, v)/n`.
    pub fn normalized(&self, k: usize, u: i64, v: i64, phase: &Phase) -> Complex64 {
        let f = &self.filters[k];
        f.modulus[grid::index(u, v, self.grid_n)] * phase.at(u, v, f.eta)
    }

    /// `M_k = √|P/Γ_k|·m_k` at `(u, v)/n`.
    pub fn transfer(&self, k: usize, u: i64, v: i64, phase: &Phase) -> Complex64 {
        (self.index(k) as f64).sqrt() * self.normalized(k, u, v, phase)
    }

    /// All bands' unnormalized transfer functions on the grid.
    pub fn transfer_grids(&self) -> Vec<Vec<Complex64>> {
        let n = self.grid_n;
        let phase = Phase::new(n);
        (0..self.len())
            .map(|k| {
                (0..n * n)
                    .map(|i| self.transfer(k, (i % n) as i64, (i / n) as i64, &phase))
                    .collect()
            })
            .collect()
    }

    /// `max |Σ_k ℳ_k² − 1|` over the grid.
    pub fn identity_residual(&self) -> f64 {
        let n2 = self.grid_n * self.grid_n;
        (0..n2)
            .map(|i| (self.filters.iter().map(|f| f.modulus[i] * f.modulus[i]).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Structural checks: grid sizes, modulus range, sublattices inside the parent.
    pub fn validate(&self) -> FilterResult<()> {
        let n2 = self.grid_n * self.grid_n;
        if self.grid_n == 0 {
            return Err(FilterError::InvalidBank("grid_n must be positive".into()));
        }
        for f in &self.filters {
            if f.modulus.len() != n2 {
                return Err(FilterError::InvalidBank(format!(
                    "band {} has {} samples, expected {n2}",
                    f.band,
                    f.modulus.len()
                )));
            }
            if let Some(x) = f.modulus.iter().find(|x| !(0.0..=1.0 + 1e-12).contains(*x)) {
                return Err(FilterError::InvalidBank(format!("band {} modulus {x} outside [0, 1]", f.band)));
            }
            if hnf::det(&f.lattice) == 0 {
                return Err(FilterError::InvalidBank(format!("band {} lattice is singular", f.band)));
            }
            for j in 0..2 {
                if !hnf::contains(&self.parent, [f.lattice[0][j], f.lattice[1][j]]) {
                    return Err(FilterError::InvalidBank(format!(
                        "band {} lattice is not inside the parent lattice",
                        f.band
                    )));
                }
            }
            if !hnf::contains(&self.parent, f.eta) {
                return Err(FilterError::InvalidBank(format!("band {} η is not in the parent lattice", f.band)));
            }
        }
        Ok(())
    }

    /// `max_k max_ξ |ℳ_k(−ξ) − ℳ_k(ξ)|`.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.grid_n;
        let mut worst: f64 = 0.0;
        for f in &self.filters {
            for i in 0..n * n {
                let (u, v) = ((i % n) as i64, (i / n) as i64);
                worst = worst.max((f.modulus[i] - f.modulus[grid::index(-u, -v, n)]).abs());
            }
        }
        worst
    }

    /// Replace every pair `ξ, −ξ` where the bank is not origin-symmetric by
    /// the root-mean-square of the two values. Used for the few isolated points
    /// whose label orbit is its own mirror image; returns the number of pairs.
    pub fn symmetrize(&mut self) -> usize {
        let n = self.grid_n;
        let mut count = 0;
        for i in 0..n * n {
            let j = grid::index(-((i % n) as i64), -((i / n) as i64), n);
            if j <= i || self.filters.iter().all(|f| (f.modulus[i] - f.modulus[j]).abs() <= 1e-12) {
                continue;
            }
            count += 1;
            for f in &mut self.filters {
                let m = (0.5 * (f.modulus[i].powi(2) + f.modulus[j].powi(2))).sqrt();
                f.modulus[i] = m;
                f.modulus[j] = m;
            }
        }
        count
    }

    /// Measure of `{0 < ℳ_k < 1}` as a fraction of the grid.
    pub fn transition_fraction(&self, k: usize) -> f64 {
        let m = &self.filters[k].modulus;
        m.iter().filter(|&&x| x > 1e-12 && x < 1.0 - 1e-12).count() as f64 / m.len() as f64
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs().max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Modulus grid of `f` rotated by `π/3` (`out(ξ) = f(R_{−π/3}ξ)`).
pub fn rotate_grid(f: &[f64], n: usize, times: u32) -> Vec<f64> {
    let mut out = f.to_vec();
    for _ in 0..times % 6 {
        let src = out.clone();
        for (i, o) in out.iter_mut().enumerate() {
            let r = grid::rot_m60((i % n) as i64, (i / n) as i64);
            *o = src[grid::index(r[0], r[1], n)];
        }
    }
    out
}
