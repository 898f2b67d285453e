//! Filter banks on the hexagonal lattice, sampled on a uniform grid over one
//! period of `Λ*`: Shannon indicators, the smoothed orthonormal basis (regular
//! boundaries, then the low-pass boundary), the six-direction Parseval frame,
//! and two-band cutting filters.
//!
//! Filters are stored normalized, `m_k = M_k/√|P/Γ_k|`, as a nonnegative
//! modulus grid plus a phase vector `η_k ∈ Λ` with `m_k(ξ) = ℳ_k(ξ)e^{i⟨ξ,η_k⟩}`.

pub mod bank;
pub mod container;
pub mod cut;
pub mod error;
pub mod fft;
pub mod frame;
pub mod grid;
pub mod heatmap;
pub mod ramp;
pub mod render;
pub mod shannon;
pub mod smooth;

pub use bank::{rotate_grid, BankKind, FilterBankSpec, TransferGrid, IDENTITY};
pub use container::{bank_hash, load_bank, read_bank, save_bank, write_bank};
pub use cut::{congruent, cut_design, cutting_filters, eta_real, gamma_real, CutDesign, CutTarget, DEFAULT_CUT_EPS};
pub use error::{FilterError, FilterResult};
pub use heatmap::write_heatmaps;
pub use frame::{frame_filters, frame_filters_unchecked, max_frame_eps, DEFAULT_FRAME_EPS, FRAME_ETA};
pub use ramp::{profile, ramp};
pub use render::{render_basis_functions, BasisRender};
pub use shannon::shannon_filters;
pub use smooth::{max_basis_eps, smooth_refinement, smooth_regular_boundaries, BASIS_ETA, DEFAULT_BASIS_EPS};

/// Build a hexagonal `p = 2` bank of the given kind on the `n`-grid.
///
/// `eps` is the transition width (ignored for Shannon).
pub fn build_bank(kind: BankKind, eps: f64, p_smooth: u32, grid_n: usize) -> FilterResult<FilterBankSpec> {
    match kind {
        BankKind::Shannon => shannon_filters(&partition::build_hexagonal(2)?, grid_n),
        BankKind::BasisOb1 => {
            let sh = shannon_filters(&partition::build_hexagonal(2)?, grid_n)?;
            let mut fb = smooth_regular_boundaries(&sh, eps, p_smooth)?;
            fb.symmetrize();
            Ok(fb)
        }
        BankKind::BasisOb2 => {
            let sh = shannon_filters(&partition::build_hexagonal(2)?, grid_n)?;
            let mut fb = smooth_refinement(&smooth_regular_boundaries(&sh, eps, p_smooth)?, eps, p_smooth)?;
            fb.symmetrize();
            Ok(fb)
        }
        BankKind::Frame => frame_filters(eps, p_smooth, grid_n),
        BankKind::Cut2Band => Err(FilterError::ValueError("cut banks are built with cutting_filters".into())),
    }
}
