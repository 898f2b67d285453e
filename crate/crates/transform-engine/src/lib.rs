//! Forward and inverse multi-level transforms of images on the hexagonal
//! lattice under a verified filter bank, with dilation `D = 2·Id`.
//!
//! Filtering happens in the DFT domain; subsampling on each band lattice is
//! frequency folding and upsampling is periodization, so every step is exact
//! up to floating-point rounding. Images are one period of a periodic signal.

pub mod container;
pub mod engine;
pub mod error;
pub mod image;
pub mod pyramid;
pub mod window;

pub use container::{load_pyramid, read_pyramid, save_pyramid, write_pyramid};
pub use engine::{fit_bank, subsample_bank, Stage, Transform, PR_TOLERANCE};
pub use error::{TransformError, TransformResult};
pub use image::ImageGrid;
pub use pyramid::{analyze, apply_cut, synthesize, Band, BandId, CutPlan, CutRecord, SubbandPyramid};
pub use window::Window;
