//! Nonlinear-approximation benchmark: keep the largest coefficients of a
//! transform, reconstruct, and measure PSNR, for the hexagonal bases and
//! frames and an orthogonal separable baseline.

pub mod bench;
pub mod error;
pub mod psnr;
pub mod separable;
pub mod threshold;

pub use bench::{compress, kept_count, load_images, run_benchmark, to_csv, to_json, BenchConfig, CompressionResult, Method};
pub use error::{BenchError, BenchResult};
pub use psnr::{psnr, PSNR_CAP};
pub use separable::{separable_analyze, separable_synthesize, SeparableBand, SeparableFilterPair, SeparablePyramid};
pub use threshold::{pyramid_keys, select_top, topn_threshold, Key, Thresholded};
