//! Command arguments. Every numeric default lives here and is echoed by the
//! commands as a `config:` line.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

pub const DEFAULT_GRID_N: usize = 192;
pub const DEFAULT_P: u32 = 2;
pub const DEFAULT_P_SMOOTH: u32 = 1;
pub const DEFAULT_LEVELS: u32 = 3;
pub const DEFAULT_HEATMAP_SIZE: usize = 256;
pub const DEFAULT_RENDER_SIZE: usize = 256;
pub const DEFAULT_SVG_SIZE: u32 = 512;
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// Which filter bank to use: a container file, or construction parameters.
#[derive(Args, Debug, Clone, Serialize)]
pub struct BankArgs {
    /// Load the bank from a container instead of building it
    #[arg(long)]
    pub filters: Option<PathBuf>,
    /// Partition family: hex, frame or dyadic
    #[arg(long, default_value = "hex")]
    pub family: String,
    /// Directions parameter of the partition (3p hexagonal, 2p dyadic)
    #[arg(long, default_value_t = DEFAULT_P)]
    pub p: u32,
    /// Bank kind: shannon, basis-ob1, basis-ob2, frame or cut-2band
    /// (default: basis-ob1 for hex, frame for frame, shannon for dyadic)
    #[arg(long)]
    pub kind: Option<String>,
    /// Transition width (default depends on the kind)
    #[arg(long)]
    pub eps: Option<f64>,
    /// Smoothness order of the transition profile
    #[arg(long, default_value_t = DEFAULT_P_SMOOTH)]
    pub p_smooth: u32,
    /// Frequency grid size per axis (default: the image side, else 192)
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Cut banks: refined bank, basis or frame
    #[arg(long, default_value = "basis")]
    pub cut_target: String,
    /// Cut banks: stage 1 or 2
    #[arg(long, default_value_t = 1)]
    pub cut_stage: u32,
    /// Cut banks: band being split
    #[arg(long, default_value_t = 1)]
    pub cut_band: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BuildArgs {
    #[command(flatten)]
    pub bank: BankArgs,
    /// Output container path
    #[arg(long, short, default_value = "filters.hxfb")]
    pub out: PathBuf,
    /// Directory for the per-band heatmaps (default: next to the container)
    #[arg(long)]
    pub heatmap_dir: Option<PathBuf>,
    /// Heatmap side in pixels
    #[arg(long, default_value_t = DEFAULT_HEATMAP_SIZE)]
    pub heatmap_size: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CheckArgs {
    #[command(flatten)]
    pub bank: BankArgs,
    /// Write the report as JSON to this path
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Fail when the largest residual exceeds this value (default: the pass/warn/fail ladder)
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TransformArgs {
    #[command(flatten)]
    pub bank: BankArgs,
    /// Input image (PGM or PNG)
    #[arg(long, short)]
    pub input: PathBuf,
    /// Output pyramid container
    #[arg(long, short, default_value = "pyramid.hxpy")]
    pub output: PathBuf,
    /// Number of levels
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    pub levels: u32,
    /// Cut stages applied to every band of the finest level (0, 1 or 2)
    #[arg(long, default_value_t = 0)]
    pub cut_stages: u32,
    /// Transition width of the cutting filters
    #[arg(long, default_value_t = filter_design::DEFAULT_CUT_EPS)]
    pub cut_eps: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ITransformArgs {
    /// Input pyramid container
    #[arg(long, short)]
    pub input: PathBuf,
    /// Output image (.pgm or .png)
    #[arg(long, short, default_value = "reconstruction.pgm")]
    pub output: PathBuf,
    /// Bank container (default: rebuilt from the pyramid header)
    #[arg(long)]
    pub filters: Option<PathBuf>,
    /// Original image; prints the relative reconstruction error
    #[arg(long)]
    pub reference: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CompressArgs {
    /// Input images (PGM or PNG)
    #[arg(long, num_args = 1.., default_value = "data/barbara.png")]
    pub images: Vec<PathBuf>,
    /// TOML configuration; command-line flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Compression ratio N/kept
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Comma-separated methods
    #[arg(long, value_delimiter = ',')]
    pub methods: Option<Vec<String>>,
    /// Transform levels
    #[arg(long)]
    pub levels: Option<u32>,
    /// Separable low-pass taps file (default: generated Daubechies taps)
    #[arg(long)]
    pub taps: Option<PathBuf>,
    /// CSV output path (default: stdout)
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// JSON output path
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Directory for reconstructed images
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Fill the runtime_ms column (otherwise left empty for reproducible output)
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ClassifyArgs {
    /// Partition family: hex, frame or dyadic
    #[arg(long, default_value = "hex")]
    pub family: String,
    #[arg(long, default_value_t = DEFAULT_P)]
    pub p: u32,
    /// Geometric tolerance of the classification
    #[arg(long, default_value_t = DEFAULT_CLASSIFY_TOL)]
    pub tol: f64,
    /// SVG output path
    #[arg(long, short, default_value = "classification.svg")]
    pub out: PathBuf,
    /// SVG side in pixels
    #[arg(long, default_value_t = DEFAULT_SVG_SIZE)]
    pub size: u32,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RenderArgs {
    #[command(flatten)]
    pub bank: BankArgs,
    /// Dilation levels in the truncated product
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    pub levels: u32,
    /// Panel side in pixels
    #[arg(long, default_value_t = DEFAULT_RENDER_SIZE)]
    pub size: usize,
    /// Output directory for the panels
    #[arg(long, short, default_value = "render")]
    pub out_dir: PathBuf,
}
