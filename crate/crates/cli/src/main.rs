//! `hexwave`: build and verify hexagonal filter banks, transform images,
//! benchmark compression, and render partitions and basis functions.

mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{BuildArgs, CheckArgs, ClassifyArgs, CompressArgs, ITransformArgs, RenderArgs, TransformArgs};
use crate::error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "hexwave", version, about = "Directional wavelets and frames on the hexagonal lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a filter bank; write its container and one heatmap per band.
    BuildFilters(BuildArgs),
    /// Check perfect reconstruction of a filter bank.
    CheckPr(CheckArgs),
    /// Multi-level forward transform of an image into a pyramid file.
    Transform(TransformArgs),
    /// Inverse transform of a pyramid file.
    Itransform(ITransformArgs),
    /// Nonlinear-approximation compression benchmark (CSV).
    Compress(CompressArgs),
    /// Classify partition boundaries into singular and regular parts (SVG).
    Classify(ClassifyArgs),
    /// Render scaling function and wavelets in space and frequency (PNG).
    Render(RenderArgs),
}

fn init_threads() -> CliResult<()> {
    if let Ok(v) = std::env::var("HEXWAVE_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("HEXWAVE_THREADS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    init_threads()?;
    match cli.command {
        Command::BuildFilters(a) => commands::build_filters(&a),
        Command::CheckPr(a) => commands::check_pr(&a),
        Command::Transform(a) => commands::transform(&a),
        Command::Itransform(a) => commands::itransform(&a),
        Command::Compress(a) => commands::compress(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Render(a) => commands::render(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hexwave: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

