//! `grayseg` — segment grayscale images with histogram k-means and poke
//! at the results: format conversion, region statistics, run comparison,
//! and synthetic test images.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 reference
//! (oracle) mismatch.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use grayseg_core::{ChartFormat, Region, StdMode};

mod compare;
mod convert;
mod segment;
mod stats;
mod synth;
mod util;

#[derive(Parser)]
#[command(
    name = "grayseg",
    version,
    about = "Grayscale image segmentation via histogram-accelerated k-means"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert between image (.pgm/.png), text dataset (.txt), and CSV (.csv)
    Convert(ConvertArgs),
    /// Segment an image and write the mask, label map, and a JSON report
    Segment(SegmentArgs),
    /// Region statistics: average, standard deviation, coefficient of variance
    Stats(StatsArgs),
    /// Compare two stats reports; optionally emit a chart
    Compare(CompareArgs),
    /// Generate a deterministic synthetic test image
    Synth(SynthArgs),
}

#[derive(clap::Args)]
pub struct ConvertArgs {
    /// Input file; format inferred from the extension
    pub input: PathBuf,
    /// Output file; format inferred from the extension
    pub output: PathBuf,
}

#[derive(clap::Args)]
pub struct SegmentArgs {
    /// Input image (.pgm or .png)
    pub input: PathBuf,
    /// Number of clusters
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    /// Iteration cap for the convergence loop
    #[arg(long, default_value_t = 1000)]
    pub max_iters: usize,
    /// Use m+1 instead of m in the initial centroid grid
    #[arg(long)]
    pub m_plus_one: bool,
    /// Cross-check against the per-pixel reference; a mismatch exits 2
    #[arg(long)]
    pub oracle: bool,
    /// Stem for the output files (default: input path without extension);
    /// writes <stem>.seg.pgm, <stem>.labels.pgm, <stem>.report.json
    #[arg(long)]
    pub out_prefix: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct StatsArgs {
    /// Input image (.pgm or .png)
    pub image: PathBuf,
    /// Label-map image (pixel value = cluster index), as written by `segment`
    #[arg(long, requires = "region")]
    pub mask: Option<PathBuf>,
    /// Cluster index to select from the mask
    #[arg(long, requires = "mask")]
    pub region: Option<u32>,
    /// Standard-deviation convention
    #[arg(long, default_value = "population", value_parser = StdMode::from_str)]
    pub std_mode: StdMode,
    /// Write the JSON report here instead of printing it
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct CompareArgs {
    /// Left stats report (JSON, as written by `stats --out`)
    pub left: PathBuf,
    /// Right stats report (JSON)
    pub right: PathBuf,
    /// Emit a chart in this format
    #[arg(long, value_parser = ChartFormat::from_str)]
    pub chart: Option<ChartFormat>,
    /// Chart output path (default: derived from the input file names)
    #[arg(long)]
    pub chart_out: Option<PathBuf>,
    /// Name for the left run (default: left file stem)
    #[arg(long)]
    pub left_label: Option<String>,
    /// Name for the right run (default: right file stem)
    #[arg(long)]
    pub right_label: Option<String>,
    /// Write the comparison report JSON here instead of printing it
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct SynthArgs {
    /// Output image path
    pub output: PathBuf,
    #[arg(long, default_value_t = 64)]
    pub width: usize,
    #[arg(long, default_value_t = 64)]
    pub height: usize,
    /// Filled rectangle as x,y,width,height,intensity; repeatable
    #[arg(long = "region", value_parser = parse_region)]
    pub regions: Vec<Region>,
    /// Uniform noise amplitude
    #[arg(long, default_value_t = 0)]
    pub noise: u16,
    /// Noise seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_region(s: &str) -> Result<Region, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 5 {
        return Err(format!(
            "expected x,y,width,height,intensity, got {} fields",
            parts.len()
        ));
    }
    let num = |i: usize, what: &str| -> Result<usize, String> {
        parts[i]
            .trim()
            .parse()
            .map_err(|_| format!("invalid {what} {:?}", parts[i]))
    };
    Ok(Region {
        x: num(0, "x")?,
        y: num(1, "y")?,
        width: num(2, "width")?,
        height: num(3, "height")?,
        intensity: num(4, "intensity")? as u16,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Convert(args) => convert::run(&args),
        Command::Segment(args) => segment::run(&args),
        Command::Stats(args) => stats::run(&args),
        Command::Compare(args) => compare::run(&args),
        Command::Synth(args) => synth::run(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
