use std::process::ExitCode;

use anyhow::{Context, Result};
use grayseg_core::{make_synthetic, write_image};

use crate::SynthArgs;

pub fn run(args: &SynthArgs) -> Result<ExitCode> {
    let image = make_synthetic(args.width, args.height, &args.regions, args.noise, args.seed)?;
    write_image(&image, &args.output)
        .with_context(|| format!("writing {}", args.output.display()))?;
    println!(
        "wrote {} ({} x {}, {} region{}, noise {}, seed {})",
        args.output.display(),
        image.height(),
        image.width(),
        args.regions.len(),
        if args.regions.len() == 1 { "" } else { "s" },
        args.noise,
        args.seed
    );
    Ok(ExitCode::SUCCESS)
}
