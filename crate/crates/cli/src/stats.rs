use std::fs;
use std::process::ExitCode;

use anyhow::{Context, Result};
use grayseg_core::{compute_stats, read_image, LabelMap};

use crate::util::stats_table;
use crate::StatsArgs;

pub fn run(args: &StatsArgs) -> Result<ExitCode> {
    let image = read_image(&args.image)
        .with_context(|| format!("reading {}", args.image.display()))?;
    let mask = match &args.mask {
        Some(path) => {
            let mask_image =
                read_image(path).with_context(|| format!("reading {}", path.display()))?;
            Some(LabelMap::from_image(&mask_image))
        }
        None => None,
    };

    let stats = compute_stats(&image, mask.as_ref(), args.region, args.std_mode)?;
    print!("{}", stats_table(&stats));

    let json = serde_json::to_string_pretty(&stats)?;
    match &args.out {
        Some(path) => {
            fs::write(path, format!("{json}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => println!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}
