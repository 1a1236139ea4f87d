use std::fs;
use std::process::ExitCode;

use anyhow::{Context, Result};
use grayseg_core::{read_image, write_image, GrayImage, PixelDataset};

use crate::util::FileKind;
use crate::ConvertArgs;

enum Loaded {
    Image(GrayImage),
    Dataset(PixelDataset),
}

pub fn run(args: &ConvertArgs) -> Result<ExitCode> {
    let loaded = match FileKind::of(&args.input)? {
        FileKind::Image => Loaded::Image(
            read_image(&args.input)
                .with_context(|| format!("reading {}", args.input.display()))?,
        ),
        FileKind::Text => Loaded::Dataset(PixelDataset::parse_text(
            &fs::read(&args.input)
                .with_context(|| format!("reading {}", args.input.display()))?,
        )?),
        FileKind::Csv => Loaded::Dataset(PixelDataset::parse_csv(
            &fs::read(&args.input)
                .with_context(|| format!("reading {}", args.input.display()))?,
        )?),
    };

    match FileKind::of(&args.output)? {
        FileKind::Image => {
            let image = match &loaded {
                Loaded::Image(img) => img.clone(),
                Loaded::Dataset(ds) => ds.to_image()?,
            };
            write_image(&image, &args.output)
                .with_context(|| format!("writing {}", args.output.display()))?;
        }
        FileKind::Text => {
            let bytes = dataset_of(&loaded)?.to_text_bytes();
            fs::write(&args.output, bytes)
                .with_context(|| format!("writing {}", args.output.display()))?;
        }
        FileKind::Csv => {
            let bytes = dataset_of(&loaded)?.to_csv_bytes();
            fs::write(&args.output, bytes)
                .with_context(|| format!("writing {}", args.output.display()))?;
        }
    }

    match &loaded {
        Loaded::Image(img) => println!("{} x {}", img.height(), img.width()),
        Loaded::Dataset(ds) => match ds.rectangular_width() {
            Some(width) => println!("{} x {width}", ds.rows().len()),
            None => println!("{} x jagged", ds.rows().len()),
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn dataset_of(loaded: &Loaded) -> Result<PixelDataset> {
    match loaded {
        Loaded::Image(img) => Ok(PixelDataset::from_image(img)?),
        Loaded::Dataset(ds) => Ok(ds.clone()),
    }
}
