use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use grayseg_core::{compare_runs, emit_chart, ChartFormat, RegionStats, Verdict};

use crate::util::{format_value, stem_of};
use crate::CompareArgs;

pub fn run(args: &CompareArgs) -> Result<ExitCode> {
    let left: RegionStats = read_stats(&args.left)?;
    let right: RegionStats = read_stats(&args.right)?;
    let left_label = args.left_label.clone().unwrap_or_else(|| stem_of(&args.left));
    let right_label = args
        .right_label
        .clone()
        .unwrap_or_else(|| stem_of(&args.right));

    let report = compare_runs(&left, &right, left_label, right_label);

    println!(
        "{:<12} {:>14} {:>14}",
        "statistic", report.left_label, report.right_label
    );
    for row in &report.rows {
        println!(
            "{:<12} {:>14} {:>14}",
            row.statistic,
            format_value(row.left),
            format_value(row.right)
        );
    }
    match report.verdict {
        Verdict::Left => println!("verdict: left ({}) has the lower coefficient of variance", report.left_label),
        Verdict::Right => println!("verdict: right ({}) has the lower coefficient of variance", report.right_label),
        Verdict::Equal => println!("verdict: equal"),
        Verdict::Incomparable => println!("verdict: incomparable (undefined coefficient of variance)"),
    }

    if let Some(format) = args.chart {
        let path = args.chart_out.clone().unwrap_or_else(|| {
            let ext = match format {
                ChartFormat::Csv => "csv",
                ChartFormat::Svg => "svg",
            };
            let name = format!(
                "{}_vs_{}_chart.{ext}",
                stem_of(&args.left),
                stem_of(&args.right)
            );
            args.left.with_file_name(name)
        });
        fs::write(&path, emit_chart(&report, format))
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }

    let json = serde_json::to_string_pretty(&report)?;
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

fn read_stats(path: &PathBuf) -> Result<RegionStats> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_slice(&bytes)
        .with_context(|| format!("{} is not a stats report", path.display()))
}
