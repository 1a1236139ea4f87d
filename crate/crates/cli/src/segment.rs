use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use grayseg_core::{
    build_histogram, flatten_and_shift, init_centroids, kmeans_converge_from, lloyd_oracle_from,
    read_image, render_segmented, segment, write_image,
};
use serde::Serialize;

use crate::SegmentArgs;

#[derive(Serialize)]
struct SegmentReport<'a> {
    k: usize,
    max_iters: usize,
    m_plus_one: bool,
    m: u32,
    shift: i32,
    /// Centroids in original intensity units.
    centroids: Vec<f64>,
    /// Centroids in shifted space, as the solver produced them.
    centroids_shifted: &'a [f64],
    iterations: usize,
    converged: bool,
    dispersion_trace: &'a [f64],
    warnings: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_check: Option<&'a str>,
}

pub fn run(args: &SegmentArgs) -> Result<ExitCode> {
    let image = read_image(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let fi = flatten_and_shift(&image)?;
    let hist = build_histogram(&fi);

    let init_m = if args.m_plus_one { fi.m() + 1 } else { fi.m() };
    let initial = init_centroids(args.k, init_m)?;
    let (centroids, _, report) = kmeans_converge_from(&hist, initial.clone(), args.max_iters)?;
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }

    let labels = segment(&image, &centroids, fi.shift())?;
    let rendered = render_segmented(&labels, &centroids, fi.shift(), image.depth());

    let mut oracle_check = None;
    if args.oracle {
        let (oracle_centroids, oracle_labels) =
            lloyd_oracle_from(&fi, initial, args.max_iters)?;
        let centroids_agree = centroids
            .values()
            .iter()
            .zip(oracle_centroids.values())
            .all(|(a, b)| (a - b).abs() <= 1e-9);
        let labels_agree = labels.labels() == oracle_labels.as_slice();
        if !centroids_agree || !labels_agree {
            eprintln!(
                "oracle mismatch: centroids {:?} vs {:?}, labels {}",
                centroids.values(),
                oracle_centroids.values(),
                if labels_agree { "agree" } else { "differ" }
            );
            return Ok(ExitCode::from(2));
        }
        oracle_check = Some("passed");
    }

    let prefix = args
        .out_prefix
        .clone()
        .unwrap_or_else(|| args.input.with_extension(""));
    let seg_path = with_suffix(&prefix, ".seg.pgm");
    let labels_path = with_suffix(&prefix, ".labels.pgm");
    let report_path = with_suffix(&prefix, ".report.json");

    write_image(&rendered, &seg_path)
        .with_context(|| format!("writing {}", seg_path.display()))?;
    write_image(&labels.to_gray_image()?, &labels_path)
        .with_context(|| format!("writing {}", labels_path.display()))?;

    let centroids_original: Vec<f64> = centroids
        .values()
        .iter()
        .map(|c| c + f64::from(fi.shift()))
        .collect();
    let json = serde_json::to_string_pretty(&SegmentReport {
        k: args.k,
        max_iters: args.max_iters,
        m_plus_one: args.m_plus_one,
        m: fi.m(),
        shift: fi.shift(),
        centroids: centroids_original.clone(),
        centroids_shifted: centroids.values(),
        iterations: report.iterations,
        converged: report.converged,
        dispersion_trace: &report.dispersion_trace,
        warnings: &report.warnings,
        oracle_check,
    })?;
    fs::write(&report_path, format!("{json}\n"))
        .with_context(|| format!("writing {}", report_path.display()))?;

    let mut counts = vec![0u64; centroids.k()];
    for &label in labels.labels() {
        counts[label as usize] += 1;
    }
    println!(
        "{} ({} x {}, depth {})",
        args.input.display(),
        image.height(),
        image.width(),
        image.depth()
    );
    println!(
        "k={} m={} shift={} {}converged after {} iteration{}",
        args.k,
        fi.m(),
        fi.shift(),
        if report.converged { "" } else { "NOT " },
        report.iterations,
        if report.iterations == 1 { "" } else { "s" }
    );
    println!("{:<8} {:>12} {:>10}", "cluster", "centroid", "pixels");
    for (i, c) in centroids_original.iter().enumerate() {
        println!("{i:<8} {c:>12.3} {:>10}", counts[i]);
    }
    if let Some(status) = oracle_check {
        println!("oracle check: {status}");
    }
    for path in [&seg_path, &labels_path, &report_path] {
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn with_suffix(prefix: &PathBuf, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}
