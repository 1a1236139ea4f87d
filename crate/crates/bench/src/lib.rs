//! Shared input builders for the benchmark suite.

use grayseg_core::{make_synthetic, GrayImage, Region};

/// Square synthetic image with a few bright structures over a dark
/// background and mild noise, roughly the intensity profile the
/// segmentation pipeline is aimed at.
pub fn synthetic_scan(side: usize, seed: u64) -> GrayImage {
    let q = side / 4;
    let regions = [
        Region { x: q / 2, y: q / 2, width: q, height: q, intensity: 90 },
        Region { x: 2 * q, y: q, width: q, height: 2 * q, intensity: 170 },
        Region { x: q, y: 2 * q + q / 2, width: 2 * q, height: q, intensity: 240 },
    ];
    make_synthetic(side, side, &regions, 12, seed).expect("valid synthetic spec")
}
