//! Grayscale image segmentation built on histogram-accelerated 1-D
//! k-means, together with the surrounding toolkit: pixel dataset
//! ingestion (image ↔ text ↔ CSV), PGM/PNG file I/O, synthetic test
//! images, and per-region statistics with comparison reports.
//!
//! The clustering pipeline is deterministic end to end: centroids start
//! on a fixed grid, assignment breaks ties toward the lowest index, and
//! centroid updates reduce to exact integer sums, so repeated runs (and
//! the per-pixel reference in [`oracle`]) reproduce identical results.

pub mod chart;
pub mod dataset;
pub mod error;
pub mod image;
pub mod io;
pub mod kmeans;
pub mod oracle;
pub mod stats;
pub mod synth;

pub use crate::chart::{emit_chart, ChartFormat};
pub use crate::dataset::{csv_to_image, image_to_text, text_to_csv, PixelDataset};
pub use crate::error::{Error, Result};
pub use crate::image::GrayImage;
pub use crate::io::{encode_pgm, parse_pgm, read_image, write_image, PgmEncoding};
pub use crate::kmeans::{
    assign_levels, build_histogram, flatten_and_shift, init_centroids, kmeans_converge,
    kmeans_converge_from, nearest_centroid, render_segmented, segment, update_centroids,
    within_cluster_dispersion, CentroidSet, ConvergenceReport, FlattenedIntensities,
    IntensityHistogram, LabelMap, LevelAssignment, DEFAULT_MAX_ITERS,
};
pub use crate::oracle::{lloyd_oracle, lloyd_oracle_from};
pub use crate::stats::{
    coefficient_of_variation, compare_runs, compute_stats, ComparisonReport, ComparisonRow,
    RegionId, RegionStats, StdMode, Verdict,
};
pub use crate::synth::{make_synthetic, Region};
