//! Histogram-accelerated 1-D k-means over pixel intensities.
//!
//! A grayscale image is flattened into a single column of intensities,
//! min-shifted so the smallest level maps to 1, and summarized as an
//! intensity histogram. Clustering then iterates over the distinct levels
//! weighted by their counts instead of over individual pixels, which is an
//! exact reformulation of per-pixel 1-D Lloyd iteration: all pixels that
//! share a level always move between clusters together.
//!
//! The loop is fully deterministic. Initialization places the k centroids
//! at `(j+1) * m / (k+1)`, assignment uses absolute distance with ties
//! going to the lowest cluster index, and the centroid update computes
//! exact integer numerators and denominators before a single division.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Default iteration cap; 1-D runs converge in far fewer passes, the cap
/// only guards against floating-point cycling.
pub const DEFAULT_MAX_ITERS: usize = 1000;

/// Row-major pixel intensities shifted so the minimum maps to 1.
///
/// `shift` is `original_min - 1`; adding it back recovers original units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlattenedIntensities {
    values: Vec<u32>,
    m: u32,
    shift: i32,
}

impl FlattenedIntensities {
    /// Wraps already-shifted values. Every value must be at least 1.
    pub fn new(values: Vec<u32>, shift: i32) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if values.iter().any(|&v| v == 0) {
            return Err(Error::LevelZero);
        }
        let m = *values.iter().max().expect("non-empty");
        Ok(Self { values, m, shift })
    }

    /// Shifted intensity levels, one per pixel, each in `1..=m`.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Maximum shifted intensity.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Offset subtracted from original intensities (`original_min - 1`).
    pub fn shift(&self) -> i32 {
        self.shift
    }
}

/// Occurrence counts per shifted intensity level.
///
/// Stored dense: `counts[a]` is the count of level `a` for `a` in `1..=m`
/// (index 0 is unused and always zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntensityHistogram {
    counts: Vec<u64>,
    m: u32,
    total: u64,
}

impl IntensityHistogram {
    /// Builds a histogram from explicit (level, count) pairs; zero counts
    /// are allowed and ignored.
    pub fn from_counts(pairs: &[(u32, u64)]) -> Result<Self> {
        let m = pairs
            .iter()
            .filter(|&&(_, c)| c > 0)
            .map(|&(a, _)| a)
            .max()
            .ok_or(Error::EmptyInput)?;
        let mut counts = vec![0u64; m as usize + 1];
        let mut total = 0u64;
        for &(level, count) in pairs {
            if level == 0 {
                return Err(Error::LevelZero);
            }
            if count > 0 {
                counts[level as usize] += count;
                total += count;
            }
        }
        Ok(Self { counts, m, total })
    }

    /// Count of pixels at `level`; zero for levels above `m`.
    pub fn count(&self, level: u32) -> u64 {
        self.counts.get(level as usize).copied().unwrap_or(0)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Total pixel count.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Levels with a non-zero count, ascending.
    pub fn nonzero_levels(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.m).filter(|&a| self.counts[a as usize] > 0)
    }

    /// Number of distinct levels that occur.
    pub fn distinct_levels(&self) -> usize {
        self.nonzero_levels().count()
    }
}

/// The k real-valued centroids, in shifted intensity space.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidSet {
    values: Vec<f64>,
}

impl CentroidSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ZeroClusters);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteCentroid);
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of clusters.
    pub fn k(&self) -> usize {
        self.values.len()
    }
}

/// Cluster membership per intensity level.
///
/// Only levels that actually occur are assigned; `cluster_of` is `None`
/// for levels with zero count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelAssignment {
    cluster_of: Vec<Option<u32>>,
}

impl LevelAssignment {
    /// Cluster index assigned to `level`, if the level occurs.
    pub fn cluster_of(&self, level: u32) -> Option<u32> {
        self.cluster_of.get(level as usize).copied().flatten()
    }

    /// Assigned (level, cluster) pairs, ascending by level.
    pub fn assigned(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.cluster_of
            .iter()
            .enumerate()
            .filter_map(|(a, c)| c.map(|c| (a as u32, c)))
    }
}

/// Per-pixel cluster indices with the image geometry preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    width: usize,
    height: usize,
    k: usize,
    labels: Vec<u32>,
}

impl LabelMap {
    pub fn new(width: usize, height: usize, k: usize, labels: Vec<u32>) -> Result<Self> {
        if width == 0 || height == 0 || k == 0 {
            return Err(Error::EmptyInput);
        }
        let expected = width * height;
        if labels.len() != expected {
            return Err(Error::PixelCountMismatch {
                width,
                height,
                expected,
                got: labels.len(),
            });
        }
        if let Some(&label) = labels.iter().find(|&&l| l as usize >= k) {
            return Err(Error::LabelOutOfRange { label, k });
        }
        Ok(Self {
            width,
            height,
            k,
            labels,
        })
    }

    /// Reinterprets an image as a label map, pixel value = cluster index.
    /// The cluster count is the largest label plus one.
    pub fn from_image(image: &GrayImage) -> Self {
        let labels: Vec<u32> = image.pixels().iter().map(|&p| u32::from(p)).collect();
        let k = labels.iter().max().map_or(1, |&m| m as usize + 1);
        Self {
            width: image.width(),
            height: image.height(),
            k,
            labels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of clusters the labels were drawn from.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, x: usize, y: usize) -> u32 {
        self.labels[y * self.width + x]
    }

    /// Renders the labels themselves as a grayscale image (pixel = index),
    /// using 8-bit depth when the cluster count permits.
    pub fn to_gray_image(&self) -> Result<GrayImage> {
        let depth: u16 = if self.k <= 256 { 255 } else { 65535 };
        if self.k > 65536 {
            return Err(Error::LabelOutOfRange {
                label: self.k as u32 - 1,
                k: 65536,
            });
        }
        let pixels = self.labels.iter().map(|&l| l as u16).collect();
        GrayImage::new(self.width, self.height, depth, pixels)
    }
}

/// Outcome of a convergence run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// Full assign/update passes performed.
    pub iterations: usize,
    /// Whether no level changed cluster on the final pass.
    pub converged: bool,
    /// Within-cluster dispersion after each assignment pass, evaluated
    /// against the centroids that produced the assignment. Non-increasing.
    pub dispersion_trace: Vec<f64>,
    /// Human-readable notes recorded during the run (e.g. surplus clusters).
    pub warnings: Vec<String>,
}

/// Flattens an image into shifted intensities: row-major pixels with
/// `original_min - 1` subtracted, so the minimum maps to 1.
pub fn flatten_and_shift(image: &GrayImage) -> Result<FlattenedIntensities> {
    if image.is_empty() {
        return Err(Error::EmptyInput);
    }
    let min = *image.pixels().iter().min().expect("non-empty");
    let shift = i32::from(min) - 1;
    let values = image
        .pixels()
        .iter()
        .map(|&p| (i32::from(p) - shift) as u32)
        .collect();
    FlattenedIntensities::new(values, shift)
}

/// Counts occurrences of every shifted intensity level.
pub fn build_histogram(fi: &FlattenedIntensities) -> IntensityHistogram {
    let mut counts = vec![0u64; fi.m() as usize + 1];
    for &v in fi.values() {
        counts[v as usize] += 1;
    }
    IntensityHistogram {
        counts,
        m: fi.m(),
        total: fi.values().len() as u64,
    }
}

/// Places the k initial centroids at `(j+1) * m / (k+1)` for `j = 0..k`,
/// equally spaced strictly inside the occupied intensity range.
pub fn init_centroids(k: usize, m: u32) -> Result<CentroidSet> {
    if k == 0 {
        return Err(Error::ZeroClusters);
    }
    let m = f64::from(m);
    let values = (0..k)
        .map(|j| (j as f64 + 1.0) * m / (k as f64 + 1.0))
        .collect();
    CentroidSet::new(values)
}

/// Index of the centroid with minimal absolute distance to `level`.
/// Equidistant levels go to the lowest cluster index.
pub fn nearest_centroid(level: u32, centroids: &CentroidSet) -> u32 {
    let level = f64::from(level);
    let mut best = 0u32;
    let mut best_dist = f64::INFINITY;
    for (j, &c) in centroids.values().iter().enumerate() {
        let d = (level - c).abs();
        if d < best_dist {
            best_dist = d;
            best = j as u32;
        }
    }
    best
}

/// Assigns every occurring level to its nearest centroid.
pub fn assign_levels(hist: &IntensityHistogram, centroids: &CentroidSet) -> LevelAssignment {
    let mut cluster_of = vec![None; hist.m() as usize + 1];
    for a in hist.nonzero_levels() {
        cluster_of[a as usize] = Some(nearest_centroid(a, centroids));
    }
    LevelAssignment { cluster_of }
}

/// Recomputes each centroid as the count-weighted mean of its levels:
/// `sum(a * h(a)) / sum(h(a))` over the levels assigned to the cluster.
///
/// Numerator and denominator are accumulated in integer arithmetic and
/// divided once, so the result is independent of traversal order. A
/// cluster with no assigned levels keeps its previous centroid.
///
/// # Panics
///
/// Panics if the assignment does not cover every non-zero level of `hist`.
pub fn update_centroids(
    hist: &IntensityHistogram,
    assignment: &LevelAssignment,
    previous: &CentroidSet,
) -> CentroidSet {
    let k = previous.k();
    let mut numerators = vec![0u64; k];
    let mut denominators = vec![0u64; k];
    for a in hist.nonzero_levels() {
        let cluster = assignment
            .cluster_of(a)
            .expect("assignment covers all non-zero levels") as usize;
        let h = hist.count(a);
        numerators[cluster] += u64::from(a) * h;
        denominators[cluster] += h;
    }
    let values = (0..k)
        .map(|i| {
            if denominators[i] == 0 {
                previous.values()[i]
            } else {
                numerators[i] as f64 / denominators[i] as f64
            }
        })
        .collect();
    CentroidSet { values }
}

/// Within-cluster dispersion `sum over a of h(a) * (a - c_assigned(a))^2`,
/// the objective the alternation locally minimizes.
pub fn within_cluster_dispersion(
    hist: &IntensityHistogram,
    assignment: &LevelAssignment,
    centroids: &CentroidSet,
) -> f64 {
    let mut total = 0.0;
    for a in hist.nonzero_levels() {
        let cluster = assignment
            .cluster_of(a)
            .expect("assignment covers all non-zero levels") as usize;
        let d = f64::from(a) - centroids.values()[cluster];
        total += hist.count(a) as f64 * d * d;
    }
    total
}

/// Runs the full alternation from the standard initialization.
///
/// Starting from [`init_centroids`]`(k, hist.m())`, alternates
/// [`assign_levels`] and [`update_centroids`] until two consecutive
/// assignments are identical or `max_iters` passes have run. Exhausting
/// the cap is not an error; the report carries `converged = false`.
pub fn kmeans_converge(
    hist: &IntensityHistogram,
    k: usize,
    max_iters: usize,
) -> Result<(CentroidSet, LevelAssignment, ConvergenceReport)> {
    let initial = init_centroids(k, hist.m())?;
    kmeans_converge_from(hist, initial, max_iters)
}

/// Runs the alternation from explicit initial centroids. Used directly by
/// the Eq.-1 `m+1` initialization variant.
pub fn kmeans_converge_from(
    hist: &IntensityHistogram,
    initial: CentroidSet,
    max_iters: usize,
) -> Result<(CentroidSet, LevelAssignment, ConvergenceReport)> {
    if max_iters == 0 {
        return Err(Error::ZeroIterations);
    }
    let mut warnings = Vec::new();
    let distinct = hist.distinct_levels();
    if initial.k() > distinct {
        warnings.push(format!(
            "k={} exceeds the {} distinct intensity levels; surplus clusters stay empty",
            initial.k(),
            distinct
        ));
    }

    let mut centroids = initial;
    let mut previous: Option<LevelAssignment> = None;
    let mut dispersion_trace = Vec::new();
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iters {
        iterations += 1;
        let assignment = assign_levels(hist, &centroids);
        dispersion_trace.push(within_cluster_dispersion(hist, &assignment, &centroids));
        if previous.as_ref() == Some(&assignment) {
            converged = true;
            previous = Some(assignment);
            break;
        }
        centroids = update_centroids(hist, &assignment, &centroids);
        previous = Some(assignment);
    }

    let assignment = previous.expect("at least one pass ran");
    let report = ConvergenceReport {
        iterations,
        converged,
        dispersion_trace,
        warnings,
    };
    Ok((centroids, assignment, report))
}

/// Labels every pixel with its nearest centroid in shifted space.
///
/// `shift` must be the offset recorded when this image was flattened;
/// any pixel that would map below level 1 is a shift mismatch.
pub fn segment(image: &GrayImage, centroids: &CentroidSet, shift: i32) -> Result<LabelMap> {
    let mut labels = Vec::with_capacity(image.len());
    for &p in image.pixels() {
        let level = i32::from(p) - shift;
        if level < 1 {
            return Err(Error::ShiftMismatch { pixel: p, shift });
        }
        labels.push(nearest_centroid(level as u32, centroids));
    }
    Ok(LabelMap {
        width: image.width(),
        height: image.height(),
        k: centroids.k(),
        labels,
    })
}

/// Replaces every label with its centroid value mapped back to original
/// units: `round_half_up(c_label + shift)`, clamped to `0..=depth`.
pub fn render_segmented(
    labels: &LabelMap,
    centroids: &CentroidSet,
    shift: i32,
    depth: u16,
) -> GrayImage {
    assert_eq!(
        labels.k(),
        centroids.k(),
        "label map was built for a different cluster count"
    );
    let pixels = labels
        .labels()
        .iter()
        .map(|&l| {
            let v = centroids.values()[l as usize] + f64::from(shift);
            let rounded = (v + 0.5).floor();
            rounded.clamp(0.0, f64::from(depth)) as u16
        })
        .collect();
    GrayImage::new(labels.width(), labels.height(), depth, pixels)
        .expect("label map geometry is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hist(pairs: &[(u32, u64)]) -> IntensityHistogram {
        IntensityHistogram::from_counts(pairs).unwrap()
    }

    #[test]
    fn flatten_constant_image() {
        let img = GrayImage::new_8bit(3, 1, vec![5, 5, 5]).unwrap();
        let fi = flatten_and_shift(&img).unwrap();
        assert_eq!(fi.values(), &[1, 1, 1]);
        assert_eq!(fi.m(), 1);
        assert_eq!(fi.shift(), 4);
    }

    #[test]
    fn flatten_shifts_minimum_to_one() {
        let img = GrayImage::new_8bit(3, 1, vec![10, 20, 30]).unwrap();
        let fi = flatten_and_shift(&img).unwrap();
        assert_eq!(fi.values(), &[1, 11, 21]);
        assert_eq!(fi.m(), 21);
        assert_eq!(fi.shift(), 9);
    }

    #[test]
    fn flatten_full_8bit_range() {
        let img = GrayImage::new_8bit(2, 1, vec![0, 255]).unwrap();
        let fi = flatten_and_shift(&img).unwrap();
        assert_eq!(fi.values(), &[1, 256]);
        assert_eq!(fi.m(), 256);
        assert_eq!(fi.shift(), -1);
    }

    #[test]
    fn histogram_counts_occurrences() {
        let fi = FlattenedIntensities::new(vec![1, 1, 3], 0).unwrap();
        let h = build_histogram(&fi);
        assert_eq!(h.count(1), 2);
        assert_eq!(h.count(2), 0);
        assert_eq!(h.count(3), 1);
        assert_eq!(h.total(), 3);
        assert_eq!(h.m(), 3);
    }

    #[test]
    fn histogram_singleton() {
        let fi = FlattenedIntensities::new(vec![1], 0).unwrap();
        let h = build_histogram(&fi);
        assert_eq!(h.count(1), 1);
        assert_eq!(h.total(), 1);
    }

    #[test]
    fn histogram_constant() {
        let fi = FlattenedIntensities::new(vec![2, 2, 2, 2], 0).unwrap();
        let h = build_histogram(&fi);
        assert_eq!(h.count(2), 4);
        assert_eq!(h.total(), 4);
        assert_eq!(h.distinct_levels(), 1);
    }

    #[test]
    fn init_single_centroid() {
        let c = init_centroids(1, 2).unwrap();
        assert_eq!(c.values(), &[1.0]);
    }

    #[test]
    fn init_two_centroids() {
        let c = init_centroids(2, 10).unwrap();
        assert!((c.values()[0] - 10.0 / 3.0).abs() < 1e-12);
        assert!((c.values()[1] - 20.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn init_default_k_five() {
        let c = init_centroids(5, 256).unwrap();
        let expected = [42.667, 85.333, 128.0, 170.667, 213.333];
        for (got, want) in c.values().iter().zip(expected) {
            assert!((got - want).abs() < 1e-3, "{got} vs {want}");
        }
    }

    #[test]
    fn init_rejects_zero_k() {
        assert!(matches!(init_centroids(0, 10), Err(Error::ZeroClusters)));
    }

    #[test]
    fn init_is_strictly_increasing() {
        for k in 1..8 {
            for m in [1u32, 7, 256, 65536] {
                let c = init_centroids(k, m).unwrap();
                assert!(c.values().windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn nearest_picks_minimal_distance() {
        let c = CentroidSet::new(vec![42.667, 85.333, 128.0, 170.667, 213.333]).unwrap();
        assert_eq!(nearest_centroid(100, &c), 1);
    }

    #[test]
    fn nearest_single_centroid() {
        let c = CentroidSet::new(vec![5.0]).unwrap();
        assert_eq!(nearest_centroid(5, &c), 0);
    }

    #[test]
    fn nearest_tie_goes_to_lowest_index() {
        let c = CentroidSet::new(vec![4.0, 8.0]).unwrap();
        assert_eq!(nearest_centroid(6, &c), 0);
    }

    #[test]
    fn assign_splits_two_groups() {
        let h = hist(&[(1, 1), (2, 1), (9, 1), (10, 1)]);
        let c = init_centroids(2, 10).unwrap();
        let a = assign_levels(&h, &c);
        assert_eq!(a.cluster_of(1), Some(0));
        assert_eq!(a.cluster_of(2), Some(0));
        assert_eq!(a.cluster_of(9), Some(1));
        assert_eq!(a.cluster_of(10), Some(1));
        assert_eq!(a.cluster_of(5), None);
    }

    #[test]
    fn assign_single_cluster() {
        let h = hist(&[(5, 4)]);
        let c = CentroidSet::new(vec![5.0]).unwrap();
        let a = assign_levels(&h, &c);
        assert_eq!(a.cluster_of(5), Some(0));
    }

    #[test]
    fn assign_extremes() {
        let h = hist(&[(1, 1), (256, 1)]);
        let c = CentroidSet::new(vec![85.333, 170.667]).unwrap();
        let a = assign_levels(&h, &c);
        assert_eq!(a.cluster_of(1), Some(0));
        assert_eq!(a.cluster_of(256), Some(1));
    }

    #[test]
    fn update_weighted_mean() {
        let h = hist(&[(10, 3), (20, 1)]);
        let c = CentroidSet::new(vec![12.0]).unwrap();
        let a = assign_levels(&h, &c);
        let nc = update_centroids(&h, &a, &c);
        assert_eq!(nc.values(), &[12.5]);
    }

    #[test]
    fn update_two_clusters() {
        let h = hist(&[(1, 1), (2, 1), (9, 1), (10, 1)]);
        let c = init_centroids(2, 10).unwrap();
        let a = assign_levels(&h, &c);
        let nc = update_centroids(&h, &a, &c);
        assert_eq!(nc.values(), &[1.5, 9.5]);
    }

    #[test]
    fn update_retains_empty_cluster() {
        let h = hist(&[(7, 2)]);
        let c = CentroidSet::new(vec![3.0, 100.0]).unwrap();
        let a = assign_levels(&h, &c);
        let nc = update_centroids(&h, &a, &c);
        assert_eq!(nc.values(), &[7.0, 100.0]);
    }

    #[test]
    fn converge_two_groups_in_two_passes() {
        let h = hist(&[(1, 1), (2, 1), (9, 1), (10, 1)]);
        let (c, a, report) = kmeans_converge(&h, 2, DEFAULT_MAX_ITERS).unwrap();
        assert_eq!(c.values(), &[1.5, 9.5]);
        assert_eq!(a.cluster_of(1), Some(0));
        assert_eq!(a.cluster_of(2), Some(0));
        assert_eq!(a.cluster_of(9), Some(1));
        assert_eq!(a.cluster_of(10), Some(1));
        assert!(report.converged);
        assert_eq!(report.iterations, 2);
    }

    #[test]
    fn converge_single_level() {
        let h = hist(&[(5, 100)]);
        let (c, _, report) = kmeans_converge(&h, 1, DEFAULT_MAX_ITERS).unwrap();
        assert_eq!(c.values(), &[5.0]);
        assert!(report.converged);
    }

    #[test]
    fn converge_recovers_bimodal_modes() {
        // 50 and 200 in original units; min-shift puts them at 1 and 151.
        let h = hist(&[(1, 40), (151, 40)]);
        let (c, a, report) = kmeans_converge(&h, 2, DEFAULT_MAX_ITERS).unwrap();
        assert_eq!(c.values(), &[1.0, 151.0]);
        assert_eq!(a.cluster_of(1), Some(0));
        assert_eq!(a.cluster_of(151), Some(1));
        assert!(report.converged);
    }

    #[test]
    fn converge_warns_on_surplus_clusters() {
        let h = hist(&[(1, 10)]);
        let (_, _, report) = kmeans_converge(&h, 3, DEFAULT_MAX_ITERS).unwrap();
        assert!(report.converged);
        assert_eq!(report.warnings.len(), 1);
        assert!(report.warnings[0].contains("surplus"));
    }

    #[test]
    fn converge_respects_iteration_cap() {
        let h = hist(&[(1, 1), (2, 1), (9, 1), (10, 1)]);
        let (_, _, report) = kmeans_converge(&h, 2, 1).unwrap();
        assert_eq!(report.iterations, 1);
        assert!(!report.converged);
    }

    #[test]
    fn dispersion_trace_is_non_increasing() {
        let h = hist(&[(1, 5), (30, 2), (31, 9), (90, 4), (200, 1)]);
        let (_, _, report) = kmeans_converge(&h, 3, DEFAULT_MAX_ITERS).unwrap();
        assert!(report
            .dispersion_trace
            .windows(2)
            .all(|w| w[1] <= w[0] + 1e-9));
    }

    #[test]
    fn segment_labels_by_nearest() {
        let img = GrayImage::new_8bit(2, 2, vec![10, 10, 20, 20]).unwrap();
        let c = CentroidSet::new(vec![1.5, 11.5]).unwrap();
        let labels = segment(&img, &c, 9).unwrap();
        assert_eq!(labels.labels(), &[0, 0, 1, 1]);
        assert_eq!(labels.k(), 2);
    }

    #[test]
    fn segment_constant_single_cluster() {
        let img = GrayImage::new_8bit(2, 2, vec![7, 7, 7, 7]).unwrap();
        let c = CentroidSet::new(vec![1.0]).unwrap();
        let labels = segment(&img, &c, 6).unwrap();
        assert!(labels.labels().iter().all(|&l| l == 0));
    }

    #[test]
    fn segment_agrees_with_level_assignment() {
        let img = GrayImage::new_8bit(3, 2, vec![12, 40, 12, 250, 40, 99]).unwrap();
        let fi = flatten_and_shift(&img).unwrap();
        let h = build_histogram(&fi);
        let (c, a, _) = kmeans_converge(&h, 3, DEFAULT_MAX_ITERS).unwrap();
        let labels = segment(&img, &c, fi.shift()).unwrap();
        for (i, &v) in fi.values().iter().enumerate() {
            assert_eq!(Some(labels.labels()[i]), a.cluster_of(v));
        }
    }

    #[test]
    fn segment_rejects_wrong_shift() {
        let img = GrayImage::new_8bit(2, 1, vec![3, 200]).unwrap();
        let c = CentroidSet::new(vec![1.0]).unwrap();
        assert!(matches!(
            segment(&img, &c, 50),
            Err(Error::ShiftMismatch { pixel: 3, shift: 50 })
        ));
    }

    #[test]
    fn render_rounds_half_up() {
        let labels = LabelMap::new(2, 1, 2, vec![0, 1]).unwrap();
        let c = CentroidSet::new(vec![1.5, 9.5]).unwrap();
        let img = render_segmented(&labels, &c, 0, 255);
        assert_eq!(img.pixels(), &[2, 10]);
    }

    #[test]
    fn render_single_cluster_is_constant() {
        let labels = LabelMap::new(3, 2, 1, vec![0; 6]).unwrap();
        let c = CentroidSet::new(vec![41.25]).unwrap();
        let img = render_segmented(&labels, &c, 10, 255);
        assert!(img.pixels().iter().all(|&p| p == 51));
    }

    #[test]
    fn render_clamps_to_depth() {
        let labels = LabelMap::new(1, 1, 1, vec![0]).unwrap();
        let c = CentroidSet::new(vec![300.0]).unwrap();
        let img = render_segmented(&labels, &c, 0, 255);
        assert_eq!(img.pixels(), &[255]);
    }

    #[test]
    fn label_map_round_trips_through_image() {
        let labels = LabelMap::new(2, 2, 3, vec![0, 1, 2, 1]).unwrap();
        let img = labels.to_gray_image().unwrap();
        let back = LabelMap::from_image(&img);
        assert_eq!(back.labels(), labels.labels());
        assert_eq!(back.k(), 3);
    }
}
