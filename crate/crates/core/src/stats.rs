//! Region statistics over segmented images: average, standard deviation,
//! and coefficient of variance, plus a two-run comparison report.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::kmeans::LabelMap;

/// Which pixels a statistic was computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionId {
    WholeImage,
    Cluster(u32),
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionId::WholeImage => write!(f, "whole-image"),
            RegionId::Cluster(i) => write!(f, "{i}"),
        }
    }
}

impl Serialize for RegionId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RegionId::WholeImage => serializer.serialize_str("whole-image"),
            RegionId::Cluster(i) => serializer.serialize_u32(*i),
        }
    }
}

impl<'de> Deserialize<'de> for RegionId {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        struct RegionIdVisitor;

        impl Visitor<'_> for RegionIdVisitor {
            type Value = RegionId;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a cluster index or the string \"whole-image\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<RegionId, E> {
                u32::try_from(v)
                    .map(RegionId::Cluster)
                    .map_err(|_| E::custom("cluster index out of range"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RegionId, E> {
                if v == "whole-image" {
                    Ok(RegionId::WholeImage)
                } else {
                    Err(E::custom(format!("unknown region id {v:?}")))
                }
            }
        }

        deserializer.deserialize_any(RegionIdVisitor)
    }
}

/// Standard-deviation convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum StdMode {
    /// Divide by n.
    #[default]
    Population,
    /// Divide by n-1 (Bessel's correction).
    Sample,
}

impl FromStr for StdMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "population" => Ok(StdMode::Population),
            "sample" => Ok(StdMode::Sample),
            other => Err(format!(
                "unknown std mode {other:?}, expected \"population\" or \"sample\""
            )),
        }
    }
}

impl fmt::Display for StdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StdMode::Population => f.write_str("population"),
            StdMode::Sample => f.write_str("sample"),
        }
    }
}

/// Pixel count, average, standard deviation and coefficient of variance
/// for one region, in original (unshifted) intensity units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionStats {
    pub region_id: RegionId,
    pub n: u64,
    pub average: f64,
    pub std_dev: f64,
    /// Percent ratio `100 * std_dev / average`; `None` when the average
    /// is zero.
    pub coeff_var: Option<f64>,
    pub std_mode: StdMode,
}

impl RegionStats {
    /// Assembles stats from precomputed moments, deriving the coefficient
    /// of variance.
    pub fn from_moments(
        region_id: RegionId,
        n: u64,
        average: f64,
        std_dev: f64,
        std_mode: StdMode,
    ) -> Self {
        Self {
            region_id,
            n,
            average,
            std_dev,
            coeff_var: coefficient_of_variation(average, std_dev),
            std_mode,
        }
    }
}

/// `100 * std_dev / average` in percent, or `None` at zero mean.
pub fn coefficient_of_variation(average: f64, std_dev: f64) -> Option<f64> {
    if average == 0.0 {
        None
    } else {
        Some(100.0 * std_dev / average)
    }
}

/// Computes the statistics over the whole image, or over the pixels of
/// one cluster when `mask` and `region` are given.
///
/// Sums and sums of squares are accumulated as exact integers and divided
/// once, so the result is independent of pixel traversal order.
pub fn compute_stats(
    image: &GrayImage,
    mask: Option<&LabelMap>,
    region: Option<u32>,
    std_mode: StdMode,
) -> Result<RegionStats> {
    if let Some(mask) = mask {
        if mask.width() != image.width() || mask.height() != image.height() {
            return Err(Error::MaskDimensions {
                mask_width: mask.width(),
                mask_height: mask.height(),
                image_width: image.width(),
                image_height: image.height(),
            });
        }
    }

    let (region_id, mut n, mut sum, mut sum_sq) = (
        region.map_or(RegionId::WholeImage, RegionId::Cluster),
        0u64,
        0u128,
        0u128,
    );

    match region {
        Some(index) => {
            let mask = mask.ok_or(Error::RegionRequiresMask)?;
            if index as usize >= mask.k() {
                return Err(Error::RegionIndexOutOfRange {
                    region: index,
                    k: mask.k(),
                });
            }
            for (&p, &label) in image.pixels().iter().zip(mask.labels()) {
                if label == index {
                    n += 1;
                    sum += u128::from(p);
                    sum_sq += u128::from(p) * u128::from(p);
                }
            }
            if n == 0 {
                return Err(Error::EmptyRegion { region: index });
            }
        }
        None => {
            n = image.len() as u64;
            for &p in image.pixels() {
                sum += u128::from(p);
                sum_sq += u128::from(p) * u128::from(p);
            }
        }
    }

    let average = sum as f64 / n as f64;
    // n*sum_sq - sum^2 is the exact integer n^2 * population variance.
    let spread = n as u128 * sum_sq - sum * sum;
    let variance = match std_mode {
        StdMode::Population => spread as f64 / (n as f64 * n as f64),
        StdMode::Sample => {
            if n < 2 {
                return Err(Error::SampleStdUndefined);
            }
            spread as f64 / (n as f64 * (n - 1) as f64)
        }
    };
    let std_dev = variance.sqrt();
    Ok(RegionStats::from_moments(
        region_id, n, average, std_dev, std_mode,
    ))
}

/// Which run a comparison favors (lower coefficient of variance).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Left,
    Right,
    Equal,
    /// At least one side has an undefined coefficient of variance.
    Incomparable,
}

/// One statistic compared across the two runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub statistic: String,
    pub left: Option<f64>,
    pub right: Option<f64>,
}

/// Side-by-side tabulation of two runs' statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub left_label: String,
    pub right_label: String,
    pub rows: Vec<ComparisonRow>,
    pub verdict: Verdict,
}

impl ComparisonReport {
    /// Label of the run the verdict names, when it names one.
    pub fn winner(&self) -> Option<&str> {
        match self.verdict {
            Verdict::Left => Some(&self.left_label),
            Verdict::Right => Some(&self.right_label),
            _ => None,
        }
    }
}

/// Tabulates two runs side by side and names the one with the lower
/// coefficient of variance.
pub fn compare_runs(
    a: &RegionStats,
    b: &RegionStats,
    left_label: impl Into<String>,
    right_label: impl Into<String>,
) -> ComparisonReport {
    let verdict = match (a.coeff_var, b.coeff_var) {
        (Some(l), Some(r)) => {
            if l < r {
                Verdict::Left
            } else if r < l {
                Verdict::Right
            } else {
                Verdict::Equal
            }
        }
        _ => Verdict::Incomparable,
    };
    ComparisonReport {
        left_label: left_label.into(),
        right_label: right_label.into(),
        rows: vec![
            ComparisonRow {
                statistic: "average".into(),
                left: Some(a.average),
                right: Some(b.average),
            },
            ComparisonRow {
                statistic: "std_dev".into(),
                left: Some(a.std_dev),
                right: Some(b.std_dev),
            },
            ComparisonRow {
                statistic: "coeff_var".into(),
                left: a.coeff_var,
                right: b.coeff_var,
            },
        ],
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn image(pixels: Vec<u16>) -> GrayImage {
        let n = pixels.len();
        GrayImage::new_8bit(n, 1, pixels).unwrap()
    }

    #[test]
    fn textbook_population_case() {
        let stats = compute_stats(
            &image(vec![2, 4, 4, 4, 5, 5, 7, 9]),
            None,
            None,
            StdMode::Population,
        )
        .unwrap();
        assert_eq!(stats.n, 8);
        assert_eq!(stats.average, 5.0);
        assert_eq!(stats.std_dev, 2.0);
        assert_eq!(stats.coeff_var, Some(40.0));
    }

    #[test]
    fn sample_mode_uses_bessel() {
        let stats =
            compute_stats(&image(vec![2, 4, 4, 4, 5, 5, 7, 9]), None, None, StdMode::Sample)
                .unwrap();
        assert!((stats.std_dev - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sample_mode_rejects_single_pixel() {
        assert!(matches!(
            compute_stats(&image(vec![9]), None, None, StdMode::Sample),
            Err(Error::SampleStdUndefined)
        ));
    }

    #[test]
    fn zero_mean_has_undefined_cv() {
        let stats = compute_stats(&image(vec![0, 0, 0]), None, None, StdMode::Population).unwrap();
        assert_eq!(stats.average, 0.0);
        assert_eq!(stats.coeff_var, None);
    }

    #[test]
    fn masked_region_selects_pixels() {
        let img = GrayImage::new_8bit(2, 2, vec![10, 10, 30, 30]).unwrap();
        let mask = LabelMap::new(2, 2, 2, vec![0, 0, 1, 1]).unwrap();
        let stats = compute_stats(&img, Some(&mask), Some(1), StdMode::Population).unwrap();
        assert_eq!(stats.n, 2);
        assert_eq!(stats.average, 30.0);
        assert_eq!(stats.std_dev, 0.0);
        assert_eq!(stats.region_id, RegionId::Cluster(1));
    }

    #[test]
    fn empty_region_is_an_error() {
        let img = GrayImage::new_8bit(2, 1, vec![10, 20]).unwrap();
        let mask = LabelMap::new(2, 1, 3, vec![0, 1]).unwrap();
        assert!(matches!(
            compute_stats(&img, Some(&mask), Some(2), StdMode::Population),
            Err(Error::EmptyRegion { region: 2 })
        ));
    }

    #[test]
    fn region_without_mask_is_an_error() {
        let img = image(vec![1, 2]);
        assert!(matches!(
            compute_stats(&img, None, Some(0), StdMode::Population),
            Err(Error::RegionRequiresMask)
        ));
    }

    #[test]
    fn mask_dimensions_must_match() {
        let img = GrayImage::new_8bit(2, 2, vec![1, 2, 3, 4]).unwrap();
        let mask = LabelMap::new(2, 1, 1, vec![0, 0]).unwrap();
        assert!(matches!(
            compute_stats(&img, Some(&mask), Some(0), StdMode::Population),
            Err(Error::MaskDimensions { .. })
        ));
    }

    #[test]
    fn paper_table_rows_reproduce_cv() {
        let left = coefficient_of_variation(86.0916, 92.0758).unwrap();
        assert!((left - 106.951).abs() < 0.01, "{left}");
        let right = coefficient_of_variation(79.2168, 65.3007).unwrap();
        assert!((right - 82.433).abs() < 0.001, "{right}");
    }

    #[test]
    fn verdict_names_lower_cv_side() {
        let a = RegionStats::from_moments(RegionId::WholeImage, 100, 86.0916, 92.0758, StdMode::Population);
        let b = RegionStats::from_moments(RegionId::WholeImage, 100, 79.2168, 65.3007, StdMode::Population);
        let report = compare_runs(&a, &b, "MATLAB", ".NET");
        assert_eq!(report.verdict, Verdict::Right);
        assert_eq!(report.winner(), Some(".NET"));
    }

    #[test]
    fn identical_stats_compare_equal() {
        let a = RegionStats::from_moments(RegionId::WholeImage, 10, 5.0, 1.0, StdMode::Population);
        let report = compare_runs(&a, &a.clone(), "a", "b");
        assert_eq!(report.verdict, Verdict::Equal);
        assert_eq!(report.winner(), None);
    }

    #[test]
    fn undefined_cv_is_incomparable() {
        let a = RegionStats::from_moments(RegionId::WholeImage, 10, 0.0, 0.0, StdMode::Population);
        let b = RegionStats::from_moments(RegionId::WholeImage, 10, 5.0, 1.0, StdMode::Population);
        assert_eq!(compare_runs(&a, &b, "a", "b").verdict, Verdict::Incomparable);
    }

    #[test]
    fn stats_json_schema() {
        let stats = RegionStats::from_moments(RegionId::Cluster(3), 7, 2.0, 1.0, StdMode::Sample);
        let json = serde_json::to_value(&stats).unwrap();
        assert_eq!(json["region_id"], 3);
        assert_eq!(json["n"], 7);
        assert_eq!(json["std_mode"], "sample");
        assert_eq!(json["coeff_var"], 50.0);

        let whole = RegionStats::from_moments(RegionId::WholeImage, 1, 0.0, 0.0, StdMode::Population);
        let json = serde_json::to_value(&whole).unwrap();
        assert_eq!(json["region_id"], "whole-image");
        assert!(json["coeff_var"].is_null());

        let back: RegionStats = serde_json::from_value(json).unwrap();
        assert_eq!(back.region_id, RegionId::WholeImage);
    }

    proptest! {
        // Adding a constant moves the mean and leaves the deviation alone;
        // scaling moves both proportionally and leaves the CV alone.
        #[test]
        fn shift_and_scale_behave(
            pixels in prop::collection::vec(1u16..=60, 2..64),
            offset in 1u16..=100,
            scale in 2u16..=4,
        ) {
            let base = compute_stats(&image(pixels.clone()), None, None, StdMode::Population).unwrap();

            let shifted: Vec<u16> = pixels.iter().map(|&p| p + offset).collect();
            let shifted = compute_stats(&image(shifted), None, None, StdMode::Population).unwrap();
            prop_assert!((shifted.average - (base.average + f64::from(offset))).abs() < 1e-9);
            prop_assert!((shifted.std_dev - base.std_dev).abs() < 1e-9);

            let scaled: Vec<u16> = pixels.iter().map(|&p| p * scale).collect();
            let scaled = compute_stats(&image(scaled), None, None, StdMode::Population).unwrap();
            prop_assert!((scaled.average - base.average * f64::from(scale)).abs() < 1e-9);
            prop_assert!((scaled.std_dev - base.std_dev * f64::from(scale)).abs() < 1e-9);
            let (a, b) = (scaled.coeff_var.unwrap(), base.coeff_var.unwrap());
            prop_assert!((a - b).abs() < 1e-9 * b.max(1.0));
        }

        // Whole-image mean is the count-weighted blend of per-region means.
        #[test]
        fn whole_image_mean_combines_regions(
            pixels in prop::collection::vec(0u16..=255, 4..64),
            labels_seed in any::<u64>(),
        ) {
            let n = pixels.len();
            let labels: Vec<u32> = (0..n).map(|i| ((labels_seed >> (i % 32)) & 1) as u32).collect();
            let img = image(pixels);
            let mask = LabelMap::new(n, 1, 2, labels.clone()).unwrap();
            let whole = compute_stats(&img, None, None, StdMode::Population).unwrap();

            let mut weighted = 0.0;
            for region in 0..2u32 {
                match compute_stats(&img, Some(&mask), Some(region), StdMode::Population) {
                    Ok(stats) => weighted += stats.average * stats.n as f64,
                    Err(Error::EmptyRegion { .. }) => {}
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
            }
            prop_assert!((weighted / n as f64 - whole.average).abs() < 1e-9);
        }
    }
}
