//! Brute-force per-pixel Lloyd iteration.
//!
//! Reference implementation used to cross-check the histogram path: it
//! walks every pixel individually instead of the distinct levels, with the
//! same initialization and the same lowest-index tie-breaking. Centroid
//! updates accumulate exact integer sums per cluster before one division,
//! so the two routes must produce bit-identical centroids and identical
//! cluster membership.

use crate::error::{Error, Result};
use crate::kmeans::{init_centroids, nearest_centroid, CentroidSet, FlattenedIntensities};

/// Per-pixel Lloyd iteration from the standard initialization.
///
/// Returns the converged centroids and one cluster index per pixel, in
/// the order of `fi.values()`.
pub fn lloyd_oracle(
    fi: &FlattenedIntensities,
    k: usize,
    max_iters: usize,
) -> Result<(CentroidSet, Vec<u32>)> {
    let initial = init_centroids(k, fi.m())?;
    lloyd_oracle_from(fi, initial, max_iters)
}

/// Per-pixel Lloyd iteration from explicit initial centroids.
pub fn lloyd_oracle_from(
    fi: &FlattenedIntensities,
    initial: CentroidSet,
    max_iters: usize,
) -> Result<(CentroidSet, Vec<u32>)> {
    if max_iters == 0 {
        return Err(Error::ZeroIterations);
    }
    let k = initial.k();
    let mut centroids = initial;
    let mut previous: Option<Vec<u32>> = None;
    let mut iterations = 0;

    while iterations < max_iters {
        iterations += 1;
        let labels: Vec<u32> = fi
            .values()
            .iter()
            .map(|&v| nearest_centroid(v, &centroids))
            .collect();
        if previous.as_ref() == Some(&labels) {
            previous = Some(labels);
            break;
        }

        let mut sums = vec![0u64; k];
        let mut counts = vec![0u64; k];
        for (&v, &label) in fi.values().iter().zip(&labels) {
            sums[label as usize] += u64::from(v);
            counts[label as usize] += 1;
        }
        let values: Vec<f64> = (0..k)
            .map(|i| {
                if counts[i] == 0 {
                    centroids.values()[i]
                } else {
                    sums[i] as f64 / counts[i] as f64
                }
            })
            .collect();
        centroids = CentroidSet::new(values)?;
        previous = Some(labels);
    }

    let labels = previous.expect("at least one pass ran");
    Ok((centroids, labels))
}
