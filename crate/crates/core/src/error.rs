//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An operation received an image or dataset with no pixels.
    #[error("empty input")]
    EmptyInput,

    #[error("k must be positive")]
    ZeroClusters,

    #[error("max_iters must be positive")]
    ZeroIterations,

    #[error("pixel buffer holds {got} values but {width}x{height} requires {expected}")]
    PixelCountMismatch {
        width: usize,
        height: usize,
        expected: usize,
        got: usize,
    },

    #[error("pixel value {value} exceeds depth {depth}")]
    PixelAboveDepth { value: u32, depth: u16 },

    #[error("centroid values must be finite")]
    NonFiniteCentroid,

    /// A pixel shifted below the valid intensity floor of 1; the shift does
    /// not belong to this image.
    #[error("shift mismatch: pixel {pixel} with shift {shift} maps below 1")]
    ShiftMismatch { pixel: u16, shift: i32 },

    #[error("intensity level 0 is outside the shifted domain; levels start at 1")]
    LevelZero,

    #[error("text dataset is 8-bit only (image depth is {depth})")]
    TextDepth { depth: u16 },

    #[error("line {line}, column {column}: invalid token {token:?}, expected an integer in 0..=255")]
    InvalidToken {
        line: usize,
        column: usize,
        token: String,
    },

    #[error("line {line}, column {column}: value {value} out of range 0..=255")]
    ValueOutOfRange {
        line: usize,
        column: usize,
        value: i64,
    },

    #[error("non-rectangular dataset; cannot form bitmap (line {line} has {found} values, expected {expected})")]
    JaggedRows {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),

    #[error("malformed image file: {0}")]
    MalformedImage(String),

    #[error("region {x},{y} {width}x{height} does not fit a {image_width}x{image_height} image")]
    RegionOutOfBounds {
        x: usize,
        y: usize,
        width: usize,
        height: usize,
        image_width: usize,
        image_height: usize,
    },

    #[error("label {label} is not below the cluster count {k}")]
    LabelOutOfRange { label: u32, k: usize },

    #[error("region {region} is not below the cluster count {k}")]
    RegionIndexOutOfRange { region: u32, k: usize },

    #[error("a region index requires a mask")]
    RegionRequiresMask,

    #[error("region {region} selects no pixels")]
    EmptyRegion { region: u32 },

    #[error("mask is {mask_width}x{mask_height} but the image is {image_width}x{image_height}")]
    MaskDimensions {
        mask_width: usize,
        mask_height: usize,
        image_width: usize,
        image_height: usize,
    },

    #[error("sample std undefined for n=1")]
    SampleStdUndefined,

    #[error("unknown chart format {0:?}, expected \"csv\" or \"svg\"")]
    UnknownChartFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
