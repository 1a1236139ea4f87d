//! In-memory grayscale image.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rectangular grid of integer pixel intensities, stored row-major.
///
/// `depth` is the maximum representable intensity: 255 for 8-bit images,
/// 65535 for 16-bit images. Every pixel is validated against it on
/// construction, so downstream code can rely on `pixel <= depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrayImage {
    width: usize,
    height: usize,
    depth: u16,
    pixels: Vec<u16>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, depth: u16, pixels: Vec<u16>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyInput);
        }
        let expected = width * height;
        if pixels.len() != expected {
            return Err(Error::PixelCountMismatch {
                width,
                height,
                expected,
                got: pixels.len(),
            });
        }
        if let Some(&value) = pixels.iter().find(|&&p| p > depth) {
            return Err(Error::PixelAboveDepth {
                value: u32::from(value),
                depth,
            });
        }
        Ok(Self {
            width,
            height,
            depth,
            pixels,
        })
    }

    /// Builds an 8-bit image (depth 255).
    pub fn new_8bit(width: usize, height: usize, pixels: Vec<u16>) -> Result<Self> {
        Self::new(width, height, 255, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn depth(&self) -> u16 {
        self.depth
    }

    pub fn pixels(&self) -> &[u16] {
        &self.pixels
    }

    /// Pixel at column `x`, row `y`.
    pub fn pixel(&self, x: usize, y: usize) -> u16 {
        self.pixels[y * self.width + x]
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }
}
