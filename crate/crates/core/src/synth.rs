//! Deterministic synthetic test images: flat rectangles on a black
//! background, with optional seeded uniform noise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::image::GrayImage;

const DEPTH: u16 = 255;

/// A filled rectangle at a fixed intensity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Region {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
    pub intensity: u16,
}

/// Builds an 8-bit image: background 0, each region filled in order (a
/// later region overwrites earlier ones where they overlap), then uniform
/// integer noise in `-noise_amplitude..=noise_amplitude` drawn from a
/// ChaCha stream seeded with `seed` and clamped to `0..=255`.
pub fn make_synthetic(
    width: usize,
    height: usize,
    regions: &[Region],
    noise_amplitude: u16,
    seed: u64,
) -> Result<GrayImage> {
    if width == 0 || height == 0 {
        return Err(Error::EmptyInput);
    }
    let mut pixels = vec![0u16; width * height];
    for region in regions {
        if region.x + region.width > width || region.y + region.height > height {
            return Err(Error::RegionOutOfBounds {
                x: region.x,
                y: region.y,
                width: region.width,
                height: region.height,
                image_width: width,
                image_height: height,
            });
        }
        if region.intensity > DEPTH {
            return Err(Error::PixelAboveDepth {
                value: u32::from(region.intensity),
                depth: DEPTH,
            });
        }
        for row in region.y..region.y + region.height {
            let start = row * width + region.x;
            pixels[start..start + region.width].fill(region.intensity);
        }
    }
    if noise_amplitude > 0 {
        let amplitude = i32::from(noise_amplitude);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for p in &mut pixels {
            let noisy = i32::from(*p) + rng.gen_range(-amplitude..=amplitude);
            *p = noisy.clamp(0, i32::from(DEPTH)) as u16;
        }
    }
    GrayImage::new(width, height, DEPTH, pixels)
}
