//! Image file I/O: PGM (P2 ASCII, P5 binary) and grayscale PNG.
//!
//! PGM is parsed and encoded by hand so the byte layout is fully pinned;
//! PNG goes through the `image` crate and accepts only 8- and 16-bit
//! single-channel files.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Sample encoding for PGM output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmEncoding {
    /// P2, decimal samples in lines of at most 70 characters.
    Ascii,
    /// P5, raw samples (two bytes big-endian above maxval 255).
    Binary,
}

/// Reads a grayscale image, picking the decoder from the file extension
/// (`.pgm`/`.pnm` or `.png`).
pub fn read_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    match extension_of(path)?.as_str() {
        "pgm" | "pnm" => parse_pgm(&fs::read(path)?),
        "png" => read_png(path),
        ext => Err(Error::UnsupportedFormat(format!(
            "unknown extension {ext:?} for {}",
            path.display()
        ))),
    }
}

/// Writes a grayscale image, picking the encoder from the file extension.
/// PGM output uses the binary (P5) encoding.
pub fn write_image(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    match extension_of(path)?.as_str() {
        "pgm" | "pnm" => {
            fs::write(path, encode_pgm(image, PgmEncoding::Binary))?;
            Ok(())
        }
        "png" => write_png(image, path),
        ext => Err(Error::UnsupportedFormat(format!(
            "unknown extension {ext:?} for {}",
            path.display()
        ))),
    }
}

fn extension_of(path: &Path) -> Result<String> {
    path.extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .ok_or_else(|| {
            Error::UnsupportedFormat(format!("{} has no file extension", path.display()))
        })
}

/// Decodes a PGM file (P2 or P5).
pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut cursor = Cursor { bytes, pos: 0 };
    let magic = cursor.take(2)?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        _ => {
            return Err(Error::MalformedImage(
                "missing PGM magic number (expected P2 or P5)".into(),
            ))
        }
    };
    let width = cursor.read_header_number("width")? as usize;
    let height = cursor.read_header_number("height")? as usize;
    let maxval = cursor.read_header_number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::MalformedImage(format!(
            "maxval {maxval} outside 1..=65535"
        )));
    }
    if width == 0 || height == 0 {
        return Err(Error::EmptyInput);
    }
    let depth: u16 = if maxval <= 255 { 255 } else { 65535 };
    let count = width * height;

    let mut pixels = Vec::with_capacity(count);
    if binary {
        // Exactly one whitespace byte separates the header from the raster.
        cursor.expect_single_whitespace()?;
        let sample_bytes = if maxval <= 255 { 1 } else { 2 };
        for _ in 0..count {
            let raw = cursor.take(sample_bytes).map_err(|_| {
                Error::MalformedImage("truncated pixel data".into())
            })?;
            let value = if sample_bytes == 1 {
                u16::from(raw[0])
            } else {
                u16::from(raw[0]) << 8 | u16::from(raw[1])
            };
            if u32::from(value) > maxval {
                return Err(Error::MalformedImage(format!(
                    "sample {value} exceeds maxval {maxval}"
                )));
            }
            pixels.push(value);
        }
    } else {
        for _ in 0..count {
            let value = cursor
                .read_header_number("sample")
                .map_err(|_| Error::MalformedImage("truncated pixel data".into()))?;
            if value > maxval {
                return Err(Error::MalformedImage(format!(
                    "sample {value} exceeds maxval {maxval}"
                )));
            }
            pixels.push(value as u16);
        }
    }
    GrayImage::new(width, height, depth, pixels)
}

/// Encodes an image as PGM with maxval equal to the image depth.
pub fn encode_pgm(image: &GrayImage, encoding: PgmEncoding) -> Vec<u8> {
    let mut out = Vec::new();
    let magic = match encoding {
        PgmEncoding::Ascii => "P2",
        PgmEncoding::Binary => "P5",
    };
    out.extend_from_slice(
        format!(
            "{magic}\n{} {}\n{}\n",
            image.width(),
            image.height(),
            image.depth()
        )
        .as_bytes(),
    );
    match encoding {
        PgmEncoding::Binary => {
            if image.depth() <= 255 {
                out.extend(image.pixels().iter().map(|&p| p as u8));
            } else {
                for &p in image.pixels() {
                    out.extend_from_slice(&p.to_be_bytes());
                }
            }
        }
        PgmEncoding::Ascii => {
            // Netpbm caps text lines at 70 characters.
            let per_line = if image.depth() <= 255 { 17 } else { 10 };
            for chunk in image.pixels().chunks(per_line) {
                let line: Vec<String> = chunk.iter().map(u16::to_string).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
    }
    out
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(Error::MalformedImage("unexpected end of file".into()));
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn read_header_number(&mut self, what: &str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::MalformedImage(format!("missing {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedImage(format!("invalid {what}")))
    }

    fn expect_single_whitespace(&mut self) -> Result<()> {
        match self.bytes.get(self.pos) {
            Some(b' ' | b'\t' | b'\r' | b'\n') => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(Error::MalformedImage(
                "expected whitespace after maxval".into(),
            )),
        }
    }
}

fn read_png(path: &Path) -> Result<GrayImage> {
    let dynamic = ::image::open(path)
        .map_err(|e| Error::MalformedImage(format!("PNG decode failed: {e}")))?;
    match dynamic {
        ::image::DynamicImage::ImageLuma8(buf) => {
            let (w, h) = buf.dimensions();
            let pixels = buf.into_raw().into_iter().map(u16::from).collect();
            GrayImage::new(w as usize, h as usize, 255, pixels)
        }
        ::image::DynamicImage::ImageLuma16(buf) => {
            let (w, h) = buf.dimensions();
            GrayImage::new(w as usize, h as usize, 65535, buf.into_raw())
        }
        _ => Err(Error::UnsupportedFormat(
            "PNG must be 8- or 16-bit grayscale".into(),
        )),
    }
}

fn write_png(image: &GrayImage, path: &Path) -> Result<()> {
    let w = image.width() as u32;
    let h = image.height() as u32;
    let result = if image.depth() <= 255 {
        let raw: Vec<u8> = image.pixels().iter().map(|&p| p as u8).collect();
        ::image::GrayImage::from_raw(w, h, raw)
            .expect("buffer length matches dimensions")
            .save(path)
    } else {
        ::image::ImageBuffer::<::image::Luma<u16>, _>::from_raw(w, h, image.pixels().to_vec())
            .expect("buffer length matches dimensions")
            .save(path)
    };
    result.map_err(|e| Error::MalformedImage(format!("PNG encode failed: {e}")))
}
