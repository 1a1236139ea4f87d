//! Byte-stream datasets: image ↔ text ↔ CSV.
//!
//! The ingestion path mirrors a two-stage flow: an image is serialized as
//! a plain text file of space-separated byte values (one line per row),
//! the text file is converted to CSV, and the CSV is read back into a
//! pixel matrix. Rows may be jagged in the intermediate formats; only
//! image reconstruction demands rectangular data, and rejects anything
//! else with a positioned error rather than guessing padding.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Rows of byte values parsed from a text or CSV dataset.
///
/// Rows are independently sized. `declared_width` is set when the dataset
/// came from an image and pins the row length reconstruction will demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelDataset {
    rows: Vec<Vec<u8>>,
    declared_width: Option<usize>,
}

impl PixelDataset {
    /// Captures an 8-bit image as one row of values per image row.
    pub fn from_image(image: &GrayImage) -> Result<Self> {
        if image.depth() > 255 {
            return Err(Error::TextDepth {
                depth: image.depth(),
            });
        }
        let rows = image
            .pixels()
            .chunks(image.width())
            .map(|row| row.iter().map(|&p| p as u8).collect())
            .collect();
        Ok(Self {
            rows,
            declared_width: Some(image.width()),
        })
    }

    /// Parses a space-separated text dataset.
    pub fn parse_text(bytes: &[u8]) -> Result<Self> {
        Self::parse(bytes, Delimiter::Whitespace)
    }

    /// Parses a comma-separated dataset (no header row, integers only).
    pub fn parse_csv(bytes: &[u8]) -> Result<Self> {
        Self::parse(bytes, Delimiter::Comma)
    }

    fn parse(bytes: &[u8], delimiter: Delimiter) -> Result<Self> {
        let text = std::str::from_utf8(bytes)
            .map_err(|_| Error::MalformedImage("dataset is not valid UTF-8".into()))?;
        let mut rows = Vec::new();
        for (line_idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = match delimiter {
                Delimiter::Whitespace => line.split_whitespace().collect(),
                Delimiter::Comma => line.split(',').map(str::trim).collect(),
            };
            let mut row = Vec::with_capacity(tokens.len());
            for (col_idx, token) in tokens.iter().enumerate() {
                let value: i64 = token.parse().map_err(|_| Error::InvalidToken {
                    line: line_idx + 1,
                    column: col_idx + 1,
                    token: (*token).to_string(),
                })?;
                if !(0..=255).contains(&value) {
                    return Err(Error::ValueOutOfRange {
                        line: line_idx + 1,
                        column: col_idx + 1,
                        value,
                    });
                }
                row.push(value as u8);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Self {
            rows,
            declared_width: None,
        })
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// The common row length, if every row has one.
    pub fn rectangular_width(&self) -> Option<usize> {
        let width = self.declared_width.unwrap_or(self.rows[0].len());
        self.rows
            .iter()
            .all(|r| r.len() == width)
            .then_some(width)
    }

    /// Serializes rows as space-separated decimal values, LF-terminated.
    pub fn to_text_bytes(&self) -> Vec<u8> {
        self.encode(' ')
    }

    /// Serializes rows as comma-separated decimal values, LF-terminated.
    pub fn to_csv_bytes(&self) -> Vec<u8> {
        self.encode(',')
    }

    fn encode(&self, separator: char) -> Vec<u8> {
        let mut out = String::new();
        for row in &self.rows {
            let mut first = true;
            for value in row {
                if !first {
                    out.push(separator);
                }
                out.push_str(&value.to_string());
                first = false;
            }
            out.push('\n');
        }
        out.into_bytes()
    }

    /// Reassembles the rows into a bitmap. Fails on the first row whose
    /// length differs from the expected width.
    pub fn to_image(&self) -> Result<GrayImage> {
        let expected = self.declared_width.unwrap_or(self.rows[0].len());
        for (idx, row) in self.rows.iter().enumerate() {
            if row.len() != expected {
                return Err(Error::JaggedRows {
                    line: idx + 1,
                    expected,
                    found: row.len(),
                });
            }
        }
        let pixels = self
            .rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| u16::from(v)))
            .collect();
        GrayImage::new_8bit(expected, self.rows.len(), pixels)
    }
}

enum Delimiter {
    Whitespace,
    Comma,
}

/// Serializes an 8-bit image as the space-separated text dataset.
pub fn image_to_text(image: &GrayImage) -> Result<Vec<u8>> {
    Ok(PixelDataset::from_image(image)?.to_text_bytes())
}

/// Converts a text dataset to CSV, validating every token along the way.
/// Jagged rows pass through unchanged.
pub fn text_to_csv(text: &[u8]) -> Result<Vec<u8>> {
    Ok(PixelDataset::parse_text(text)?.to_csv_bytes())
}

/// Reads a CSV dataset back into an image.
pub fn csv_to_image(csv: &[u8]) -> Result<GrayImage> {
    PixelDataset::parse_csv(csv)?.to_image()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn image_to_text_rows_and_spaces() {
        let img = GrayImage::new_8bit(2, 2, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(image_to_text(&img).unwrap(), b"1 2\n3 4\n");
    }

    #[test]
    fn image_to_text_single_pixel() {
        let img = GrayImage::new_8bit(1, 1, vec![0]).unwrap();
        assert_eq!(image_to_text(&img).unwrap(), b"0\n");
    }

    #[test]
    fn image_to_text_rejects_16bit() {
        let img = GrayImage::new(1, 1, 65535, vec![300]).unwrap();
        assert!(matches!(
            image_to_text(&img),
            Err(Error::TextDepth { depth: 65535 })
        ));
    }

    #[test]
    fn text_to_csv_swaps_delimiter() {
        assert_eq!(text_to_csv(b"1 2\n3 4\n").unwrap(), b"1,2\n3,4\n");
    }

    #[test]
    fn text_to_csv_single_value() {
        assert_eq!(text_to_csv(b"255\n").unwrap(), b"255\n");
    }

    #[test]
    fn text_to_csv_range_error_is_positioned() {
        assert!(matches!(
            text_to_csv(b"1 999\n"),
            Err(Error::ValueOutOfRange { line: 1, column: 2, value: 999 })
        ));
    }

    #[test]
    fn text_invalid_token_is_positioned() {
        let err = PixelDataset::parse_text(b"1 2\n3 x\n").unwrap_err();
        assert!(matches!(err, Error::InvalidToken { line: 2, column: 2, .. }));
    }

    #[test]
    fn csv_to_image_rectangular() {
        let img = csv_to_image(b"1,2\n3,4\n").unwrap();
        assert_eq!(img.width(), 2);
        assert_eq!(img.height(), 2);
        assert_eq!(img.pixels(), &[1, 2, 3, 4]);
    }

    #[test]
    fn csv_to_image_single_value() {
        let img = csv_to_image(b"7\n").unwrap();
        assert_eq!((img.width(), img.height()), (1, 1));
        assert_eq!(img.pixels(), &[7]);
    }

    #[test]
    fn csv_to_image_names_jagged_line() {
        assert!(matches!(
            csv_to_image(b"1,2\n3\n"),
            Err(Error::JaggedRows { line: 2, expected: 2, found: 1 })
        ));
    }

    #[test]
    fn empty_dataset_is_an_error() {
        assert!(matches!(csv_to_image(b""), Err(Error::EmptyInput)));
        assert!(matches!(
            PixelDataset::parse_text(b"\n\n"),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn jagged_text_survives_csv_conversion() {
        // Jaggedness is only rejected at image-reconstruction time.
        let csv = text_to_csv(b"1 2 3\n4\n").unwrap();
        assert_eq!(csv, b"1,2,3\n4\n");
    }

    proptest! {
        #[test]
        fn round_trip_is_identity(
            (width, height, pixels) in (1usize..=24, 1usize..=24).prop_flat_map(|(w, h)| {
                (Just(w), Just(h), prop::collection::vec(0u16..=255, w * h))
            }),
        ) {
            let img = GrayImage::new_8bit(width, height, pixels).unwrap();
            let text = image_to_text(&img).unwrap();
            let csv = text_to_csv(&text).unwrap();
            let back = csv_to_image(&csv).unwrap();
            prop_assert_eq!(back, img);
        }
    }
}
