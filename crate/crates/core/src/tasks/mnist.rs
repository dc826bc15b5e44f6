//! IDX reader and column-scan sequencing for MNIST.

use flate2::read::GzDecoder;
use nalgebra::DMatrix;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

pub const IMAGE_MAGIC: u32 = 0x0000_0803;
pub const LABEL_MAGIC: u32 = 0x0000_0801;
pub const SIDE: usize = 28;
const PIXELS: usize = SIDE * SIDE;
const CLASSES: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct MnistData {
    /// Row-major 28×28 images in [0, 1], concatenated.
    pub pixels: Vec<f64>,
    pub labels: Vec<u8>,
}

impl MnistData {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn image(&self, i: usize) -> &[f64] {
        &self.pixels[i * PIXELS..(i + 1) * PIXELS]
    }

    /// Pixel at row `r`, column `c` of image `i`.
    pub fn pixel(&self, i: usize, r: usize, c: usize) -> f64 {
        self.image(i)[r * SIDE + c]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MnistSequence {
    /// 28 steps × 28 features; step `t` is image column `t`.
    pub inputs: DMatrix<f64>,
    /// 28 × 10, the one-hot label repeated at every step.
    pub targets: DMatrix<f64>,
    pub label: u8,
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    let raw = std::fs::read(path)?;
    if path.extension().is_some_and(|e| e == "gz") {
        let mut out = Vec::new();
        GzDecoder::new(raw.as_slice()).read_to_end(&mut out)?;
        Ok(out)
    } else {
        Ok(raw)
    }
}

fn be_u32(bytes: &[u8], at: usize, path: &Path) -> Result<u32> {
    bytes
        .get(at..at + 4)
        .map(|b| u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
        .ok_or_else(|| Error::TruncatedFile(path.to_path_buf()))
}

fn check_magic(bytes: &[u8], expected: u32, path: &Path) -> Result<()> {
    let found = be_u32(bytes, 0, path)?;
    if found != expected {
        return Err(Error::BadMagic {
            path: path.to_path_buf(),
            found,
            expected,
        });
    }
    Ok(())
}

/// Parses an image IDX payload; `path` only labels errors.
pub fn parse_idx_images(bytes: &[u8], path: &Path) -> Result<Vec<f64>> {
    check_magic(bytes, IMAGE_MAGIC, path)?;
    let count = be_u32(bytes, 4, path)? as usize;
    let rows = be_u32(bytes, 8, path)? as usize;
    let cols = be_u32(bytes, 12, path)? as usize;
    if rows != SIDE || cols != SIDE {
        return Err(Error::DimensionMismatch(format!(
            "{}: images are {rows}×{cols}, expected {SIDE}×{SIDE}",
            path.display()
        )));
    }
    let body = bytes
        .get(16..16 + count * PIXELS)
        .ok_or_else(|| Error::TruncatedFile(path.to_path_buf()))?;
    Ok(body.iter().map(|&b| f64::from(b) / 255.0).collect())
}

pub fn parse_idx_labels(bytes: &[u8], path: &Path) -> Result<Vec<u8>> {
    check_magic(bytes, LABEL_MAGIC, path)?;
    let count = be_u32(bytes, 4, path)? as usize;
    let body = bytes
        .get(8..8 + count)
        .ok_or_else(|| Error::TruncatedFile(path.to_path_buf()))?;
    if let Some(&bad) = body.iter().find(|&&l| l as usize >= CLASSES) {
        return Err(Error::DimensionMismatch(format!(
            "{}: label {bad} is not a digit",
            path.display()
        )));
    }
    Ok(body.to_vec())
}

/// Reads an image/label IDX pair; paths ending in `.gz` are decompressed.
pub fn load_mnist(images_path: &Path, labels_path: &Path) -> Result<MnistData> {
    let pixels = parse_idx_images(&read_bytes(images_path)?, images_path)?;
    let labels = parse_idx_labels(&read_bytes(labels_path)?, labels_path)?;
    let images = pixels.len() / PIXELS;
    if images != labels.len() {
        return Err(Error::CountMismatch {
            images,
            labels: labels.len(),
        });
    }
    Ok(MnistData { pixels, labels })
}

pub fn mnist_sequences(data: &MnistData, indices: &[usize]) -> Result<Vec<MnistSequence>> {
    indices
        .iter()
        .map(|&i| {
            if i >= data.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: data.len(),
                });
            }
            let label = data.labels[i];
            let inputs = DMatrix::from_fn(SIDE, SIDE, |t, r| data.pixel(i, r, t));
            let targets =
                DMatrix::from_fn(
                    SIDE,
                    CLASSES,
                    |_, c| if c == label as usize { 1.0 } else { 0.0 },
                );
            Ok(MnistSequence {
                inputs,
                targets,
                label,
            })
        })
        .collect()
}
