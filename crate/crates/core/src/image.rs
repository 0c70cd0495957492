//! Binary images and the file formats they are read from.

use std::path::Path;

use crate::error::{Error, Result};

/// A binary pixel grid whose outermost ring is background.
///
/// Every constructor pads the input with one ring of background pixels, so
/// the invariant holds for any value of this type. Pixel `(i, j)` uses
/// 1-based indices, matching its position in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryImage {
    rows: usize,
    cols: usize,
    pixels: Vec<bool>,
}

impl BinaryImage {
    /// Pads a row-major grid of `rows × cols` values.
    pub fn from_grid(rows: usize, cols: usize, pixels: &[bool]) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("empty {rows}×{cols} grid")));
        }
        if pixels.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} pixels for a {rows}×{cols} grid", pixels.len())));
        }
        let (prows, pcols) = (rows + 2, cols + 2);
        let mut padded = vec![false; prows * pcols];
        for r in 0..rows {
            let dst = (r + 1) * pcols + 1;
            padded[dst..dst + cols].copy_from_slice(&pixels[r * cols..(r + 1) * cols]);
        }
        Ok(Self { rows: prows, cols: pcols, pixels: padded })
    }

    /// Pads a list of equal-length rows.
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(bad) = rows.iter().position(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} pixels, expected {cols}",
                bad + 1,
                rows[bad].as_ref().len()
            )));
        }
        let flat: Vec<bool> = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::from_grid(rows.len(), cols, &flat)
    }

    /// Parses a text grid such as `"010\n111"`; see [`load_image`].
    pub fn parse_text(text: &str) -> Result<Self> {
        load_image(text.as_bytes(), ImageFormat::TextGrid)
    }

    /// Adds one more background ring; every pixel moves by `(+1, +1)`.
    pub fn padded(&self) -> Self {
        Self::from_grid(self.rows, self.cols, &self.pixels).expect("non-empty grid")
    }

    /// Rows, including the padding ring.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Columns, including the padding ring.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Foreground test with 1-based indices; anything outside the grid is
    /// background.
    pub fn get(&self, i: usize, j: usize) -> bool {
        if i == 0 || j == 0 || i > self.rows || j > self.cols {
            return false;
        }
        self.pixels[(i - 1) * self.cols + (j - 1)]
    }

    pub fn foreground_count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    /// Rotates the image a quarter turn: pixel `(i, j)` moves to
    /// `(j, rows + 1 − i)`.
    pub fn rotated_quarter(&self) -> Self {
        let (rows, cols) = (self.rows, self.cols);
        let mut out = vec![false; rows * cols];
        for i in 1..=rows {
            for j in 1..=cols {
                let (ni, nj) = (j, rows + 1 - i);
                out[(ni - 1) * rows + (nj - 1)] = self.get(i, j);
            }
        }
        Self { rows: cols, cols: rows, pixels: out }
    }

    /// Renders the grid (including padding) as a text grid.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity((self.cols + 1) * self.rows);
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

/// Supported input encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageFormat {
    /// Netpbm `P1`.
    PbmAscii,
    /// Netpbm `P4`.
    PbmBinary,
    Png,
    /// One row per line of `0`/`1` characters.
    TextGrid,
}

impl ImageFormat {
    /// Guesses the format from the leading bytes, falling back to the file
    /// extension.
    pub fn detect(path: &Path, bytes: &[u8]) -> Option<Self> {
        if bytes.starts_with(b"\x89PNG") {
            return Some(Self::Png);
        }
        if bytes.starts_with(b"P1") {
            return Some(Self::PbmAscii);
        }
        if bytes.starts_with(b"P4") {
            return Some(Self::PbmBinary);
        }
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("png") => Some(Self::Png),
            Some("txt") => Some(Self::TextGrid),
            Some("pbm") => Some(Self::PbmAscii),
            _ if bytes.iter().all(|b| matches!(b, b'0' | b'1' | b'\n' | b'\r' | b' ' | b'\t')) => Some(Self::TextGrid),
            _ => None,
        }
    }
}

/// Decodes `bytes` and pads the result with one background ring.
///
/// PNG input is converted to 8-bit luma and thresholded at 128: darker
/// pixels are foreground. In PBM, `1` (black) is foreground.
pub fn load_image(bytes: &[u8], format: ImageFormat) -> Result<BinaryImage> {
    match format {
        ImageFormat::PbmAscii => parse_p1(bytes),
        ImageFormat::PbmBinary => parse_p4(bytes),
        ImageFormat::Png => decode_png(bytes),
        ImageFormat::TextGrid => parse_text_grid(bytes),
    }
}

/// Reads a file, detecting the format unless one is given.
pub fn load_path(path: &Path, format: Option<ImageFormat>) -> Result<BinaryImage> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io { path: path.to_owned(), source })?;
    let format = match format {
        Some(ImageFormat::PbmAscii | ImageFormat::PbmBinary) if bytes.starts_with(b"P4") => ImageFormat::PbmBinary,
        Some(f) => f,
        None => ImageFormat::detect(path, &bytes).ok_or_else(|| Error::UnknownFormat(path.to_owned()))?,
    };
    load_image(&bytes, format)
}

fn parse_text_grid(bytes: &[u8]) -> Result<BinaryImage> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::MalformedHeader { format: "text grid", reason: e.to_string() })?;
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let mut row = Vec::new();
        for ch in line.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                other => {
                    return Err(Error::MalformedHeader {
                        format: "text grid",
                        reason: format!("unexpected character {other:?} on line {}", n + 1),
                    })
                }
            }
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(Error::MalformedHeader { format: "text grid", reason: "no rows".into() });
    }
    BinaryImage::from_rows(&rows)
}

/// Splits the netpbm header into tokens, skipping `#` comments. Returns the
/// tokens and the offset just past the last one.
fn header_tokens(bytes: &[u8], count: usize) -> Result<(Vec<String>, usize)> {
    let mut tokens = Vec::with_capacity(count);
    let mut pos = 0;
    while tokens.len() < count {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
            continue;
        }
        if pos >= bytes.len() {
            return Err(Error::MalformedHeader { format: "PBM", reason: "truncated header".into() });
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() && bytes[pos] != b'#' {
            pos += 1;
        }
        tokens.push(String::from_utf8_lossy(&bytes[start..pos]).into_owned());
    }
    Ok((tokens, pos))
}

fn pbm_header(bytes: &[u8], magic: &str) -> Result<(usize, usize, usize)> {
    let (tokens, end) = header_tokens(bytes, 3)?;
    if tokens[0] != magic {
        if matches!(tokens[0].as_str(), "P2" | "P3" | "P5" | "P6") {
            return Err(Error::UnsupportedBitDepth(format!("netpbm {} stores more than one bit per pixel", tokens[0])));
        }
        return Err(Error::MalformedHeader { format: "PBM", reason: format!("bad magic {:?}", tokens[0]) });
    }
    let dim = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::MalformedHeader { format: "PBM", reason: format!("bad dimension {s:?}") })
    };
    Ok((dim(&tokens[1])?, dim(&tokens[2])?, end))
}

fn parse_p1(bytes: &[u8]) -> Result<BinaryImage> {
    let (width, height, end) = pbm_header(bytes, "P1")?;
    let mut pixels = Vec::with_capacity(width * height);
    let mut in_comment = false;
    for &b in &bytes[end..] {
        match b {
            b'\n' => in_comment = false,
            _ if in_comment => {}
            b'#' => in_comment = true,
            b'0' | b'1' => pixels.push(b == b'1'),
            b if b.is_ascii_whitespace() => {}
            other => {
                return Err(Error::MalformedHeader {
                    format: "PBM",
                    reason: format!("unexpected byte {:?} in raster", other as char),
                })
            }
        }
    }
    if pixels.len() != width * height {
        return Err(Error::DimensionMismatch(format!(
            "header declares {width}×{height} but raster has {} pixels",
            pixels.len()
        )));
    }
    BinaryImage::from_grid(height, width, &pixels)
}

fn parse_p4(bytes: &[u8]) -> Result<BinaryImage> {
    let (width, height, end) = pbm_header(bytes, "P4")?;
    // Exactly one whitespace byte separates the header from the raster.
    let raster = bytes.get(end + 1..).unwrap_or_default();
    let stride = width.div_ceil(8);
    if raster.len() < stride * height {
        return Err(Error::DimensionMismatch(format!(
            "header declares {width}×{height} but raster has {} bytes, expected {}",
            raster.len(),
            stride * height
        )));
    }
    let mut pixels = Vec::with_capacity(width * height);
    for r in 0..height {
        let row = &raster[r * stride..(r + 1) * stride];
        for c in 0..width {
            pixels.push(row[c / 8] & (0x80 >> (c % 8)) != 0);
        }
    }
    BinaryImage::from_grid(height, width, &pixels)
}

fn decode_png(bytes: &[u8]) -> Result<BinaryImage> {
    let decoded = image::load_from_memory_with_format(bytes, image::ImageFormat::Png).map_err(|e| match e {
        image::ImageError::Unsupported(u) => Error::UnsupportedBitDepth(u.to_string()),
        other => Error::Decode(other.to_string()),
    })?;
    let luma = decoded.to_luma8();
    let (width, height) = luma.dimensions();
    let pixels: Vec<bool> = luma.pixels().map(|p| p.0[0] < 128).collect();
    BinaryImage::from_grid(height as usize, width as usize, &pixels)
}
