//! Grayscale pixel grid, binary edge masks and 2x2 window statistics.
//!
//! Coordinates are always `(row, col)`, with row 0 at the top. Storage is
//! row-major.

use std::fmt;

use crate::error::{Error, Result};

/// An 8-bit grayscale image.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl GrayImage {
    /// Wraps row-major pixel data. Both dimensions must be at least 1 and
    /// `data.len()` must equal `width * height`.
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::argument(format!(
                "image dimensions must be positive, got {width}x{height}"
            )));
        }
        let expected = width
            .checked_mul(height)
            .ok_or_else(|| Error::argument("image dimensions overflow"))?;
        if data.len() != expected {
            return Err(Error::argument(format!(
                "expected {expected} pixels for {width}x{height}, got {}",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width.saturating_mul(height)])
    }

    /// Builds an image by evaluating `f(row, col)` in row-major order.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width.saturating_mul(height));
        for r in 0..height {
            for c in 0..width {
                data.push(f(r, c));
            }
        }
        Self::new(width, height, data)
    }

    /// Builds an image from equal-length rows.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != width) {
            return Err(Error::argument("rows have differing lengths"));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        Self::new(width, height, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.data
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.data
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.data[row * self.width..(row + 1) * self.width]
    }

    /// Checked pixel access.
    pub fn get(&self, row: usize, col: usize) -> Result<u8> {
        if row >= self.height || col >= self.width {
            return Err(Error::OutOfBounds {
                row,
                col,
                width: self.width,
                height: self.height,
            });
        }
        Ok(self.data[row * self.width + col])
    }

    /// Unchecked-by-contract access; panics on out-of-bounds like slice indexing.
    #[inline]
    pub fn at(&self, row: usize, col: usize) -> u8 {
        assert!(row < self.height && col < self.width);
        self.data[row * self.width + col]
    }

    /// Pixel access with clamp-to-edge replication outside the grid.
    #[inline]
    pub fn clamped(&self, row: isize, col: isize) -> u8 {
        let r = row.clamp(0, self.height as isize - 1) as usize;
        let c = col.clamp(0, self.width as isize - 1) as usize;
        self.data[r * self.width + c]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        assert!(row < self.height && col < self.width);
        self.data[row * self.width + col] = value;
    }

    pub fn min_max(&self) -> (u8, u8) {
        let min = self.data.iter().copied().min().unwrap_or(0);
        let max = self.data.iter().copied().max().unwrap_or(0);
        (min, max)
    }

    /// Every 2x2 window, stride 1, row-major by origin.
    pub fn windows(&self) -> Windows<'_> {
        Windows {
            img: self,
            row: 0,
            col: 0,
        }
    }

    /// Number of windows yielded by [`GrayImage::windows`].
    pub fn window_count(&self) -> usize {
        self.height.saturating_sub(1) * self.width.saturating_sub(1)
    }
}

impl fmt::Debug for GrayImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GrayImage {}x{} [", self.width, self.height)?;
        for r in 0..self.height {
            write!(f, "  ")?;
            for v in self.row(r) {
                write!(f, "{v:4}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A 2x2 block of pixels. `row`/`col` locate the upper-left pixel, which is
/// the candidate edge pixel for the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window2x2 {
    pub row: usize,
    pub col: usize,
    /// `[upper-left, upper-right, lower-left, lower-right]`
    pub values: [u8; 4],
}

impl Window2x2 {
    pub fn upper_left(&self) -> u8 {
        self.values[0]
    }

    pub fn stddev(&self) -> f64 {
        sample_stddev(self.values)
    }
}

pub struct Windows<'a> {
    img: &'a GrayImage,
    row: usize,
    col: usize,
}

impl Iterator for Windows<'_> {
    type Item = Window2x2;

    fn next(&mut self) -> Option<Window2x2> {
        let (w, h) = (self.img.width, self.img.height);
        if w < 2 || self.row + 1 >= h {
            return None;
        }
        let (r, c) = (self.row, self.col);
        let top = r * w + c;
        let bottom = top + w;
        let d = &self.img.data;
        let win = Window2x2 {
            row: r,
            col: c,
            values: [d[top], d[top + 1], d[bottom], d[bottom + 1]],
        };
        self.col += 1;
        if self.col + 1 >= w {
            self.col = 0;
            self.row += 1;
        }
        Some(win)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let (w, h) = (self.img.width, self.img.height);
        let n = if w < 2 || self.row + 1 >= h {
            0
        } else {
            (h - 1 - self.row) * (w - 1) - self.col
        };
        (n, Some(n))
    }
}

impl ExactSizeIterator for Windows<'_> {}

/// Sample standard deviation (divisor n-1 = 3) of four intensities.
///
/// Evaluated from exact integer moments, so the result depends only on the
/// multiset of deviations from the mean: it is bit-identical under any
/// permutation or constant shift of the inputs.
pub fn sample_stddev(values: [u8; 4]) -> f64 {
    let sum: u32 = values.iter().map(|&v| u32::from(v)).sum();
    let sum_sq: u32 = values.iter().map(|&v| u32::from(v) * u32::from(v)).sum();
    // 4 * sum((v - mean)^2) = 4 * sum_sq - sum^2
    let scaled = 4 * sum_sq - sum * sum;
    (f64::from(scaled) / 12.0).sqrt()
}

/// Binary edge mask, row-major; `true` marks an edge pixel.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeMap {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl EdgeMap {
    pub fn empty(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            mask: vec![false; width * height],
        }
    }

    pub fn new(width: usize, height: usize, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != width * height {
            return Err(Error::argument(format!(
                "expected {} mask entries for {width}x{height}, got {}",
                width * height,
                mask.len()
            )));
        }
        Ok(Self {
            width,
            height,
            mask,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut mask = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                mask.push(f(r, c));
            }
        }
        Self {
            width,
            height,
            mask,
        }
    }

    /// Reads a mask back from an image: any nonzero pixel is an edge.
    pub fn from_image(img: &GrayImage) -> Self {
        Self {
            width: img.width(),
            height: img.height(),
            mask: img.pixels().iter().map(|&v| v != 0).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.mask
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.height && col < self.width);
        self.mask[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, edge: bool) {
        assert!(row < self.height && col < self.width);
        self.mask[row * self.width + col] = edge;
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    /// `(row, col)` of every edge pixel in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (i / w, i % w))
    }

    pub fn same_dims(&self, other: &EdgeMap) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// True when every edge of `self` is also an edge of `other`.
    pub fn is_subset_of(&self, other: &EdgeMap) -> bool {
        self.same_dims(other) && self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    /// Renders edges as 255 on a 0 background.
    pub fn to_image(&self) -> GrayImage {
        let data = self.mask.iter().map(|&b| if b { 255 } else { 0 }).collect();
        GrayImage {
            width: self.width,
            height: self.height,
            data,
        }
    }
}

impl fmt::Debug for EdgeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "EdgeMap {}x{} [", self.width, self.height)?;
        for r in 0..self.height {
            write!(f, "  ")?;
            for c in 0..self.width {
                f.write_str(if self.get(r, c) { "#" } else { "." })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_pass_stddev(v: [u8; 4]) -> f64 {
        let xs: Vec<f64> = v.iter().map(|&x| f64::from(x)).collect();
        let mean = xs.iter().sum::<f64>() / 4.0;
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 3.0).sqrt()
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(GrayImage::new(0, 3, vec![]).is_err());
        assert!(GrayImage::new(2, 2, vec![1, 2, 3]).is_err());
        assert!(GrayImage::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn single_pixel_access() {
        let img = GrayImage::new(1, 1, vec![42]).unwrap();
        assert_eq!(img.get(0, 0).unwrap(), 42);
        assert!(matches!(img.get(1, 0), Err(Error::OutOfBounds { .. })));
        assert!(matches!(img.get(0, 1), Err(Error::OutOfBounds { .. })));
    }

    #[test]
    fn clamped_replicates_border() {
        let img = GrayImage::from_rows(&[[1, 2], [3, 4]]).unwrap();
        assert_eq!(img.clamped(-1, -1), 1);
        assert_eq!(img.clamped(-5, 7), 2);
        assert_eq!(img.clamped(9, 0), 3);
        assert_eq!(img.clamped(2, 2), 4);
    }

    #[test]
    fn window_counts() {
        let img = GrayImage::filled(2, 2, 9).unwrap();
        let wins: Vec<_> = img.windows().collect();
        assert_eq!(wins.len(), 1);
        assert_eq!((wins[0].row, wins[0].col), (0, 0));

        let strip = GrayImage::filled(7, 1, 9).unwrap();
        assert_eq!(strip.windows().count(), 0);
        let column = GrayImage::filled(1, 7, 9).unwrap();
        assert_eq!(column.windows().count(), 0);

        let img = GrayImage::filled(5, 3, 0).unwrap();
        let it = img.windows();
        assert_eq!(it.len(), 8);
        assert_eq!(it.count(), img.window_count());
    }

    #[test]
    fn window_values_follow_layout() {
        let img = GrayImage::from_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap();
        let wins: Vec<_> = img.windows().collect();
        assert_eq!(wins.len(), 4);
        assert_eq!(wins[0].values, [1, 2, 4, 5]);
        assert_eq!(wins[1].values, [2, 3, 5, 6]);
        assert_eq!((wins[2].row, wins[2].col), (1, 0));
        assert_eq!(wins[3].values, [5, 6, 8, 9]);
    }

    #[test]
    fn stddev_published_values() {
        let cases = [
            ([201, 205, 204, 172], 15.7586),
            ([172, 113, 103, 80], 39.1833),
            ([49, 49, 48, 50], 0.8165),
        ];
        for (v, expected) in cases {
            assert!((sample_stddev(v) - expected).abs() < 5e-4, "{v:?}");
        }
    }

    #[test]
    fn stddev_zero_for_constant() {
        for c in [0u8, 1, 128, 255] {
            assert_eq!(sample_stddev([c; 4]), 0.0);
        }
    }

    #[test]
    fn stddev_extremes_do_not_overflow() {
        let expected = (4.0 * 127.5f64.powi(2) / 3.0).sqrt();
        assert!((sample_stddev([0, 255, 0, 255]) - expected).abs() < 1e-12);
        assert!(sample_stddev([0, 0, 0, 255]) > 0.0);
    }

    #[test]
    fn stddev_matches_two_pass_formula() {
        for v in [
            [0, 255, 0, 255],
            [1, 2, 3, 4],
            [201, 205, 204, 172],
            [10, 10, 10, 11],
        ] {
            assert!((sample_stddev(v) - two_pass_stddev(v)).abs() < 1e-9);
        }
    }

    #[test]
    fn edge_map_image_round_trip() {
        let m = EdgeMap::from_fn(4, 3, |r, c| (r + c) % 3 == 0);
        let img = m.to_image();
        assert!(img.pixels().iter().all(|&v| v == 0 || v == 255));
        assert_eq!(EdgeMap::from_image(&img), m);
    }

    #[test]
    fn subset_requires_matching_dims() {
        let a = EdgeMap::empty(3, 3);
        let b = EdgeMap::empty(3, 4);
        assert!(a.is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
    }
}
