//! Median filtering with clamp-to-edge borders.

use crate::error::{Error, Result};
use crate::image::GrayImage;

pub const DEFAULT_MEDIAN_KERNEL: usize = 3;

pub(crate) fn check_kernel(k: usize) -> Result<()> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::argument(format!(
            "median kernel must be odd and at least 3, got {k}"
        )));
    }
    Ok(())
}

/// Replaces each pixel by the median of its `k`x`k` neighbourhood. Pixels
/// outside the image are replicated from the nearest border pixel, so the
/// output has the input's dimensions.
pub fn median_filter(img: &GrayImage, k: usize) -> Result<GrayImage> {
    check_kernel(k)?;
    let radius = (k / 2) as isize;
    let mid = k * k / 2;
    let mut window = Vec::with_capacity(k * k);
    GrayImage::from_fn(img.width(), img.height(), |r, c| {
        window.clear();
        let (r, c) = (r as isize, c as isize);
        for dr in -radius..=radius {
            for dc in -radius..=radius {
                window.push(img.clamped(r + dr, c + dc));
            }
        }
        *window.select_nth_unstable(mid).1
    })
}
