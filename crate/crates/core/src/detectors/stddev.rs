use crate::error::{Error, Result};
use crate::filters::median_filter;
use crate::image::{EdgeMap, GrayImage};

/// Marks the upper-left pixel of every 2x2 window whose sample standard
/// deviation is strictly greater than `tau`.
///
/// With `pre_median = Some(k)` the image is median filtered with a `k`x`k`
/// kernel first. Pixels in the last row and last column are never window
/// origins and so are never edges.
pub fn stddev_detect(img: &GrayImage, tau: f64, pre_median: Option<usize>) -> Result<EdgeMap> {
    if img.width() < 2 || img.height() < 2 {
        return Err(Error::argument(format!(
            "stddev detector needs at least 2x2 pixels, got {}x{}",
            img.width(),
            img.height()
        )));
    }
    if !tau.is_finite() || tau <= 0.0 {
        return Err(Error::argument(format!(
            "tau must be positive and finite, got {tau}"
        )));
    }
    let filtered;
    let src = match pre_median {
        Some(k) => {
            filtered = median_filter(img, k)?;
            &filtered
        }
        None => img,
    };
    let mut map = EdgeMap::empty(img.width(), img.height());
    for win in src.windows() {
        if win.stddev() > tau {
            map.set(win.row, win.col, true);
        }
    }
    Ok(map)
}

/// Per-origin window standard deviation, `(height-1) x (width-1)` row-major.
pub fn stddev_response(img: &GrayImage) -> Vec<f64> {
    img.windows().map(|w| w.stddev()).collect()
}
