use crate::detectors::gradient::{magnitude, sobel_gradients, Plane};
use crate::error::{Error, Result};
use crate::image::{EdgeMap, GrayImage};

/// Euclidean Sobel gradient magnitude, clamp-to-edge borders.
pub fn sobel_magnitude(img: &GrayImage) -> Plane {
    let (gx, gy) = sobel_gradients(&Plane::from_image(img));
    magnitude(&gx, &gy)
}

/// Flags pixels whose Sobel magnitude is strictly greater than `threshold`.
pub fn sobel_detect(img: &GrayImage, threshold: f64) -> Result<EdgeMap> {
    if img.width() < 3 || img.height() < 3 {
        return Err(Error::argument(format!(
            "sobel detector needs at least 3x3 pixels, got {}x{}",
            img.width(),
            img.height()
        )));
    }
    if !threshold.is_finite() || threshold < 0.0 {
        return Err(Error::argument(format!(
            "sobel threshold must be non-negative and finite, got {threshold}"
        )));
    }
    let mag = sobel_magnitude(img);
    let mask = mag.data.iter().map(|&m| m > threshold).collect();
    EdgeMap::new(img.width(), img.height(), mask)
}
