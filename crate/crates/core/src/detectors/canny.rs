//! Canny edge detection: Gaussian smoothing, Sobel gradients, non-maximum
//! suppression over four direction bins, then hysteresis.

use std::f64::consts::PI;

use crate::detectors::gradient::{magnitude, sobel_gradients, Plane};
use crate::error::{Error, Result};
use crate::image::{EdgeMap, GrayImage};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CannyParams {
    pub sigma: f64,
    /// Magnitudes strictly above `low` may join an edge.
    pub low: f64,
    /// Magnitudes strictly above `high` seed an edge.
    pub high: f64,
}

impl Default for CannyParams {
    fn default() -> Self {
        Self {
            sigma: 1.0,
            low: 20.0,
            high: 60.0,
        }
    }
}

impl CannyParams {
    pub fn validate(&self) -> Result<()> {
        if !self.sigma.is_finite() || self.sigma <= 0.0 {
            return Err(Error::argument(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        if !self.low.is_finite() || self.low < 0.0 || !self.high.is_finite() {
            return Err(Error::argument(format!(
                "canny thresholds must be finite and non-negative, got {} / {}",
                self.low, self.high
            )));
        }
        if self.low >= self.high {
            return Err(Error::argument(format!(
                "canny low threshold {} must be below high threshold {}",
                self.low, self.high
            )));
        }
        Ok(())
    }

    pub fn radius(&self) -> usize {
        (3.0 * self.sigma).ceil() as usize
    }
}

/// Normalized 1-D Gaussian truncated at `ceil(3 sigma)`.
pub fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as isize;
    let weights: Vec<f64> = (-radius..=radius)
        .map(|x| (-((x * x) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / sum).collect()
}

/// Separable Gaussian blur with clamp-to-edge borders.
pub fn gaussian_blur(src: &Plane, sigma: f64) -> Plane {
    let kernel = gaussian_kernel(sigma);
    let radius = (kernel.len() / 2) as isize;
    let (w, h) = (src.width, src.height);

    let mut tmp = Vec::with_capacity(w * h);
    for r in 0..h as isize {
        for c in 0..w as isize {
            let acc = kernel
                .iter()
                .zip(-radius..=radius)
                .map(|(k, d)| k * src.clamped(r, c + d))
                .sum::<f64>();
            tmp.push(acc);
        }
    }
    let tmp = Plane {
        width: w,
        height: h,
        data: tmp,
    };
    let mut out = Vec::with_capacity(w * h);
    for r in 0..h as isize {
        for c in 0..w as isize {
            let acc = kernel
                .iter()
                .zip(-radius..=radius)
                .map(|(k, d)| k * tmp.clamped(r + d, c))
                .sum::<f64>();
            out.push(acc);
        }
    }
    Plane {
        width: w,
        height: h,
        data: out,
    }
}

/// Gradient direction bin: 0 = 0 deg, 1 = 45 deg, 2 = 90 deg, 3 = 135 deg.
///
/// Angles are measured in image coordinates (x right, y down) and folded
/// into `[0, 180)`.
pub fn direction_bin(gx: f64, gy: f64) -> usize {
    let mut deg = gy.atan2(gx) * 180.0 / PI;
    if deg < 0.0 {
        deg += 180.0;
    }
    if !(22.5..157.5).contains(&deg) {
        0
    } else if deg < 67.5 {
        1
    } else if deg < 112.5 {
        2
    } else {
        3
    }
}

/// `(drow, dcol)` step along the gradient for each direction bin.
const BIN_STEP: [(isize, isize); 4] = [(0, 1), (1, 1), (1, 0), (1, -1)];

/// Keeps pixels that are local maxima along their gradient direction.
///
/// The comparison is strict against the backward neighbour and non-strict
/// against the forward one, so a two-pixel plateau keeps exactly one pixel.
/// Neighbours outside the image count as zero.
pub fn non_maximum_suppression(mag: &Plane, gx: &Plane, gy: &Plane) -> Plane {
    let (w, h) = (mag.width, mag.height);
    let at = |r: isize, c: isize| {
        if r < 0 || c < 0 || r >= h as isize || c >= w as isize {
            0.0
        } else {
            mag.at(r as usize, c as usize)
        }
    };
    let mut out = vec![0.0; w * h];
    for r in 0..h {
        for c in 0..w {
            let m = mag.at(r, c);
            if m == 0.0 {
                continue;
            }
            let (dr, dc) = BIN_STEP[direction_bin(gx.at(r, c), gy.at(r, c))];
            let (ri, ci) = (r as isize, c as isize);
            let behind = at(ri - dr, ci - dc);
            let ahead = at(ri + dr, ci + dc);
            if m > behind && m >= ahead {
                out[r * w + c] = m;
            }
        }
    }
    Plane {
        width: w,
        height: h,
        data: out,
    }
}

/// Keeps every pixel above `low` that is 8-connected, through pixels above
/// `low`, to a pixel above `high`.
pub fn hysteresis(mag: &Plane, low: f64, high: f64) -> EdgeMap {
    let (w, h) = (mag.width, mag.height);
    let mut map = EdgeMap::empty(w, h);
    let mut stack = Vec::new();
    for r in 0..h {
        for c in 0..w {
            if mag.at(r, c) > high && !map.get(r, c) {
                map.set(r, c, true);
                stack.push((r, c));
                while let Some((pr, pc)) = stack.pop() {
                    for nr in pr.saturating_sub(1)..=(pr + 1).min(h - 1) {
                        for nc in pc.saturating_sub(1)..=(pc + 1).min(w - 1) {
                            if !map.get(nr, nc) && mag.at(nr, nc) > low {
                                map.set(nr, nc, true);
                                stack.push((nr, nc));
                            }
                        }
                    }
                }
            }
        }
    }
    map
}

pub fn canny_detect(img: &GrayImage, params: &CannyParams) -> Result<EdgeMap> {
    params.validate()?;
    let min_side = 2 * params.radius() + 1;
    if img.width() < min_side || img.height() < min_side {
        return Err(Error::argument(format!(
            "canny with sigma {} needs at least {min_side}x{min_side} pixels, got {}x{}",
            params.sigma,
            img.width(),
            img.height()
        )));
    }
    let smoothed = gaussian_blur(&Plane::from_image(img), params.sigma);
    let (gx, gy) = sobel_gradients(&smoothed);
    let mag = magnitude(&gx, &gy);
    let thin = non_maximum_suppression(&mag, &gx, &gy);
    Ok(hysteresis(&thin, params.low, params.high))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(sigma: f64, low: f64, high: f64) -> CannyParams {
        CannyParams { sigma, low, high }
    }

    #[test]
    fn validates_params() {
        assert!(params(1.0, 60.0, 20.0).validate().is_err());
        assert!(params(1.0, 20.0, 20.0).validate().is_err());
        assert!(params(0.0, 20.0, 60.0).validate().is_err());
        assert!(params(-1.0, 20.0, 60.0).validate().is_err());
        assert!(params(1.0, -1.0, 60.0).validate().is_err());
        assert!(params(1.0, 20.0, 60.0).validate().is_ok());
        let img = GrayImage::filled(32, 32, 0).unwrap();
        assert!(matches!(
            canny_detect(&img, &params(1.0, 5.0, 1.0)),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn too_small_for_kernel() {
        let img = GrayImage::filled(6, 6, 0).unwrap();
        assert!(canny_detect(&img, &params(1.0, 20.0, 60.0)).is_err());
        let img = GrayImage::filled(7, 7, 0).unwrap();
        assert!(canny_detect(&img, &params(1.0, 20.0, 60.0)).is_ok());
    }

    #[test]
    fn gaussian_kernel_is_normalized_and_symmetric() {
        for sigma in [0.5, 1.0, 1.4, 2.0] {
            let k = gaussian_kernel(sigma);
            assert_eq!(k.len(), 2 * (3.0 * sigma).ceil() as usize + 1);
            assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for i in 0..k.len() / 2 {
                assert_eq!(k[i], k[k.len() - 1 - i]);
            }
        }
    }

    #[test]
    fn blur_preserves_constant() {
        let p = Plane::from_image(&GrayImage::filled(9, 9, 40).unwrap());
        let b = gaussian_blur(&p, 1.3);
        assert!(b.data.iter().all(|v| (v - 40.0).abs() < 1e-9));
    }

    #[test]
    fn direction_bins() {
        assert_eq!(direction_bin(1.0, 0.0), 0);
        assert_eq!(direction_bin(-1.0, 0.0), 0);
        assert_eq!(direction_bin(1.0, 1.0), 1);
        assert_eq!(direction_bin(-1.0, -1.0), 1);
        assert_eq!(direction_bin(0.0, 1.0), 2);
        assert_eq!(direction_bin(0.0, -1.0), 2);
        assert_eq!(direction_bin(-1.0, 1.0), 3);
        assert_eq!(direction_bin(1.0, -1.0), 3);
        assert_eq!(direction_bin(1.0, 0.3), 0);
    }

    #[test]
    fn hysteresis_links_weak_to_strong() {
        let plane = Plane {
            width: 5,
            height: 1,
            data: vec![100.0, 30.0, 30.0, 0.0, 30.0],
        };
        let map = hysteresis(&plane, 20.0, 60.0);
        assert_eq!(map.as_slice(), &[true, true, true, false, false]);
    }

    #[test]
    fn hysteresis_diagonal_connectivity() {
        let plane = Plane {
            width: 3,
            height: 3,
            data: vec![100.0, 0.0, 0.0, 0.0, 30.0, 0.0, 0.0, 0.0, 30.0],
        };
        let map = hysteresis(&plane, 20.0, 60.0);
        assert_eq!(map.count(), 3);
    }

    #[test]
    fn constant_is_empty() {
        let img = GrayImage::filled(16, 16, 123).unwrap();
        assert!(canny_detect(&img, &params(1.0, 0.0, 1.0))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn step_is_one_pixel_wide() {
        let img = GrayImage::from_fn(16, 16, |_, c| if c < 8 { 0 } else { 255 }).unwrap();
        let map = canny_detect(&img, &params(1.0, 20.0, 60.0)).unwrap();
        for r in 0..16 {
            let cols: Vec<_> = (0..16).filter(|&c| map.get(r, c)).collect();
            assert_eq!(cols.len(), 1, "row {r}: {cols:?}");
            assert!(cols[0] == 7 || cols[0] == 8);
        }
    }
}
