//! Real-valued planes and the 3x3 Sobel operator shared by the baselines.

use crate::image::GrayImage;

/// A row-major `f64` plane, used for intermediate results.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f64>,
}

impl Plane {
    pub fn from_image(img: &GrayImage) -> Self {
        Self {
            width: img.width(),
            height: img.height(),
            data: img.pixels().iter().map(|&v| f64::from(v)).collect(),
        }
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col]
    }

    #[inline]
    pub fn clamped(&self, row: isize, col: isize) -> f64 {
        let r = row.clamp(0, self.height as isize - 1) as usize;
        let c = col.clamp(0, self.width as isize - 1) as usize;
        self.data[r * self.width + c]
    }
}

/// Horizontal and vertical Sobel responses with clamp-to-edge borders.
///
/// `gx` uses `[[-1,0,1],[-2,0,2],[-1,0,1]]` (positive when intensity grows
/// to the right), `gy` its transpose (positive when it grows downward).
pub fn sobel_gradients(src: &Plane) -> (Plane, Plane) {
    let (w, h) = (src.width, src.height);
    let mut gx = Vec::with_capacity(w * h);
    let mut gy = Vec::with_capacity(w * h);
    for r in 0..h as isize {
        for c in 0..w as isize {
            let p = |dr: isize, dc: isize| src.clamped(r + dr, c + dc);
            let x = (p(-1, 1) + 2.0 * p(0, 1) + p(1, 1)) - (p(-1, -1) + 2.0 * p(0, -1) + p(1, -1));
            let y = (p(1, -1) + 2.0 * p(1, 0) + p(1, 1)) - (p(-1, -1) + 2.0 * p(-1, 0) + p(-1, 1));
            gx.push(x);
            gy.push(y);
        }
    }
    let plane = |data| Plane {
        width: w,
        height: h,
        data,
    };
    (plane(gx), plane(gy))
}

pub fn magnitude(gx: &Plane, gy: &Plane) -> Plane {
    Plane {
        width: gx.width,
        height: gx.height,
        data: gx
            .data
            .iter()
            .zip(&gy.data)
            .map(|(x, y)| x.hypot(*y))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horizontal_ramp_gradient() {
        let img = GrayImage::from_fn(5, 5, |_, c| (c * 10) as u8).unwrap();
        let (gx, gy) = sobel_gradients(&Plane::from_image(&img));
        // interior: (1+2+1) * (20 - 0)
        assert_eq!(gx.at(2, 2), 80.0);
        assert_eq!(gy.at(2, 2), 0.0);
        // left border replicates column 0: (10 - 0) * 4
        assert_eq!(gx.at(2, 0), 40.0);
    }

    #[test]
    fn vertical_sign_convention() {
        let img = GrayImage::from_fn(3, 3, |r, _| if r == 2 { 100 } else { 0 }).unwrap();
        let (_, gy) = sobel_gradients(&Plane::from_image(&img));
        assert!(gy.at(1, 1) > 0.0);
    }
}
