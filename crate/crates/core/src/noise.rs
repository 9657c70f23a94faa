//! Seeded salt-and-pepper (impulse) noise.
//!
//! The random stream is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`. Pixels are visited in row-major order; each draws one
//! uniform `f64` to decide corruption and, only when corrupted, a second to
//! pick salt (255) or pepper (0). Changing the generator or the draw order
//! changes every golden noisy image and requires a version bump.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::image::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    density: f64,
    salt_ratio: f64,
    seed: u64,
}

impl NoiseSpec {
    pub const DEFAULT_SALT_RATIO: f64 = 0.5;

    /// `density` is the per-pixel corruption probability; `salt_ratio` the
    /// probability that a corrupted pixel becomes 255 rather than 0.
    pub fn new(density: f64, salt_ratio: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::argument(format!(
                "density must be in [0, 1], got {density}"
            )));
        }
        if !(0.0..=1.0).contains(&salt_ratio) {
            return Err(Error::argument(format!(
                "salt ratio must be in [0, 1], got {salt_ratio}"
            )));
        }
        Ok(Self {
            density,
            salt_ratio,
            seed,
        })
    }

    /// Balanced salt and pepper.
    pub fn with_density(density: f64, seed: u64) -> Result<Self> {
        Self::new(density, Self::DEFAULT_SALT_RATIO, seed)
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn salt_ratio(&self) -> f64 {
        self.salt_ratio
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

pub fn add_salt_pepper(img: &GrayImage, spec: &NoiseSpec) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let data = img
        .pixels()
        .iter()
        .map(|&v| {
            if rng.random::<f64>() < spec.density {
                if rng.random::<f64>() < spec.salt_ratio {
                    255
                } else {
                    0
                }
            } else {
                v
            }
        })
        .collect();
    GrayImage::new(img.width(), img.height(), data).expect("dimensions unchanged")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(v: u8) -> GrayImage {
        GrayImage::filled(128, 128, v).unwrap()
    }

    #[test]
    fn validates_ranges() {
        assert!(NoiseSpec::new(-0.1, 0.5, 0).is_err());
        assert!(NoiseSpec::new(1.1, 0.5, 0).is_err());
        assert!(NoiseSpec::new(0.5, 1.5, 0).is_err());
        assert!(NoiseSpec::new(f64::NAN, 0.5, 0).is_err());
        assert!(NoiseSpec::new(0.0, 0.0, 0).is_ok());
        assert!(NoiseSpec::new(1.0, 1.0, 0).is_ok());
    }

    #[test]
    fn zero_density_is_identity() {
        let img = GrayImage::from_fn(17, 9, |r, c| (r * 31 + c * 7) as u8).unwrap();
        let spec = NoiseSpec::with_density(0.0, 3).unwrap();
        assert_eq!(add_salt_pepper(&img, &spec), img);
    }

    #[test]
    fn full_density_is_all_impulses() {
        let spec = NoiseSpec::new(1.0, 0.3, 11).unwrap();
        let out = add_salt_pepper(&constant(128), &spec);
        assert!(out.pixels().iter().all(|&v| v == 0 || v == 255));
        assert!(out.pixels().contains(&0));
        assert!(out.pixels().contains(&255));
    }

    #[test]
    fn salt_ratio_extremes() {
        let all_salt = add_salt_pepper(&constant(128), &NoiseSpec::new(1.0, 1.0, 5).unwrap());
        assert!(all_salt.pixels().iter().all(|&v| v == 255));
        let all_pepper = add_salt_pepper(&constant(128), &NoiseSpec::new(1.0, 0.0, 5).unwrap());
        assert!(all_pepper.pixels().iter().all(|&v| v == 0));
    }

    #[test]
    fn ten_percent_band() {
        let img = constant(128);
        let out = add_salt_pepper(&img, &NoiseSpec::with_density(0.10, 42).unwrap());
        let corrupted = out.pixels().iter().filter(|&&v| v != 128).count();
        let frac = corrupted as f64 / (128.0 * 128.0);
        assert!((0.08..=0.12).contains(&frac), "fraction {frac}");
    }

    #[test]
    fn seed_changes_output() {
        let img = constant(128);
        let a = add_salt_pepper(&img, &NoiseSpec::with_density(0.1, 1).unwrap());
        let b = add_salt_pepper(&img, &NoiseSpec::with_density(0.1, 2).unwrap());
        let a2 = add_salt_pepper(&img, &NoiseSpec::with_density(0.1, 1).unwrap());
        assert_ne!(a, b);
        assert_eq!(a, a2);
    }
}
