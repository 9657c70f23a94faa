//! Grayscale edge detection by thresholding the sample standard deviation
//! of every 2x2 pixel window, optionally after median denoising.
//!
//! Sobel and Canny detectors are included as baselines, together with
//! seeded salt-and-pepper noise, PGM/PNG I/O and an evaluation harness for
//! comparing detectors on synthetic scenes with exact ground truth.
//!
//! ```
//! use stdedge::{stddev_detect, GrayImage};
//!
//! let img = GrayImage::from_fn(8, 8, |_, c| if c < 4 { 0 } else { 255 }).unwrap();
//! let edges = stddev_detect(&img, 7.0, Some(3)).unwrap();
//! assert_eq!(edges.count(), 7);
//! ```

pub mod detectors;
pub mod error;
pub mod eval;
pub mod filters;
pub mod image;
pub mod io;
pub mod noise;

pub use detectors::{
    canny_detect, sobel_detect, stddev_detect, CannyParams, DetectorConfig, DetectorKind,
    DEFAULT_TAU,
};
pub use error::{Error, Result};
pub use filters::median_filter;
pub use image::{sample_stddev, EdgeMap, GrayImage, Window2x2};
pub use io::{load_image, save_image, ImageFormat};
pub use noise::{add_salt_pepper, NoiseSpec};
