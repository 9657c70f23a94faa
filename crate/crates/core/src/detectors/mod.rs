//! The 2x2 standard-deviation detector and the Sobel / Canny baselines.

mod canny;
pub mod gradient;
mod sobel;
mod stddev;

use std::fmt;
use std::str::FromStr;

pub use canny::{
    canny_detect, direction_bin, gaussian_blur, gaussian_kernel, hysteresis,
    non_maximum_suppression, CannyParams,
};
pub use sobel::{sobel_detect, sobel_magnitude};
pub use stddev::{stddev_detect, stddev_response};

use crate::error::{Error, Result};
use crate::filters::{check_kernel, DEFAULT_MEDIAN_KERNEL};
use crate::image::{EdgeMap, GrayImage};

/// Default threshold for the standard-deviation detector; values in
/// [`TAU_BAND`] are expected to work on most images.
pub const DEFAULT_TAU: f64 = 7.0;
pub const TAU_BAND: (f64, f64) = (4.0, 9.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectorKind {
    StdDev,
    Sobel,
    Canny,
}

impl DetectorKind {
    pub const ALL: [DetectorKind; 3] = [
        DetectorKind::StdDev,
        DetectorKind::Sobel,
        DetectorKind::Canny,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DetectorKind::StdDev => "stddev",
            DetectorKind::Sobel => "sobel",
            DetectorKind::Canny => "canny",
        }
    }
}

impl fmt::Display for DetectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DetectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stddev" => Ok(DetectorKind::StdDev),
            "sobel" => Ok(DetectorKind::Sobel),
            "canny" => Ok(DetectorKind::Canny),
            other => Err(Error::argument(format!("unknown detector '{other}'"))),
        }
    }
}

/// Everything needed to run one detector reproducibly.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorConfig {
    pub detector: DetectorKind,
    pub tau: f64,
    pub pre_median: bool,
    pub median_kernel: usize,
    /// Has no default; required when `detector` is Sobel.
    pub sobel_threshold: Option<f64>,
    pub canny: CannyParams,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            detector: DetectorKind::StdDev,
            tau: DEFAULT_TAU,
            pre_median: true,
            median_kernel: DEFAULT_MEDIAN_KERNEL,
            sobel_threshold: None,
            canny: CannyParams::default(),
        }
    }
}

impl DetectorConfig {
    pub fn stddev(tau: f64, pre_median: Option<usize>) -> Self {
        Self {
            tau,
            pre_median: pre_median.is_some(),
            median_kernel: pre_median.unwrap_or(DEFAULT_MEDIAN_KERNEL),
            ..Self::default()
        }
    }

    pub fn sobel(threshold: f64) -> Self {
        Self {
            detector: DetectorKind::Sobel,
            sobel_threshold: Some(threshold),
            ..Self::default()
        }
    }

    pub fn canny(params: CannyParams) -> Self {
        Self {
            detector: DetectorKind::Canny,
            canny: params,
            ..Self::default()
        }
    }

    /// Same parameters, different detector.
    pub fn with_detector(&self, detector: DetectorKind) -> Self {
        Self {
            detector,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.detector {
            DetectorKind::StdDev => {
                if !self.tau.is_finite() || self.tau <= 0.0 {
                    return Err(Error::argument(format!(
                        "tau must be positive and finite, got {}",
                        self.tau
                    )));
                }
                if self.pre_median {
                    check_kernel(self.median_kernel)?;
                }
                Ok(())
            }
            DetectorKind::Sobel => match self.sobel_threshold {
                Some(t) if t >= 0.0 && t.is_finite() => Ok(()),
                Some(t) => Err(Error::argument(format!(
                    "sobel threshold must be non-negative and finite, got {t}"
                ))),
                None => Err(Error::argument(
                    "sobel detector requires an explicit threshold",
                )),
            },
            DetectorKind::Canny => self.canny.validate(),
        }
    }

    /// Threshold parameters as one compact field: `tau` for stddev, the
    /// threshold for Sobel, `sigma:low:high` for Canny. Four decimals.
    pub fn thresholds_label(&self) -> String {
        match self.detector {
            DetectorKind::StdDev => format!("{:.4}", self.tau),
            DetectorKind::Sobel => format!("{:.4}", self.sobel_threshold.unwrap_or(f64::NAN)),
            DetectorKind::Canny => format!(
                "{:.4}:{:.4}:{:.4}",
                self.canny.sigma, self.canny.low, self.canny.high
            ),
        }
    }

    pub fn run(&self, img: &GrayImage) -> Result<EdgeMap> {
        self.validate()?;
        match self.detector {
            DetectorKind::StdDev => {
                stddev_detect(img, self.tau, self.pre_median.then_some(self.median_kernel))
            }
            DetectorKind::Sobel => sobel_detect(img, self.sobel_threshold.unwrap_or_default()),
            DetectorKind::Canny => canny_detect(img, &self.canny),
        }
    }
}

impl fmt::Display for DetectorConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.detector {
            DetectorKind::StdDev => {
                write!(f, "detector=stddev tau={:.4}", self.tau)?;
                if self.pre_median {
                    write!(f, " median={}", self.median_kernel)
                } else {
                    write!(f, " median=off")
                }
            }
            DetectorKind::Sobel => {
                write!(f, "detector=sobel threshold={}", self.thresholds_label())
            }
            DetectorKind::Canny => write!(
                f,
                "detector=canny sigma={:.4} low={:.4} high={:.4}",
                self.canny.sigma, self.canny.low, self.canny.high
            ),
        }
    }
}
