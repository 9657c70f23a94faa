use std::fmt;

use crate::detectors::DetectorConfig;
use crate::error::{Error, Result};
use crate::image::EdgeMap;

pub const DEFAULT_TOLERANCE_RADIUS: usize = 1;

/// Column order of [`EvalReport::csv_row`].
pub const CSV_HEADER: &str =
    "detector,tau_or_thresholds,tp,fp,fn,precision,recall,f1,tolerance_radius";

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub tolerance_radius: usize,
    pub config: Option<DetectorConfig>,
}

impl EvalReport {
    fn from_counts(tp: usize, fp: usize, fn_: usize, radius: usize) -> Self {
        let ratio = |num: usize, den: usize| {
            if den == 0 {
                1.0
            } else {
                num as f64 / den as f64
            }
        };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Self {
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_,
            precision,
            recall,
            f1,
            tolerance_radius: radius,
            config: None,
        }
    }

    pub fn with_config(mut self, config: DetectorConfig) -> Self {
        self.config = Some(config);
        self
    }

    /// One CSV line (no trailing newline) in [`CSV_HEADER`] order.
    pub fn csv_row(&self) -> String {
        let (name, thresholds) = match &self.config {
            Some(cfg) => (cfg.detector.name().to_string(), cfg.thresholds_label()),
            None => ("-".to_string(), "-".to_string()),
        };
        format!(
            "{name},{thresholds},{},{},{},{:.4},{:.4},{:.4},{}",
            self.true_positives,
            self.false_positives,
            self.false_negatives,
            self.precision,
            self.recall,
            self.f1,
            self.tolerance_radius
        )
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(cfg) = &self.config {
            writeln!(f, "{cfg}")?;
        }
        writeln!(
            f,
            "  tp={} fp={} fn={} (radius {})",
            self.true_positives, self.false_positives, self.false_negatives, self.tolerance_radius
        )?;
        write!(
            f,
            "  precision={:.4} recall={:.4} f1={:.4}",
            self.precision, self.recall, self.f1
        )
    }
}

/// Compares a predicted edge map against ground truth.
///
/// Each prediction, in row-major order, claims the first still-unclaimed
/// truth pixel (row-major within the window) at Chebyshev distance at most
/// `radius`. Claimed predictions are true positives, the rest false
/// positives; unclaimed truth pixels are false negatives.
pub fn score(pred: &EdgeMap, truth: &EdgeMap, radius: usize) -> Result<EvalReport> {
    if !pred.same_dims(truth) {
        return Err(Error::argument(format!(
            "edge map dimensions differ: {}x{} vs {}x{}",
            pred.width(),
            pred.height(),
            truth.width(),
            truth.height()
        )));
    }
    let (w, h) = (truth.width(), truth.height());
    let mut claimed = vec![false; w * h];
    let (mut tp, mut fp) = (0, 0);
    for (r, c) in pred.edges() {
        let rows = r.saturating_sub(radius)..=(r + radius).min(h.saturating_sub(1));
        let hit = rows
            .flat_map(|tr| {
                (c.saturating_sub(radius)..=(c + radius).min(w.saturating_sub(1)))
                    .map(move |tc| (tr, tc))
            })
            .find(|&(tr, tc)| truth.get(tr, tc) && !claimed[tr * w + tc]);
        match hit {
            Some((tr, tc)) => {
                claimed[tr * w + tc] = true;
                tp += 1;
            }
            None => fp += 1,
        }
    }
    let fn_ = truth.count() - tp;
    Ok(EvalReport::from_counts(tp, fp, fn_, radius))
}
