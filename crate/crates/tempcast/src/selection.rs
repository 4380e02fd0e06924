//! Two-stage feature selection: a Pearson correlation filter against the
//! target, then backward elimination by maximum p-value.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::datamodel::SupervisedDataset;
use crate::numfmt::format_sig;
use crate::regression::{ols_fit, RegressionError, RegressionFit};

/// Errors from the selection stages.
#[derive(Debug, Error)]
pub enum SelectionError {
    #[error("vectors have different lengths: {x} vs {y}")]
    LengthMismatch { x: usize, y: usize },

    #[error("correlation needs at least 2 samples, got {n}")]
    TooFewSamples { n: usize },

    #[error("'{name}' has zero variance; correlation is undefined")]
    ConstantInput { name: String },

    #[error("correlation threshold must lie in (0, 1), got {threshold}")]
    InvalidThreshold { threshold: f64 },

    #[error("significance level must lie in (0, 1), got {alpha}")]
    InvalidAlpha { alpha: f64 },

    #[error("no feature reaches |r| >= {threshold} against the target")]
    AllFeaturesDropped { threshold: f64 },

    #[error(transparent)]
    Regression(#[from] RegressionError),
}

/// Sample Pearson correlation between two equal-length vectors.
///
/// Returns [`SelectionError::ConstantInput`] when either vector has zero
/// variance (the filter maps that case to `|r| = 0` and drops the feature).
pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64, SelectionError> {
    if x.len() != y.len() {
        return Err(SelectionError::LengthMismatch { x: x.len(), y: y.len() });
    }
    let n = x.len();
    if n < 2 {
        return Err(SelectionError::TooFewSamples { n });
    }
    let mean_x = x.iter().sum::<f64>() / n as f64;
    let mean_y = y.iter().sum::<f64>() / n as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        let dx = xi - mean_x;
        let dy = yi - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(SelectionError::ConstantInput { name: "x".to_string() });
    }
    if syy == 0.0 {
        return Err(SelectionError::ConstantInput { name: "y".to_string() });
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// One feature's correlation with the target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationEntry {
    pub feature: String,
    pub r: f64,
}

/// Outcome of the correlation filter.
///
/// `entries` lists every feature sorted by ascending `|r|`; `kept` and
/// `dropped` partition the features, and `constant` flags the
/// zero-variance columns that were treated as `|r| = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub threshold: f64,
    pub entries: Vec<CorrelationEntry>,
    pub kept: Vec<String>,
    pub dropped: Vec<String>,
    pub constant: Vec<String>,
}

impl CorrelationReport {
    /// Ascending-|r| text listing with the target's self-correlation as the
    /// final row.
    pub fn to_table(&self, target_name: &str) -> String {
        let name_w = self
            .entries
            .iter()
            .map(|e| e.feature.len())
            .chain(std::iter::once(target_name.len()))
            .max()
            .unwrap_or(8)
            .max(8);
        let mut out = String::new();
        out.push_str(&format!("{:<name_w$}  {:>10}\n", "feature", "|r|"));
        for entry in &self.entries {
            out.push_str(&format!(
                "{:<name_w$}  {:>10}\n",
                entry.feature,
                format_sig(entry.r.abs(), 6)
            ));
        }
        out.push_str(&format!("{target_name:<name_w$}  {:>10}\n", format_sig(1.0, 6)));
        out
    }
}

/// Keep only the features whose absolute correlation with the target
/// reaches `threshold` (boundary kept), preserving column order.
///
/// Constant features are undefined under Pearson correlation; they are
/// recorded with `r = 0`, flagged in the report and dropped. Dropping every
/// feature is surfaced as a distinct error so a pipeline can halt with a
/// meaningful message.
pub fn correlation_filter(
    ds: &SupervisedDataset,
    threshold: f64,
) -> Result<(SupervisedDataset, CorrelationReport), SelectionError> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(SelectionError::InvalidThreshold { threshold });
    }

    let target = ds.target();
    let mut entries = Vec::with_capacity(ds.n_features());
    let mut constant = Vec::new();
    for (j, name) in ds.feature_names().iter().enumerate() {
        let column = ds.column(j);
        let r = match pearson_r(&column, target) {
            Ok(r) => r,
            // pearson_r names its own arguments: "x" is the feature
            // column, "y" the target.
            Err(SelectionError::ConstantInput { name: which }) if which == "x" => {
                constant.push(name.clone());
                0.0
            }
            Err(SelectionError::ConstantInput { .. }) => {
                return Err(SelectionError::ConstantInput {
                    name: "target".to_string(),
                })
            }
            Err(other) => return Err(other),
        };
        entries.push(CorrelationEntry {
            feature: name.clone(),
            r,
        });
    }

    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for entry in &entries {
        if entry.r.abs() >= threshold {
            kept.push(entry.feature.clone());
        } else {
            dropped.push(entry.feature.clone());
        }
    }

    entries.sort_by(|a, b| {
        a.r.abs()
            .partial_cmp(&b.r.abs())
            .expect("correlations are finite")
    });

    if kept.is_empty() {
        return Err(SelectionError::AllFeaturesDropped { threshold });
    }

    let filtered = ds
        .select_features(&kept)
        .expect("kept features come from this dataset");
    Ok((
        filtered,
        CorrelationReport {
            threshold,
            entries,
            kept,
            dropped,
            constant,
        },
    ))
}

/// One removal during backward elimination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EliminationStep {
    pub removed: String,
    pub p_value: f64,
    pub surviving: usize,
}

/// The elimination path: every removal in order plus the surviving set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EliminationTrace {
    pub alpha: f64,
    pub steps: Vec<EliminationStep>,
    pub final_features: Vec<String>,
}

impl EliminationTrace {
    /// Text rendering of the removal sequence.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "backward elimination, alpha = {}\n",
            format_sig(self.alpha, 6)
        ));
        if self.steps.is_empty() {
            out.push_str("no feature removed\n");
        }
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step {:>2}: removed {} (p = {}), {} surviving\n",
                i + 1,
                step.removed,
                format_sig(step.p_value, 6),
                step.surviving
            ));
        }
        out.push_str(&format!("final features: {}\n", self.final_features.join(", ")));
        out
    }
}

/// Iteratively drop the feature with the largest p-value until every
/// survivor satisfies `p <= alpha`.
///
/// Each round refits OLS on the remaining features, finds the maximum
/// feature p-value (the intercept is never a candidate) and removes that
/// feature if it exceeds `alpha`; ties break toward the lowest column
/// index. The model may legitimately end up empty — that outcome is
/// reported through the trace rather than an error. Refitting from scratch
/// each round is deliberate: with at most a few dozen features the cost is
/// negligible. The loop is inherently sequential (each round depends on
/// the previous fit), unlike the per-feature correlation filter.
pub fn backward_eliminate(
    ds: &SupervisedDataset,
    alpha: f64,
) -> Result<(RegressionFit, EliminationTrace), SelectionError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(SelectionError::InvalidAlpha { alpha });
    }

    let mut current = ds.clone();
    let mut steps = Vec::new();
    loop {
        let fit = ols_fit(&current)?;
        let worst = fit
            .feature_p_values()
            .iter()
            .enumerate()
            // strict > keeps the earliest index on ties
            .fold(None::<(usize, f64)>, |acc, (j, &p)| match acc {
                Some((_, best)) if p > best => Some((j, p)),
                None => Some((j, p)),
                keep => keep,
            });

        match worst {
            Some((j, p)) if p > alpha => {
                let removed = current.feature_names()[j].clone();
                let remaining: Vec<String> = current
                    .feature_names()
                    .iter()
                    .filter(|n| **n != removed)
                    .cloned()
                    .collect();
                current = current
                    .select_features(&remaining)
                    .expect("remaining features come from this dataset");
                steps.push(EliminationStep {
                    removed,
                    p_value: p,
                    surviving: remaining.len(),
                });
            }
            _ => {
                let trace = EliminationTrace {
                    alpha,
                    steps,
                    final_features: current.feature_names().to_vec(),
                };
                return Ok((fit, trace));
            }
        }
    }
}
