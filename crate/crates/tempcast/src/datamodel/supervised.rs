//! The design-matrix view: lag features against the next day's mean
//! temperature.

use chrono::{Days, NaiveDate};
use serde::{Deserialize, Serialize};

use super::{DailyObservation, DataError, BASE_FEATURE_NAMES};

/// A supervised dataset: named feature columns, a target vector and the
/// target dates, all kept in lockstep.
///
/// Row `i` predicts the mean temperature observed on `dates()[i]`; feature
/// `"X_k"` in that row is base measurement `X` from `k` days earlier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupervisedDataset {
    feature_names: Vec<String>,
    rows: Vec<Vec<f64>>,
    target: Vec<f64>,
    dates: Vec<NaiveDate>,
}

impl SupervisedDataset {
    /// Assemble a dataset, checking that all parallel vectors line up and
    /// feature names are unique.
    pub fn new(
        feature_names: Vec<String>,
        rows: Vec<Vec<f64>>,
        target: Vec<f64>,
        dates: Vec<NaiveDate>,
    ) -> Result<Self, DataError> {
        let p = feature_names.len();
        for (i, name) in feature_names.iter().enumerate() {
            if feature_names[..i].contains(name) {
                return Err(DataError::DuplicateFeatureName { name: name.clone() });
            }
        }
        if rows.len() != target.len() || rows.len() != dates.len() {
            return Err(DataError::ColumnLengthMismatch {
                rows: rows.len(),
                target: target.len(),
                dates: dates.len(),
            });
        }
        for row in &rows {
            if row.len() != p {
                return Err(DataError::RowWidthMismatch {
                    expected: p,
                    found: row.len(),
                });
            }
        }
        Ok(Self {
            feature_names,
            rows,
            target,
            dates,
        })
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    /// Copy of feature column `j`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// A new dataset containing only the named columns, in the order given.
    pub fn select_features(&self, names: &[String]) -> Result<Self, DataError> {
        let indices: Vec<usize> = names
            .iter()
            .map(|n| {
                self.feature_names
                    .iter()
                    .position(|f| f == n)
                    .ok_or_else(|| DataError::UnknownFeature { name: n.clone() })
            })
            .collect::<Result<_, _>>()?;
        let rows = self
            .rows
            .iter()
            .map(|r| indices.iter().map(|&j| r[j]).collect())
            .collect();
        Self::new(names.to_vec(), rows, self.target.clone(), self.dates.clone())
    }

    /// A new dataset containing only the given rows, in the order given.
    pub fn subset_rows(&self, indices: &[usize]) -> Self {
        Self {
            feature_names: self.feature_names.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            target: indices.iter().map(|&i| self.target[i]).collect(),
            dates: indices.iter().map(|&i| self.dates[i]).collect(),
        }
    }

    /// Replace the target vector (test-support hook; lengths must match).
    pub fn with_target(&self, target: Vec<f64>) -> Result<Self, DataError> {
        Self::new(
            self.feature_names.clone(),
            self.rows.clone(),
            target,
            self.dates.clone(),
        )
    }
}

/// Build lag features from day-level observations.
///
/// Each output row corresponds to an observation with `lag_depth`
/// consecutive calendar-day predecessors; a row whose lag window crosses a
/// date gap is excluded rather than silently reaching further back. Feature
/// names are `base_k` for `k = 1..=lag_depth`, grouped by lag (all `_1`
/// columns first).
///
/// # Errors
///
/// * `lag_depth` is zero,
/// * the observations are not strictly increasing by date,
/// * there are too few observations (`len <= lag_depth`),
/// * no window survives the gap rule.
pub fn build_lag_features(
    obs: &[DailyObservation],
    lag_depth: usize,
) -> Result<SupervisedDataset, DataError> {
    if lag_depth == 0 {
        return Err(DataError::InvalidLagDepth);
    }
    if obs.len() <= lag_depth {
        return Err(DataError::TooFewObservations {
            have: obs.len(),
            need: lag_depth + 1,
        });
    }
    for pair in obs.windows(2) {
        if pair[1].date <= pair[0].date {
            return Err(DataError::NonMonotonicDates {
                date: pair[1].date,
            });
        }
    }

    let mut feature_names = Vec::with_capacity(BASE_FEATURE_NAMES.len() * lag_depth);
    for k in 1..=lag_depth {
        for base in BASE_FEATURE_NAMES {
            feature_names.push(format!("{base}_{k}"));
        }
    }

    let mut rows = Vec::new();
    let mut target = Vec::new();
    let mut dates = Vec::new();
    for i in lag_depth..obs.len() {
        let window_ok = (1..=lag_depth).all(|k| {
            obs[i].date.checked_sub_days(Days::new(k as u64)) == Some(obs[i - k].date)
        });
        if !window_ok {
            continue;
        }
        let mut row = Vec::with_capacity(feature_names.len());
        for k in 1..=lag_depth {
            row.extend_from_slice(&obs[i - k].base_values());
        }
        rows.push(row);
        target.push(obs[i].meantempm);
        dates.push(obs[i].date);
    }

    if rows.is_empty() {
        return Err(DataError::NoUsableWindows { lag_depth });
    }
    SupervisedDataset::new(feature_names, rows, target, dates)
}
