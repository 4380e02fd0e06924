//! Daily weather observations and their supervised-learning view.
//!
//! The flow is: ingest (or generate) a list of [`DailyObservation`]s, turn
//! them into a [`SupervisedDataset`] of lag features with
//! [`build_lag_features`], then partition with [`split`]. Everything here is
//! a pure function of its inputs; the values are immutable once built.

mod ingest;
mod observation;
mod split;
mod supervised;

pub use ingest::{ingest_csv, IngestReport, IngestStats};
pub use observation::{CsvSchema, DailyObservation, BASE_FEATURE_NAMES};
pub use split::{split, SplitDataset, SplitStrategy};
pub use supervised::{build_lag_features, SupervisedDataset};

use std::path::PathBuf;

use chrono::NaiveDate;
use thiserror::Error;

/// Errors from ingestion, feature building and splitting.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot open {path}: {source}")]
    FileOpen {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot read CSV {path}: {source}")]
    CsvRead {
        path: PathBuf,
        source: csv::Error,
    },

    #[error("header is missing required column '{column}'")]
    MissingColumn { column: String },

    #[error("no usable rows in {path}")]
    ZeroUsableRows { path: PathBuf },

    #[error("duplicate date {date} in dataset")]
    DuplicateDate { date: NaiveDate },

    #[error("invalid observation on {date}: {reason}")]
    InvalidObservation { date: NaiveDate, reason: String },

    #[error("unknown schema field '{field}'")]
    UnknownSchemaField { field: String },

    #[error("lag depth must be at least 1")]
    InvalidLagDepth,

    #[error("too few observations: have {have}, need at least {need}")]
    TooFewObservations { have: usize, need: usize },

    #[error("observation dates are not strictly increasing at {date}")]
    NonMonotonicDates { date: NaiveDate },

    #[error("no observation has {lag_depth} consecutive predecessors")]
    NoUsableWindows { lag_depth: usize },

    #[error("duplicate feature name '{name}'")]
    DuplicateFeatureName { name: String },

    #[error("rows ({rows}), target ({target}) and dates ({dates}) lengths differ")]
    ColumnLengthMismatch {
        rows: usize,
        target: usize,
        dates: usize,
    },

    #[error("row has {found} values, expected {expected}")]
    RowWidthMismatch { expected: usize, found: usize },

    #[error("unknown feature '{name}'")]
    UnknownFeature { name: String },

    #[error("test fraction must lie in (0, 1), got {fraction}")]
    InvalidTestFraction { fraction: f64 },

    #[error("split of {n} rows at fraction {fraction} leaves an empty part")]
    DegenerateSplit { n: usize, fraction: f64 },
}
