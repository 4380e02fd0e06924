//! Day-ahead mean temperature forecasting from the previous three days'
//! weather.
//!
//! The toolkit rebuilds a classic forecasting pipeline from first
//! principles: lag features over daily observations, a Pearson correlation
//! filter against the target, backward elimination by p-value, an ordinary
//! least squares fit through Householder QR, and held-out evaluation by
//! mean absolute error. All statistics — the solver, the incomplete beta
//! function, the t and F distributions — are implemented in this crate.
//!
//! # Quick start
//!
//! ```
//! use tempcast::pipeline::{generate_synthetic, SynthParams};
//! use tempcast::datamodel::build_lag_features;
//! use tempcast::regression::ols_fit;
//!
//! let days = generate_synthetic(&SynthParams { n_days: 60, ..SynthParams::default() })?;
//! let dataset = build_lag_features(&days, 3)?;
//! let fit = ols_fit(&dataset)?;
//! assert_eq!(fit.feature_names.len(), 30); // 10 measurements × 3 lags
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The full pipeline — selection, split, fit, evaluation and the artifact
//! bundle — runs through [`pipeline::run_pipeline`], or from the command
//! line via the `tempcast` binary. The `book/` directory of the repository
//! walks through each stage; its code listings are compiled and executed
//! as this crate's doc-tests (see [`guide`]).

pub mod datamodel;
pub mod guide;
pub mod numerics;
pub mod pipeline;
pub mod regression;
pub mod selection;

mod numfmt;

pub use datamodel::{
    build_lag_features, ingest_csv, split, CsvSchema, DailyObservation, DataError,
    SplitDataset, SplitStrategy, SupervisedDataset,
};
pub use pipeline::{
    evaluate, run_pipeline, EvaluationReport, PipelineConfig, PipelineError, RunReport,
    SynthParams,
};
pub use regression::{ols_fit, RegressionError, RegressionFit};
pub use selection::{
    backward_eliminate, correlation_filter, pearson_r, CorrelationReport, EliminationTrace,
    SelectionError,
};
